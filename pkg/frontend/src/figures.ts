import {
  Area,
  LinearScale,
  Svg,
  drawFrame,
  drawLegend,
  drawTitle,
  drawXLabel,
  drawXTicks,
  drawYLabel,
  drawYTicks,
  niceTicks,
} from "./svg";

export const STRATEGIES = ["nci", "a3rsrp", "speed"] as const;
export type Strategy = (typeof STRATEGIES)[number];

export const COLORS: Record<Strategy, string> = {
  nci: "#1f77b4",
  a3rsrp: "#ff7f0e",
  speed: "#2ca02c",
};

export interface SummaryRow {
  strategy: Strategy;
  seed: string;
  handoverCount: number;
  /** Verbatim handover_count field from summary.csv, used as the bar label. */
  handoverLabel: string;
}

export interface SeriesPoint {
  t: number;
  bps: number;
}

export interface Series {
  strategy: Strategy;
  points: SeriesPoint[];
}

export interface HistBin {
  low: number;
  count: number;
}

export interface Hist {
  strategy: Strategy;
  bins: HistBin[];
}

export interface CdfPoint {
  sinr: number;
  frac: number;
}

export interface Cdf {
  strategy: Strategy;
  points: CdfPoint[];
}

export const MAX_CURVE_POINTS = 2000;

/**
 * Thin a long series to at most maxPoints by taking every stride-th point.
 * The first and last points are always kept.
 */
export function decimate<T>(points: T[], maxPoints = MAX_CURVE_POINTS): T[] {
  if (points.length <= maxPoints) {
    return points;
  }
  const stride = Math.ceil(points.length / maxPoints);
  const out: T[] = [];
  for (let i = 0; i < points.length; i += stride) {
    out.push(points[i]);
  }
  const last = points[points.length - 1];
  if (out[out.length - 1] !== last) {
    if (out.length >= maxPoints) {
      out[out.length - 1] = last;
    } else {
      out.push(last);
    }
  }
  return out;
}

function legendEntries(): Array<{ name: string; color: string }> {
  return STRATEGIES.map((s) => ({ name: s, color: COLORS[s] }));
}

/** Bar chart of handover counts, one bar per summary row, labeled verbatim. */
export function figHandovers(rows: SummaryRow[]): string {
  const W = 720;
  const H = 480;
  const a: Area = { left: 70, top: 48, right: W - 24, bottom: H - 64 };
  const svg = new Svg(W, H);
  drawTitle(svg, a, "Handovers per strategy");

  let yMax = 1;
  for (const r of rows) {
    if (r.handoverCount > yMax) {
      yMax = r.handoverCount;
    }
  }
  const ys = new LinearScale(0, yMax, a.bottom, a.top);
  const yTicks = niceTicks(0, yMax).filter((v) => Number.isInteger(v));

  drawFrame(svg, a);
  drawYTicks(svg, a, ys, yTicks);
  drawYLabel(svg, a, "handover count");

  const groups = STRATEGIES.map((s) => rows.filter((r) => r.strategy === s));
  const multiSeed = groups.some((g) => g.length > 1);
  const groupW = (a.right - a.left) / STRATEGIES.length;
  STRATEGIES.forEach((s, g) => {
    const bars = groups[g];
    const x0 = a.left + g * groupW;
    svg.text(x0 + groupW / 2, a.bottom + (multiSeed ? 30 : 18), s, {
      size: 12,
      anchor: "middle",
    });
    if (bars.length === 0) {
      return;
    }
    const n = bars.length;
    const barW = (groupW * 0.7) / n;
    const gap = (groupW * 0.3) / (n + 1);
    bars.forEach((r, i) => {
      const bx = x0 + gap * (i + 1) + barW * i;
      const cx = bx + barW / 2;
      const yTop = ys.map(r.handoverCount);
      svg.rect(bx, yTop, barW, a.bottom - yTop, COLORS[s], `data-strategy="${s}" data-seed="${r.seed}"`);
      svg.text(cx, yTop - 6, r.handoverLabel, { size: 12, anchor: "middle" });
      if (multiSeed) {
        svg.text(cx, a.bottom + 14, `s${r.seed}`, { size: 9, anchor: "middle" });
      }
    });
  });
  return svg.toString();
}

/** Three throughput-vs-time curves, one per strategy. */
export function figThroughput(series: Series[]): string {
  const W = 720;
  const H = 480;
  const a: Area = { left: 80, top: 48, right: W - 24, bottom: H - 56 };
  const svg = new Svg(W, H);
  drawTitle(svg, a, "Throughput vs time");

  let tMax = 0;
  let yMax = 0;
  for (const s of series) {
    for (const p of s.points) {
      if (p.t > tMax) {
        tMax = p.t;
      }
      if (p.bps > yMax) {
        yMax = p.bps;
      }
    }
  }
  if (tMax <= 0) {
    tMax = 1;
  }
  if (yMax <= 0) {
    yMax = 1;
  }
  const xs = new LinearScale(0, tMax, a.left, a.right);
  const ys = new LinearScale(0, yMax, a.bottom, a.top);

  drawFrame(svg, a);
  drawXTicks(svg, a, xs, niceTicks(0, tMax));
  drawYTicks(svg, a, ys, niceTicks(0, yMax));
  drawXLabel(svg, a, "time (s)");
  drawYLabel(svg, a, "throughput (bit/s)");

  for (const s of series) {
    if (s.points.length === 0) {
      continue;
    }
    const pts = decimate(s.points).map(
      (p): [number, number] => [xs.map(p.t), ys.map(p.bps)],
    );
    svg.polyline(pts, COLORS[s.strategy], 1.5, `data-strategy="${s.strategy}"`);
  }
  drawLegend(svg, a.right - 120, a.top + 14, legendEntries());
  return svg.toString();
}

/** Three per-strategy SINR histograms in vertically stacked panels. */
export function figSinrHist(hists: Hist[]): string {
  const W = 720;
  const H = 640;
  const top = 44;
  const bottom = 56;
  const gap = 26;
  const panelH = (H - top - bottom - 2 * gap) / 3;
  const svg = new Svg(W, H);

  // Bin width is not stored in the CSV; recover it as the smallest positive
  // spacing between consecutive bin_low values (empty bins are omitted, so
  // spacings are integer multiples of the true width).
  let width = Infinity;
  for (const h of hists) {
    for (let i = 1; i < h.bins.length; i++) {
      const d = h.bins[i].low - h.bins[i - 1].low;
      if (d > 0 && d < width) {
        width = d;
      }
    }
  }
  if (!Number.isFinite(width)) {
    width = 1;
  }

  let lo = Infinity;
  let hi = -Infinity;
  for (const h of hists) {
    for (const b of h.bins) {
      if (b.low < lo) {
        lo = b.low;
      }
      if (b.low + width > hi) {
        hi = b.low + width;
      }
    }
  }
  if (!(hi > lo)) {
    lo = 0;
    hi = 1;
  }

  const titleArea: Area = { left: 70, top, right: W - 24, bottom: H - bottom };
  drawTitle(svg, titleArea, "SINR distribution");

  hists.forEach((h, i) => {
    const a: Area = {
      left: 70,
      top: top + i * (panelH + gap),
      right: W - 24,
      bottom: top + i * (panelH + gap) + panelH,
    };
    const xs = new LinearScale(lo, hi, a.left, a.right);
    let yMax = 1;
    for (const b of h.bins) {
      if (b.count > yMax) {
        yMax = b.count;
      }
    }
    const ys = new LinearScale(0, yMax, a.bottom, a.top);

    drawFrame(svg, a);
    const lastPanel = i === hists.length - 1;
    drawXTicks(svg, a, xs, niceTicks(lo, hi), lastPanel);
    drawYTicks(svg, a, ys, niceTicks(0, yMax).filter((v) => Number.isInteger(v)));
    svg.text(a.left + 8, a.top + 14, h.strategy, {
      size: 12,
      fill: COLORS[h.strategy],
      bold: true,
    });
    if (lastPanel) {
      drawXLabel(svg, a, "SINR (dB)");
    }
    for (const b of h.bins) {
      const x0 = xs.map(b.low);
      const x1 = xs.map(b.low + width);
      const yTop = ys.map(b.count);
      svg.rect(
        x0,
        yTop,
        x1 - x0,
        a.bottom - yTop,
        COLORS[h.strategy],
        `stroke="white" stroke-width="0.5" data-strategy="${h.strategy}"`,
      );
    }
  });
  drawYLabel(svg, { left: 70, top, right: W - 24, bottom: H - bottom }, "count");
  return svg.toString();
}

/** Three overlaid empirical SINR CDF step curves. */
export function figSinrCdf(cdfs: Cdf[]): string {
  const W = 720;
  const H = 480;
  const a: Area = { left: 80, top: 48, right: W - 24, bottom: H - 56 };
  const svg = new Svg(W, H);
  drawTitle(svg, a, "SINR CDF");

  let lo = Infinity;
  let hi = -Infinity;
  for (const c of cdfs) {
    for (const p of c.points) {
      if (p.sinr < lo) {
        lo = p.sinr;
      }
      if (p.sinr > hi) {
        hi = p.sinr;
      }
    }
  }
  if (!Number.isFinite(lo)) {
    lo = 0;
    hi = 1;
  } else if (!(hi > lo)) {
    lo -= 1;
    hi += 1;
  }
  const xs = new LinearScale(lo, hi, a.left, a.right);
  const ys = new LinearScale(0, 1, a.bottom, a.top);

  drawFrame(svg, a);
  drawXTicks(svg, a, xs, niceTicks(lo, hi));
  drawYTicks(svg, a, ys, niceTicks(0, 1));
  drawXLabel(svg, a, "SINR (dB)");
  drawYLabel(svg, a, "cumulative fraction");

  for (const c of cdfs) {
    if (c.points.length === 0) {
      continue;
    }
    const pts: Array<[number, number]> = [[xs.map(lo), ys.map(0)]];
    let prev = 0;
    for (const p of decimate(c.points)) {
      pts.push([xs.map(p.sinr), ys.map(prev)]);
      pts.push([xs.map(p.sinr), ys.map(p.frac)]);
      prev = p.frac;
    }
    pts.push([xs.map(hi), ys.map(prev)]);
    svg.polyline(pts, COLORS[c.strategy], 1.5, `data-strategy="${c.strategy}"`);
  }
  drawLegend(svg, a.left + 16, a.top + 14, legendEntries());
  return svg.toString();
}
