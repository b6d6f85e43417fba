/** Minimal SVG string builder; no DOM dependency so the CLI runs on bare node. */

export function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Coordinate formatter: 2 decimal places with float noise trimmed. */
export function fmt(v: number): string {
  const r = Math.round(v * 100) / 100;
  return Object.is(r, -0) ? "0" : String(r);
}

export class LinearScale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly r0: number,
    readonly r1: number,
  ) {}

  map(v: number): number {
    if (this.d1 === this.d0) {
      return (this.r0 + this.r1) / 2;
    }
    return this.r0 + ((v - this.d0) / (this.d1 - this.d0)) * (this.r1 - this.r0);
  }
}

/** Tick positions at a 1/2/5 step covering [lo, hi] with about `target` ticks. */
export function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    return [lo];
  }
  const raw = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = 10 * mag;
  for (const m of [1, 2, 5]) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const first = Math.ceil(lo / step - 1e-9);
  const last = Math.floor(hi / step + 1e-9);
  const ticks: number[] = [];
  for (let k = first; k <= last; k++) {
    ticks.push(Number((k * step).toPrecision(12)));
  }
  return ticks;
}

export function tickLabel(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e6 || a < 1e-3)) {
    return v.toExponential(2).replace("e+", "e");
  }
  return String(Number(v.toPrecision(8)));
}

export interface Area {
  left: number;
  top: number;
  right: number;
  bottom: number;
}

export class Svg {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    );
    this.parts.push(`<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "#000", width = 1): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ` +
        `fill="${fill}"${extra ? " " + extra : ""}/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, extra = ""): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${stroke}" ` +
        `stroke-width="${width}"${extra ? " " + extra : ""}/>`,
    );
  }

  text(
    x: number,
    y: number,
    s: string,
    opts: { size?: number; anchor?: string; fill?: string; rotate?: number; bold?: boolean } = {},
  ): void {
    const size = opts.size ?? 12;
    const anchor = opts.anchor ?? "start";
    const fill = opts.fill ?? "#000";
    const weight = opts.bold ? ` font-weight="bold"` : "";
    const transform =
      opts.rotate !== undefined ? ` transform="rotate(${opts.rotate} ${fmt(x)} ${fmt(y)})"` : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}" ` +
        `fill="${fill}"${weight}${transform}>${esc(s)}</text>`,
    );
  }

  toString(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

/** Left and bottom axis lines. */
export function drawFrame(svg: Svg, a: Area): void {
  svg.line(a.left, a.top, a.left, a.bottom);
  svg.line(a.left, a.bottom, a.right, a.bottom);
}

export function drawXTicks(
  svg: Svg,
  a: Area,
  scale: LinearScale,
  ticks: number[],
  labels = true,
): void {
  for (const t of ticks) {
    const x = scale.map(t);
    svg.line(x, a.bottom, x, a.bottom + 4);
    if (labels) {
      svg.text(x, a.bottom + 16, tickLabel(t), { size: 10, anchor: "middle" });
    }
  }
}

export function drawYTicks(svg: Svg, a: Area, scale: LinearScale, ticks: number[]): void {
  for (const t of ticks) {
    const y = scale.map(t);
    svg.line(a.left - 4, y, a.left, y);
    svg.text(a.left - 7, y + 3, tickLabel(t), { size: 10, anchor: "end" });
  }
}

export function drawTitle(svg: Svg, a: Area, title: string): void {
  svg.text((a.left + a.right) / 2, a.top - 16, title, { size: 14, anchor: "middle", bold: true });
}

export function drawXLabel(svg: Svg, a: Area, label: string): void {
  svg.text((a.left + a.right) / 2, a.bottom + 36, label, { size: 12, anchor: "middle" });
}

export function drawYLabel(svg: Svg, a: Area, label: string): void {
  const x = a.left - 48;
  const y = (a.top + a.bottom) / 2;
  svg.text(x, y, label, { size: 12, anchor: "middle", rotate: -90 });
}

export function drawLegend(
  svg: Svg,
  x: number,
  y: number,
  entries: Array<{ name: string; color: string }>,
): void {
  entries.forEach((e, i) => {
    const yy = y + i * 16;
    svg.line(x, yy - 4, x + 18, yy - 4, e.color, 2);
    svg.text(x + 24, yy, e.name, { size: 11 });
  });
}
