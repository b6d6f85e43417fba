"""Hot numeric kernels: segment-box blockage tests and shadowing recursion.

Each kernel has a numba ``@njit`` build and a pure-numpy twin computing the
same IEEE operations in the same order, so the two backends agree
bit-for-bit.  The numpy path is selected when numba is unavailable or when
the ``DCHO_NO_NUMBA`` environment variable is set (any non-empty value);
``benchmarks/bench_kernels.py`` compares the two.
"""

import os

import numpy as np

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - the test env ships numba
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not os.environ.get("DCHO_NO_NUMBA")


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _segment_blocked(px, py, pz, qx, qy, qz, box) -> bool:
    """Slab test: does the open segment p->q cross the open box interior?

    Strict inequalities throughout make boundary contact non-blocking.
    """
    t0 = 0.0
    t1 = 1.0
    p = (px, py, pz)
    d = (qx - px, qy - py, qz - pz)
    for axis in range(3):
        lo = box[axis]
        hi = box[axis + 3]
        if d[axis] == 0.0:
            if not (lo < p[axis] < hi):
                return False
        else:
            ta = (lo - p[axis]) / d[axis]
            tb = (hi - p[axis]) / d[axis]
            if ta > tb:
                ta, tb = tb, ta
            if ta > t0:
                t0 = ta
            if tb < t1:
                t1 = tb
            if t0 >= t1:
                return False
    return t0 < t1


def _blockage_counts_loops(ue_pos, gnb_pos, boxes):
    n_t = ue_pos.shape[0]
    n_g = gnb_pos.shape[0]
    n_b = boxes.shape[0]
    out = np.zeros((n_t, n_g), dtype=np.int64)
    for t in range(n_t):
        for g in range(n_g):
            c = 0
            for b in range(n_b):
                if _segment_blocked(
                    ue_pos[t, 0], ue_pos[t, 1], ue_pos[t, 2],
                    gnb_pos[g, 0], gnb_pos[g, 1], gnb_pos[g, 2],
                    boxes[b],
                ):
                    c += 1
            out[t, g] = c
    return out


def blockage_counts_numpy(ue_pos: np.ndarray, gnb_pos: np.ndarray,
                          boxes: np.ndarray) -> np.ndarray:
    """Per-tick, per-gNB obstacle counts; vectorised over the tick axis."""
    n_t = ue_pos.shape[0]
    n_g = gnb_pos.shape[0]
    out = np.zeros((n_t, n_g), dtype=np.int64)
    if boxes.shape[0] == 0:
        return out
    for g in range(n_g):
        d = gnb_pos[g][None, :] - ue_pos  # (T, 3)
        for b in range(boxes.shape[0]):
            lo = boxes[b, :3]
            hi = boxes[b, 3:]
            t0 = np.zeros(n_t)
            t1 = np.ones(n_t)
            alive = np.ones(n_t, dtype=bool)
            for axis in range(3):
                da = d[:, axis]
                pa = ue_pos[:, axis]
                par = da == 0.0
                alive &= ~par | ((lo[axis] < pa) & (pa < hi[axis]))
                with np.errstate(divide="ignore", invalid="ignore"):
                    ta = (lo[axis] - pa) / da
                    tb = (hi[axis] - pa) / da
                swap = ta > tb
                ta, tb = np.where(swap, tb, ta), np.where(swap, ta, tb)
                upd = ~par
                t0 = np.where(upd & (ta > t0), ta, t0)
                t1 = np.where(upd & (tb < t1), tb, t1)
            out[:, g] += (alive & (t0 < t1)).astype(np.int64)
    return out


def shadow_series_numpy(noise: np.ndarray, rho: np.ndarray,
                        sigma: np.ndarray) -> np.ndarray:
    """AR(1) shadowing over a (T, G) noise matrix.

    Row 0 is the stationary draw sigma * noise[0]; each later row mixes the
    previous value with fresh noise at the per-tick correlation ``rho[t]``,
    keeping the marginal Normal(0, sigma^2).
    """
    n_t, n_g = noise.shape
    out = np.empty((n_t, n_g), dtype=np.float64)
    if n_t == 0:
        return out
    vals = sigma * noise[0]
    out[0] = vals
    for t in range(1, n_t):
        r = rho[t]
        s = np.sqrt(1.0 - r * r)
        vals = r * vals + s * (sigma * noise[t])
        out[t] = vals
    return out


if HAS_NUMBA:
    _segment_blocked_nb = numba.njit(cache=True)(_segment_blocked)

    @numba.njit(cache=True)
    def blockage_counts_numba(ue_pos, gnb_pos, boxes):  # pragma: no cover - jitted
        n_t = ue_pos.shape[0]
        n_g = gnb_pos.shape[0]
        n_b = boxes.shape[0]
        out = np.zeros((n_t, n_g), dtype=np.int64)
        for t in range(n_t):
            for g in range(n_g):
                c = 0
                for b in range(n_b):
                    if _segment_blocked_nb(
                        ue_pos[t, 0], ue_pos[t, 1], ue_pos[t, 2],
                        gnb_pos[g, 0], gnb_pos[g, 1], gnb_pos[g, 2],
                        boxes[b],
                    ):
                        c += 1
                out[t, g] = c
        return out

    @numba.njit(cache=True)
    def shadow_series_numba(noise, rho, sigma):  # pragma: no cover - jitted
        n_t, n_g = noise.shape
        out = np.empty((n_t, n_g), dtype=np.float64)
        if n_t == 0:
            return out
        for g in range(n_g):
            out[0, g] = sigma[g] * noise[0, g]
        for t in range(1, n_t):
            r = rho[t]
            s = np.sqrt(1.0 - r * r)
            for g in range(n_g):
                out[t, g] = r * out[t - 1, g] + s * (sigma[g] * noise[t, g])
        return out

else:  # pragma: no cover
    blockage_counts_numba = None
    shadow_series_numba = None


def blockage_counts(ue_pos: np.ndarray, gnb_pos: np.ndarray,
                    boxes: np.ndarray) -> np.ndarray:
    ue_pos = np.ascontiguousarray(ue_pos, dtype=np.float64)
    gnb_pos = np.ascontiguousarray(gnb_pos, dtype=np.float64)
    boxes = np.ascontiguousarray(boxes, dtype=np.float64)
    if USE_NUMBA:
        return blockage_counts_numba(ue_pos, gnb_pos, boxes)
    return blockage_counts_numpy(ue_pos, gnb_pos, boxes)


def shadow_series(noise: np.ndarray, rho: np.ndarray,
                  sigma: np.ndarray) -> np.ndarray:
    noise = np.ascontiguousarray(noise, dtype=np.float64)
    rho = np.ascontiguousarray(rho, dtype=np.float64)
    sigma = np.ascontiguousarray(sigma, dtype=np.float64)
    if USE_NUMBA:
        return shadow_series_numba(noise, rho, sigma)
    return shadow_series_numpy(noise, rho, sigma)
