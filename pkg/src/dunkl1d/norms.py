"""Amalgam block norms (continuous and discrete), Fofana norms, and the
weak-Lorentz amalgam norm.

The continuous block norm at scale r is

    _r||f||_{q,p} = || y -> ( integral tau_y |f|^q chi_{B_r} dmu )^{1/q} ||_p,

computed through the identity  integral tau_y g chi_{B_r} dmu = (g *_k chi_{B_r})(y)
for g = |f|^q, so one forward transform, one closed-form multiplier and one
inverse yield the inner stage at every y node simultaneously.  The q = inf
branch is translation-free: the annulus maximum of |f| over B(y, r), swept
with a monotone-deque sliding window.

The sup over scales r > 0 in the Fofana norms is a max over a geometric grid
(default 2^{j/2}, j = -8..8); the maximizer is always reported so an
under-resolved sup is visible in the output rather than silent.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError, DomainError
from .grid import GridFunction, QuadratureGrid, lp_norm, mu_ball
from .special import normalized_bessel_j
from .transform import SpectralFunction, default_freq_grid, forward, inverse
from .translation import clamp_negative

DEFAULT_R_GRID = tuple(2.0 ** (j / 2.0) for j in range(-8, 9))
DEFAULT_Y_STEP = 4   # weak-norm y-stage subsampling (p-integral keeps full mass)


def _check_exponent(name, v, allow_inf=True):
    if v == math.inf:
        if not allow_inf:
            raise DomainError(f"{name} must be finite")
        return math.inf
    v = float(v)
    if not (1.0 <= v) or not math.isfinite(v):
        raise DomainError(f"{name} must lie in [1, inf], got {v}")
    return v


@dataclass(frozen=True)
class NormSpec:
    """Exponent bundle (q, p, alpha[, beta]) plus the scale grid for the sup.

    Fofana norms require q <= alpha <= p.  When beta is set, the derived
    exponents of the fractional theory are available through derived():

        1/alpha* = 1/alpha - beta/(2k+2)
        1/pbar   = (1/p) (1 - alpha beta/(2k+2))
        1/qbar   = (1/q) (1 - alpha beta/(2k+2))
    """

    q: float
    p: float
    alpha: float
    beta: float | None = None
    r_grid: tuple = DEFAULT_R_GRID

    def __post_init__(self):
        q = _check_exponent("q", self.q)
        p = _check_exponent("p", self.p)
        a = _check_exponent("alpha", self.alpha)
        if not (q <= a <= p):
            raise DomainError(f"need q <= alpha <= p, got q={q}, alpha={a}, p={p}")
        if len(self.r_grid) == 0:
            raise ConfigurationError("r_grid must be nonempty")
        if any(not (float(r) > 0.0) for r in self.r_grid):
            raise ConfigurationError("r_grid entries must be positive")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "r_grid", tuple(float(r) for r in self.r_grid))
        if self.beta is not None:
            object.__setattr__(self, "beta", float(self.beta))

    def derived(self, param):
        """(alpha_star, pbar, qbar) for this beta at the given parameter."""
        if self.beta is None:
            raise ConfigurationError("derived exponents need beta")
        dim = 2.0 * param.k + 2.0
        if not (0.0 < self.beta < dim / self.alpha):
            raise DomainError(
                f"beta must lie in (0, (2k+2)/alpha) = (0, {dim / self.alpha}), got {self.beta}")
        shrink = 1.0 - self.alpha * self.beta / dim
        inv_astar = 1.0 / self.alpha - self.beta / dim
        alpha_star = math.inf if inv_astar == 0.0 else 1.0 / inv_astar
        pbar = math.inf if self.p == math.inf else self.p / shrink
        qbar = math.inf if self.q == math.inf else self.q / shrink
        return alpha_star, pbar, qbar


class FofanaResult(NamedTuple):
    value: float
    r_max: float     # maximizing scale; sits on the r_grid


@dataclass(frozen=True)
class CellPartition:
    """Cells Q_l^r = [r l, r l + r) over the index window covering the grid."""

    r: float
    l_min: int
    l_max: int    # inclusive

    @classmethod
    def covering(cls, grid: QuadratureGrid, r: float) -> "CellPartition":
        r = float(r)
        if not (r > 0.0):
            raise DomainError(f"cell scale must be positive, got {r}")
        X = grid.extent
        return cls(r=r, l_min=int(math.floor(-X / r)), l_max=int(math.floor(X / r)))

    def indices(self, x: np.ndarray) -> np.ndarray:
        return np.floor(x / self.r).astype(np.int64)

    def masses(self, param) -> np.ndarray:
        """Exact mu-mass of each cell; the straddling cell [a,0)+[0,b) adds
        both primitive branches."""
        ls = np.arange(self.l_min, self.l_max + 1, dtype=np.float64)
        a = self.r * ls
        b = a + self.r
        e = 2.0 * param.k + 2.0
        half = 0.5 * param.d_k
        pos = half * (np.abs(b) ** e - np.abs(a) ** e)          # 0 <= a < b
        neg = half * (np.abs(a) ** e - np.abs(b) ** e)          # a < b <= 0
        straddle = half * (np.abs(a) ** e + np.abs(b) ** e)     # a < 0 < b
        out = np.where(a >= 0.0, pos, np.where(b <= 0.0, neg, straddle))
        return out


def _conv_inner(f: GridFunction, G, freq_grid: QuadratureGrid, q: float,
                r: float, gmax: float) -> GridFunction:
    """Inner stage ( |f|^q *_k chi_{B_r} )^{1/q} from the precomputed
    spectrum G of |f|^q."""
    mult = mu_ball(f.grid.param, r) * normalized_bessel_j(
        f.grid.param.k + 1.0, r * freq_grid.nodes)
    conv = inverse(SpectralFunction(freq_grid=freq_grid, values=G.values * mult), f.grid)
    vals = clamp_negative(conv.values.real, gmax * mu_ball(f.grid.param, r),
                          "block_norm_continuous", [])
    return f.with_values(vals ** (1.0 / q))


def block_norm_continuous(f: GridFunction, q, p, r: float,
                          freq_grid: QuadratureGrid | None = None) -> float:
    """Continuous amalgam block norm at scale r."""
    q = _check_exponent("q", q)
    p = _check_exponent("p", p)
    r = float(r)
    if not (r > 0.0) or not math.isfinite(r):
        raise DomainError(f"block norm scale must be positive, got {r}")
    if q == math.inf:
        inner = _annulus_sup_inner(f, r)
    else:
        g = f.with_values(np.abs(f.values) ** q)
        if freq_grid is None:
            freq_grid = default_freq_grid(f.grid.param)
        G = forward(g, freq_grid)
        inner = _conv_inner(f, G, freq_grid, q, r, float(np.max(g.values)))
    return lp_norm(inner, p)


def _annulus_sup_inner(f: GridFunction, r: float) -> GridFunction:
    """y -> max of |f| over the annulus B(y, r), for every grid node y.

    The annulus depends on |y| only, and its endpoints grow with |y|, so one
    monotone-deque sweep over the positive half answers all queries.
    """
    grid = f.grid
    ax = grid.pos_nodes                       # ascending |x|
    av = np.abs(f.values)
    amax = np.maximum(av[grid.n_half:], av[:grid.n_half][::-1])   # max over +-x
    lo = np.maximum(0.0, ax - r)
    hi = ax + r
    out_pos = np.empty_like(ax)
    dq: deque = deque()
    j = 0
    n = ax.size
    for i in range(n):
        while j < n and ax[j] < hi[i]:
            while dq and amax[dq[-1]] <= amax[j]:
                dq.pop()
            dq.append(j)
            j += 1
        while dq and ax[dq[0]] <= lo[i]:
            dq.popleft()
        out_pos[i] = amax[dq[0]] if dq else 0.0
    return GridFunction(grid=grid, values=np.concatenate([out_pos[::-1], out_pos]))


def block_norm_discrete(f: GridFunction, q, p, r: float) -> float:
    """Discrete amalgam norm: (sum_l mu(Q_l^r) ||f chi_{Q_l^r}||_q^p)^{1/p}."""
    q = _check_exponent("q", q)
    p = _check_exponent("p", p)
    part = CellPartition.covering(f.grid, r)
    idx = part.indices(f.grid.nodes) - part.l_min
    ncell = part.l_max - part.l_min + 1
    valid = (idx >= 0) & (idx < ncell)
    idx = np.clip(idx, 0, ncell - 1)
    a = np.abs(f.values)
    if q == math.inf:
        local = np.zeros(ncell)
        np.maximum.at(local, idx[valid], a[valid])
    else:
        acc = np.zeros(ncell)
        np.add.at(acc, idx[valid], (a[valid] ** q) * f.grid.weights[valid])
        local = acc ** (1.0 / q)
    if p == math.inf:
        # p -> inf limit: the cell-mass factor washes out of (sum m a^p)^{1/p}
        return float(np.max(local)) if local.size else 0.0
    masses = part.masses(f.grid.param)
    return float(np.sum(masses * local ** p) ** (1.0 / p))


def _fofana_sup(f: GridFunction, spec: NormSpec, inner) -> FofanaResult:
    exponent = 1.0 / spec.alpha \
        - (0.0 if spec.q == math.inf else 1.0 / spec.q) \
        - (0.0 if spec.p == math.inf else 1.0 / spec.p)
    best_v, best_r = -math.inf, spec.r_grid[0]
    for r in spec.r_grid:
        v = mu_ball(f.grid.param, r) ** exponent * inner(r)
        if v > best_v:
            best_v, best_r = v, r
    return FofanaResult(value=float(best_v), r_max=float(best_r))


def fofana_norm(f: GridFunction, spec: NormSpec, discrete: bool = False,
                freq_grid: QuadratureGrid | None = None) -> FofanaResult:
    """||f||_{q,p,alpha} = sup_r mu(B_r)^{1/alpha - 1/q - 1/p} _r||f||_{q,p}.

    discrete=True swaps in the discrete block norm (used by the equivalence
    diagnostics); the two agree up to the norm-equivalence constants.
    """
    if discrete:
        return _fofana_sup(f, spec, lambda r: block_norm_discrete(f, spec.q, spec.p, r))
    if spec.q == math.inf:
        return _fofana_sup(f, spec,
                           lambda r: lp_norm(_annulus_sup_inner(f, r), spec.p))
    # one forward transform serves the whole radius sweep
    g = f.with_values(np.abs(f.values) ** spec.q)
    if freq_grid is None:
        freq_grid = default_freq_grid(f.grid.param)
    G = forward(g, freq_grid)
    gmax = float(np.max(g.values))
    return _fofana_sup(
        f, spec,
        lambda r: lp_norm(_conv_inner(f, G, freq_grid, spec.q, r, gmax), spec.p))


def _y_subgrid(grid: QuadratureGrid, step: int):
    """Positive-half representative node indices and their block masses.

    Blocks are runs of `step` consecutive cells; each block is represented by
    its middle node and carries the exact total mass of its cells, so the
    y-integral remains a partition of the full measure.
    """
    if step < 1 or int(step) != step:
        raise ConfigurationError(f"y_step must be a positive integer, got {step}")
    n = grid.n_half
    starts = np.arange(0, n, step)
    masses = np.add.reduceat(grid.pos_weights, starts)
    reps = np.minimum(starts + step // 2, n - 1)
    return reps, masses


def translated_indicator_rows(f_grid: QuadratureGrid, r: float, y_indices: np.ndarray,
                              freq_grid: QuadratureGrid | None = None) -> np.ndarray:
    """Matrix T[i, :] = tau_{-y_i} chi_{B_r} sampled on the full grid, for
    positive-half nodes y_i = pos_nodes[y_indices].

    Assembled from the quadrant kernels:  with Phi = mu(B_r) j_{k+1}(r lam),

        T = (C_y * A)^T C  +-  (S_y * A)^T S,   A = 2 w~ Phi,

    + on the positive x half, - on the negative (the sine part is odd in x).
    Negative y rows are the positive ones with the x-axis flipped.
    """
    from .transform import kernel_matrices

    if freq_grid is None:
        freq_grid = default_freq_grid(f_grid.param)
    C, S = kernel_matrices(f_grid, freq_grid)
    phi = mu_ball(f_grid.param, r) * normalized_bessel_j(
        f_grid.param.k + 1.0, r * freq_grid.pos_nodes)
    A = (2.0 * freq_grid.pos_weights * phi)[:, None]
    Cy = C[:, y_indices]
    Sy = S[:, y_indices]
    Tc = (Cy * A).T @ C
    Ts = (Sy * A).T @ S
    pos = Tc + Ts
    neg = Tc - Ts
    return np.concatenate([neg[:, ::-1], pos], axis=1)


class _WeakPack:
    """Support-restricted translated-indicator data for the weak inner norm.

    tau_{-y} chi_{B_r} vanishes off the annulus max(0, |y|-r) <= |x| <= |y|+r,
    so only in-support entries of the row matrix can contribute; values
    outside are spectral truncation noise and are dropped up front.  Entries
    are stored flat in row-major order with per-row segment starts.
    """

    __slots__ = ("rows_f", "cols", "tvals", "wvals", "starts", "seg_counts",
                 "nonempty", "n_rows", "nbytes")

    def __init__(self, rows_f, cols, tvals, wvals, starts, seg_counts, nonempty, n_rows):
        self.rows_f = rows_f
        self.cols = cols
        self.tvals = tvals
        self.wvals = wvals
        self.starts = starts
        self.seg_counts = seg_counts
        self.nonempty = nonempty
        self.n_rows = n_rows
        self.nbytes = sum(a.nbytes for a in
                          (rows_f, cols, tvals, wvals, starts, seg_counts, nonempty))


_PACK_CACHE: dict = {}
_PACK_CACHE_LIMIT = 256 * 1024 * 1024   # bytes


def clear_weak_pack_cache():
    _PACK_CACHE.clear()


def _weak_pack(grid: QuadratureGrid, r: float, y_step: int, qbar: float,
               freq_grid: QuadratureGrid | None) -> _WeakPack:
    if freq_grid is None:
        freq_grid = default_freq_grid(grid.param)
    key = (grid.fingerprint(), freq_grid.fingerprint(), float(r), int(y_step),
           float(qbar))
    pack = _PACK_CACHE.get(key)
    if pack is not None:
        return pack
    reps, _ = _y_subgrid(grid, y_step)
    T = translated_indicator_rows(grid, r, reps, freq_grid)
    y = grid.pos_nodes[reps]
    absx = np.abs(grid.nodes)
    mask = (absx >= np.maximum(y - r, 0.0)[:, None]) & (absx <= (y + r)[:, None])
    rows64, cols64 = np.nonzero(mask)
    tvals = np.maximum(T[mask], 0.0)
    if qbar != 1.0:
        tvals = tvals ** (1.0 / qbar)
    counts = np.bincount(rows64, minlength=reps.size)
    nonempty = counts > 0
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))[nonempty]
    seg_counts = counts[nonempty]
    pack = _WeakPack(rows64.astype(np.float64), cols64.astype(np.int32),
                     tvals, grid.weights[cols64], starts, seg_counts,
                     nonempty, reps.size)
    used = sum(p.nbytes for p in _PACK_CACHE.values())
    while _PACK_CACHE and used + pack.nbytes > _PACK_CACHE_LIMIT:
        used -= _PACK_CACHE.pop(next(iter(_PACK_CACHE))).nbytes
    if pack.nbytes <= _PACK_CACHE_LIMIT:
        _PACK_CACHE[key] = pack
    return pack


def _pack_weak_lorentz(avals: np.ndarray, pack: _WeakPack, qbar: float) -> np.ndarray:
    """L^{qbar,inf}(mu) of |f| * (tau_{-y_i} chi)^{1/qbar} for each row i of the
    pack: max_j W_j^{1/qbar} h_(j) over the descending rearrangement of the
    in-support entries (zeros sort to the tail and never attain the max).

    Rows and values are sorted together through one composite key: the row
    index in the integer part, the normalized value in the fraction.  That
    leaves ~44 mantissa bits for the value, so entries equal to within
    ~2^-44 relative may swap; the attained max is insensitive to tie order,
    and the result shifts by at most O(1e-13) relative.
    """
    hv = avals[pack.cols] * pack.tvals
    if hv.size == 0:
        return np.zeros(pack.n_rows)
    hmax = float(np.max(hv))
    if hmax <= 0.0:
        return np.zeros(pack.n_rows)
    key = pack.rows_f - hv * (0.5 / hmax)
    order = np.argsort(key)
    hs = hv[order]
    W = np.cumsum(pack.wvals[order])
    base = np.where(pack.starts > 0, W[pack.starts - 1], 0.0)
    W_seg = W - np.repeat(base, pack.seg_counts)
    if qbar != 1.0:
        W_seg = W_seg ** (1.0 / qbar)
    out = np.zeros(pack.n_rows)
    out[pack.nonempty] = np.maximum.reduceat(W_seg * hs, pack.starts)
    return out


def weak_block_norm(f: GridFunction, qbar, pbar, r: float,
                    y_step: int = DEFAULT_Y_STEP,
                    freq_grid: QuadratureGrid | None = None) -> float:
    """|| y -> || f * (tau_{-y} chi_{B_r})^{1/qbar} ||_{L^{qbar,inf}(mu)} ||_{pbar}.

    The inner stage is a weak Lorentz quasi-norm of f against a fractional
    power of the translated indicator, restricted to the indicator's support
    annulus; the per-row quasi-norm is a segmented sort plus cumulative sum.
    """
    qbar = _check_exponent("qbar", qbar, allow_inf=False)
    pbar = _check_exponent("pbar", pbar)
    r = float(r)
    if not (r > 0.0):
        raise DomainError(f"weak block norm scale must be positive, got {r}")
    grid = f.grid
    _, block_masses = _y_subgrid(grid, y_step)
    pack = _weak_pack(grid, r, y_step, qbar, freq_grid)
    a = np.abs(f.values)
    inner_pos = _pack_weak_lorentz(a, pack, qbar)
    inner_neg = _pack_weak_lorentz(a[::-1], pack, qbar)
    if pbar == math.inf:
        return float(max(np.max(inner_pos), np.max(inner_neg)))
    total = np.sum((inner_pos ** pbar + inner_neg ** pbar) * block_masses)
    return float(total ** (1.0 / pbar))


def weak_fofana_norm_direct(f: GridFunction, qbar, pbar, alpha_star,
                            r_grid=DEFAULT_R_GRID,
                            y_step: int = DEFAULT_Y_STEP,
                            freq_grid: QuadratureGrid | None = None) -> FofanaResult:
    """sup_r mu(B_r)^{1/alpha* - 1/qbar - 1/pbar} * weak_block_norm(f, qbar, pbar, r)
    with the three exponents given directly."""
    qbar = _check_exponent("qbar", qbar, allow_inf=False)
    pbar = _check_exponent("pbar", pbar)
    alpha_star = _check_exponent("alpha_star", alpha_star)
    exponent = 1.0 / alpha_star \
        - 1.0 / qbar \
        - (0.0 if pbar == math.inf else 1.0 / pbar)
    best_v, best_r = -math.inf, float(r_grid[0])
    for r in r_grid:
        v = mu_ball(f.grid.param, r) ** exponent \
            * weak_block_norm(f, qbar, pbar, r, y_step, freq_grid)
        if v > best_v:
            best_v, best_r = v, float(r)
    return FofanaResult(value=float(best_v), r_max=best_r)


def weak_fofana_norm(f: GridFunction, spec: NormSpec,
                     y_step: int = DEFAULT_Y_STEP,
                     freq_grid: QuadratureGrid | None = None) -> FofanaResult:
    """Weak norm at the exponents (alpha*, pbar, qbar) derived from spec's beta."""
    alpha_star, pbar, qbar = spec.derived(f.grid.param)
    return weak_fofana_norm_direct(f, qbar, pbar, alpha_star, spec.r_grid, y_step,
                                   freq_grid)
