"""Maximal operators, the fractional integral, and the Hedberg diagnostics.

The fractional integral

    I_beta f(x) = integral tau_x f(z) |z|^{beta-(2k+2)} dmu(z)

is computed against exact per-cell masses of the kernel: on a positive cell
[a, b] the mass is (c_k / beta)(b^beta - a^beta), which absorbs the z = 0
singularity in closed form.  Summing the synthesis of tau_x f against those
masses and reordering turns the whole operator into one spectral multiplier

    Psi(lam) = sum_cells 2 K_cell j_k(z_cell lam),

so I_beta f = synthesize(F f * Psi) and a Hedberg split is just the same
multiplier built from a subset of cells (A + B = whole by construction).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError, DomainError
from .grid import GridFunction, QuadratureGrid, mu_ball
from .special import normalized_bessel_j
from .transform import (SpectralFunction, default_freq_grid, forward, inverse,
                        kernel_matrices, synthesize)
from .translation import _check_tail, _finish_real, clamp_negative

DEFAULT_MAXIMAL_R_GRID = tuple(2.0 ** (j / 2.0) for j in range(-10, 7))
DEFAULT_EVAL_EXTENT = 6.0
DEFAULT_EVAL_CELLS = 64   # per half; midpoints + the origin = 129 nodes


class SampledFunction(NamedTuple):
    """Operator output at freely chosen evaluation points (not a grid)."""
    nodes: np.ndarray
    values: np.ndarray


class HedbergSplit(NamedTuple):
    A: float          # near part, over B(0, r)
    B: float          # far part, over the complement
    r_snapped: float  # the split radius actually used (a cell boundary)


def default_eval_nodes(extent: float = DEFAULT_EVAL_EXTENT,
                       cells: int = DEFAULT_EVAL_CELLS) -> np.ndarray:
    """Uniform midpoint nodes on [-extent, extent] plus the origin."""
    b = extent * np.arange(cells + 1, dtype=np.float64) / cells
    mid = 0.5 * (b[:-1] + b[1:])
    return np.concatenate([-mid[::-1], [0.0], mid])


def _check_beta(param, beta: float) -> float:
    beta = float(beta)
    if not (0.0 < beta < 2.0 * param.k + 2.0):
        raise DomainError(
            f"beta must lie in (0, 2k+2) = (0, {2.0 * param.k + 2.0}), got {beta}")
    return beta


def _check_r_grid(r_grid):
    if r_grid is None:
        return DEFAULT_MAXIMAL_R_GRID
    r_grid = tuple(float(r) for r in r_grid)
    if not r_grid:
        raise ConfigurationError("r_grid must be nonempty")
    if any(not (r > 0.0) for r in r_grid):
        raise ConfigurationError("r_grid entries must be positive")
    return r_grid


def _abs_spectrum(f: GridFunction, freq_grid: QuadratureGrid | None):
    if freq_grid is None:
        freq_grid = default_freq_grid(f.grid.param)
    af = f.abs()
    return forward(af, freq_grid), freq_grid, float(np.max(af.values))


def _ball_multiplier(param, r: float, lam: np.ndarray) -> np.ndarray:
    # transform of chi_{B_r} normalized by mu(B_r): the ball-average multiplier
    return normalized_bessel_j(param.k + 1.0, r * lam)


def hl_maximal(f: GridFunction, r_grid=None,
               freq_grid: QuadratureGrid | None = None) -> GridFunction:
    """Hardy-Littlewood maximal function: max over r of the ball average."""
    r_grid = _check_r_grid(r_grid)
    F, freq_grid, sup = _abs_spectrum(f, freq_grid)
    best = np.zeros(f.grid.nodes.size)
    for r in r_grid:
        mult = _ball_multiplier(f.grid.param, r, freq_grid.nodes)
        avg = inverse(F.with_values(F.values * mult), f.grid).values.real
        best = np.maximum(best, avg)
    best = clamp_negative(best, sup, "hl_maximal", [])
    return GridFunction(grid=f.grid, values=best, meta={"r_grid": r_grid})


def fractional_maximal(f: GridFunction, beta: float, r_grid=None,
                       freq_grid: QuadratureGrid | None = None) -> GridFunction:
    """M_beta f = max over r of mu(B_r)^{beta/(2k+2)} * ball average of |f|."""
    beta = _check_beta(f.grid.param, beta)
    r_grid = _check_r_grid(r_grid)
    F, freq_grid, sup = _abs_spectrum(f, freq_grid)
    dim = 2.0 * f.grid.param.k + 2.0
    best = np.zeros(f.grid.nodes.size)
    for r in r_grid:
        mult = _ball_multiplier(f.grid.param, r, freq_grid.nodes)
        avg = inverse(F.with_values(F.values * mult), f.grid).values.real
        scale = mu_ball(f.grid.param, r) ** (beta / dim)
        best = np.maximum(best, scale * np.maximum(avg, 0.0))
    best = clamp_negative(best, sup, "fractional_maximal", [])
    return GridFunction(grid=f.grid, values=best,
                        meta={"r_grid": r_grid, "beta": beta})


def maximal_values_at(f: GridFunction, x, beta: float = 0.0, r_grid=None,
                      freq_grid: QuadratureGrid | None = None) -> np.ndarray:
    """M f (or M_beta f for beta > 0) evaluated at arbitrary points x.

    Used wherever maximal values must sit at the exact same nodes as a
    fractional-integral output (pointwise domination, Hedberg bounds).
    """
    if beta != 0.0:
        beta = _check_beta(f.grid.param, beta)
    r_grid = _check_r_grid(r_grid)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    F, freq_grid, _ = _abs_spectrum(f, freq_grid)
    dim = 2.0 * f.grid.param.k + 2.0
    best = np.zeros(x.size)
    for r in r_grid:
        mult = _ball_multiplier(f.grid.param, r, freq_grid.nodes)
        avg = synthesize(F.with_values(F.values * mult), x).real
        scale = mu_ball(f.grid.param, r) ** (beta / dim) if beta != 0.0 else 1.0
        best = np.maximum(best, scale * np.maximum(avg, 0.0))
    return best


def riesz_kernel_masses(param, beta: float, half_boundaries: np.ndarray) -> np.ndarray:
    """Exact masses (c_k/beta)(b_j^beta - b_{j-1}^beta) of |z|^{beta-(2k+2)} dmu
    on the positive-half cells."""
    beta = _check_beta(param, beta)
    bp = np.asarray(half_boundaries, dtype=np.float64) ** beta
    return (param.c_k / beta) * np.diff(bp)


def _riesz_multiplier(space: QuadratureGrid, freq: QuadratureGrid, beta: float,
                      cell_mask=None) -> np.ndarray:
    """Psi(lam) on the full frequency node set, optionally from a cell subset."""
    K = riesz_kernel_masses(space.param, beta, space.half_boundaries)
    if cell_mask is not None:
        K = K * cell_mask
    C, _ = kernel_matrices(space, freq)
    psi_pos = C @ (2.0 * K)
    return np.concatenate([psi_pos[::-1], psi_pos])


def riesz_potential(f: GridFunction, beta: float, eval_nodes=None,
                    freq_grid: QuadratureGrid | None = None) -> SampledFunction:
    """I_beta f at the given evaluation nodes (default: the 129-node set).

    Cost is one forward transform plus one synthesis per call; the kernel
    quadrature is folded into the multiplier Psi (see module docstring).
    """
    beta = _check_beta(f.grid.param, beta)
    if eval_nodes is None:
        eval_nodes = default_eval_nodes()
    x = np.atleast_1d(np.asarray(eval_nodes, dtype=np.float64))
    notes = _check_tail(f, "riesz_potential")
    if freq_grid is None:
        freq_grid = default_freq_grid(f.grid.param)
    F = forward(f, freq_grid)
    psi = _riesz_multiplier(f.grid, freq_grid, beta)
    vals = synthesize(F.with_values(F.values * psi), x)
    if not np.iscomplexobj(f.values):
        vals, _ = _finish_real(vals, float(np.max(np.abs(f.values))),
                               "riesz_potential", notes)
    return SampledFunction(nodes=x, values=vals)


def riesz_potential_grid(f: GridFunction, beta: float,
                         freq_grid: QuadratureGrid | None = None) -> GridFunction:
    """I_beta f sampled on f's own grid (input to the norm pipelines)."""
    beta = _check_beta(f.grid.param, beta)
    notes = _check_tail(f, "riesz_potential")
    if freq_grid is None:
        freq_grid = default_freq_grid(f.grid.param)
    F = forward(f, freq_grid)
    psi = _riesz_multiplier(f.grid, freq_grid, beta)
    out = inverse(F.with_values(F.values * psi), f.grid)
    vals = out.values
    meta = {"beta": beta, "warnings": notes}
    if not np.iscomplexobj(f.values):
        vals, resid = _finish_real(vals, float(np.max(np.abs(f.values))),
                                   "riesz_potential", notes)
        meta["imag_residue"] = resid
    return GridFunction(grid=f.grid, values=vals, meta=meta)


def hedberg_profile(f: GridFunction, x, r: float, beta: float,
                    freq_grid: QuadratureGrid | None = None):
    """Near/far split of I_beta f over an array of evaluation points.

    Returns (A, B, r_snapped) with A, B arrays matching x. The split radius
    snaps to a cell boundary so A + B reproduces the full integral exactly
    (same cells, same masses)."""
    beta = _check_beta(f.grid.param, beta)
    if not (float(r) > 0.0):
        raise DomainError(f"hedberg split requires r > 0, got {r}")
    grid = f.grid
    rs = grid.snap_radius(min(float(r), grid.extent))
    if float(r) >= grid.extent:
        rs = grid.extent
    inner = grid.half_boundaries[1:] <= rs
    if freq_grid is None:
        freq_grid = default_freq_grid(grid.param)
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    F = forward(f, freq_grid)
    psi_a = _riesz_multiplier(grid, freq_grid, beta, cell_mask=inner.astype(np.float64))
    psi_b = _riesz_multiplier(grid, freq_grid, beta, cell_mask=(~inner).astype(np.float64))
    A = synthesize(F.with_values(F.values * psi_a), x)
    B = synthesize(F.with_values(F.values * psi_b), x)
    if not np.iscomplexobj(f.values):
        A, B = A.real, B.real
    return A, B, float(rs)


def hedberg_split(f: GridFunction, x: float, r: float, beta: float,
                  freq_grid: QuadratureGrid | None = None) -> HedbergSplit:
    """Single-point version of hedberg_profile."""
    A, B, rs = hedberg_profile(f, np.array([float(x)]), r, beta, freq_grid)
    return HedbergSplit(A=float(np.real(A[0])), B=float(np.real(B[0])), r_snapped=rs)


def hedberg_a_constant(param, beta: float) -> float:
    """Geometric-series constant of the near-part bound |A| <= C r^beta Mf(x)."""
    beta = _check_beta(param, beta)
    return param.d_k * 2.0 ** (2.0 * param.k + 2.0 - beta) / (1.0 - 2.0 ** (-beta))


def hedberg_b_constant(param, alpha: float, beta: float) -> float:
    """Constant of the far-part bound
    |B| <= C r^{beta-(2k+2)/alpha} ||f||_{q,inf,alpha}; needs beta < (2k+2)/alpha."""
    beta = _check_beta(param, beta)
    alpha = float(alpha)
    dim = 2.0 * param.k + 2.0
    if not (alpha >= 1.0) or not (beta < dim / alpha):
        raise DomainError(
            f"far-part bound needs alpha >= 1 and beta < (2k+2)/alpha, got "
            f"alpha={alpha}, beta={beta}")
    return (param.d_k ** (1.0 - 1.0 / alpha) * 2.0 ** (dim * (1.0 - 1.0 / alpha))
            / (1.0 - 2.0 ** (beta - dim / alpha)))


def domination_constant(param, beta: float) -> float:
    """d_k^{beta/(2k+2) - 1} in the pointwise bound M_beta f <= C I_beta |f|."""
    beta = _check_beta(param, beta)
    return param.d_k ** (beta / (2.0 * param.k + 2.0) - 1.0)
