"""Built-in function families used by the verification suites and the CLI.

Grammar (one token, colon-separated):

    gaussian:SIGMA | indicator:R | sindicator:R:DELTA | bump:R | power:GAMMA:R

optionally wrapped in `dilate:LAM:` and/or `scale:T:` prefixes, e.g.
`dilate:2:scale:0.5:gaussian:1` means  x -> 0.5 * exp(-(2x)^2 / 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UsageError
from .grid import GridFunction, QuadratureGrid

FAMILIES = ("gaussian", "indicator", "sindicator", "bump", "power")


@dataclass(frozen=True)
class TestFunctionSpec:
    """A reproducible description of one input function.

    dilation acts inside (f_lam(x) = f(lam x)); amplitude outside.
    """

    family: str
    params: tuple
    dilation: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown function family {self.family!r}")
        n_expected = {"gaussian": 1, "indicator": 1, "sindicator": 2, "bump": 1, "power": 2}
        if len(self.params) != n_expected[self.family]:
            raise UsageError(
                f"{self.family} takes {n_expected[self.family]} parameter(s), got {self.params}")
        for v in self.params + (self.dilation, self.amplitude):
            if not (float(v) > 0.0) or not math.isfinite(float(v)):
                raise DomainError(f"function parameters must be positive, got {v}")

    def check_integrability(self, param, q: float):
        # |x|^{-gamma} chi_{B_R} lies in L^q(mu) iff gamma * q < 2k + 2
        if self.family == "power":
            gamma = float(self.params[0])
            if gamma * q >= 2.0 * param.k + 2.0:
                raise DomainError(
                    f"power exponent {gamma} is not L^{q}-integrable at k={param.k}")

    def label(self) -> str:
        body = ":".join([self.family] + [repr(float(p)) for p in self.params])
        if self.dilation != 1.0:
            body = f"dilate:{self.dilation!r}:{body}"
        if self.amplitude != 1.0:
            body = f"scale:{self.amplitude!r}:{body}"
        return body

    def dilated(self, lam: float) -> "TestFunctionSpec":
        return TestFunctionSpec(self.family, self.params, self.dilation * lam, self.amplitude)


def _eval_base(family: str, params: tuple, u: np.ndarray) -> np.ndarray:
    au = np.abs(u)
    if family == "gaussian":
        sigma = params[0]
        return np.exp(-(u * u) / (2.0 * sigma * sigma))
    if family == "indicator":
        return (au < params[0]).astype(np.float64)
    if family == "sindicator":
        R, delta = params
        if delta >= R:
            raise DomainError("sindicator ramp width must be smaller than the radius")
        s = np.clip((au - (R - delta)) / delta, 0.0, 1.0)
        return 1.0 - s * s * (3.0 - 2.0 * s)
    if family == "bump":
        R = params[0]
        out = np.zeros_like(au)
        inside = au < R
        t = (u[inside] / R) ** 2
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - t))
        return out
    if family == "power":
        gamma, R = params
        out = np.zeros_like(au)
        inside = (au < R) & (au > 0.0)
        out[inside] = au[inside] ** (-gamma)
        return out
    raise UsageError(f"unknown function family {family!r}")


def evaluate_spec(spec: TestFunctionSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return spec.amplitude * _eval_base(spec.family, tuple(map(float, spec.params)),
                                       spec.dilation * x)


def materialize(spec: TestFunctionSpec, grid: QuadratureGrid) -> GridFunction:
    """Sample the spec on the grid.

    Sharp indicators snap their effective radius to a cell boundary so the
    materialized function integrates exactly; the snap is recorded in meta.
    """
    meta: dict = {"spec": spec.label()}
    if spec.family == "indicator":
        r_eff = float(spec.params[0]) / spec.dilation
        rs = grid.snap_radius(r_eff)
        vals = spec.amplitude * (np.abs(grid.nodes) < rs).astype(np.float64)
        meta["snapped_r"] = rs
        return GridFunction(grid=grid, values=vals, meta=meta)
    return GridFunction(grid=grid, values=evaluate_spec(spec, grid.nodes), meta=meta)


def cells_width(grid: QuadratureGrid, near: float, n_cells: int = 4) -> float:
    """Width of n_cells consecutive cells around |x| = near (ramp sizing)."""
    b = grid.half_boundaries
    j = int(np.clip(np.searchsorted(b, abs(near)), n_cells, b.size - 1))
    return float(b[j] - b[j - n_cells])


def smoothed_indicator_spec(grid: QuadratureGrid, R: float, n_cells: int = 4) -> TestFunctionSpec:
    """sindicator whose ramp spans n_cells grid cells just inside radius R."""
    return TestFunctionSpec("sindicator", (float(R), cells_width(grid, R, n_cells)))


def parse_function_spec(token: str) -> TestFunctionSpec:
    """Parse the one-token grammar into a TestFunctionSpec."""
    parts = token.strip().split(":")
    dilation = 1.0
    amplitude = 1.0
    while parts and parts[0] in ("dilate", "scale"):
        if len(parts) < 2:
            raise UsageError(f"{parts[0]} prefix needs a value in {token!r}")
        try:
            v = float(parts[1])
        except ValueError as exc:
            raise UsageError(f"bad numeric value {parts[1]!r} in {token!r}") from exc
        if parts[0] == "dilate":
            dilation *= v
        else:
            amplitude *= v
        parts = parts[2:]
    if not parts:
        raise UsageError(f"no function family in {token!r}")
    family, *rest = parts
    try:
        params = tuple(float(p) for p in rest)
    except ValueError as exc:
        raise UsageError(f"bad numeric parameter in {token!r}") from exc
    return TestFunctionSpec(family, params, dilation, amplitude)
