"""Shifted Grünwald operator on a uniform grid, with a power-function oracle.

The left operator is ``h**(-alpha) * sum_k w_k f(x - (k - r) h)`` and the
right operator mirrors it, ``h**(-alpha) * sum_k w_k f(x + (k - r) h)``.
Functions are zero-extended outside ``[a, b]``.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .coeffgen import GeneratorSpec, generate
from .weights import WeightSeq, miller_weights

__all__ = [
    "OffGridError",
    "GridFn",
    "ConvergenceRow",
    "ConvergenceTable",
    "apply_shifted_grunwald",
    "rl_derivative_power",
    "estimate_order",
    "grunwald_matrix",
    "ROUNDOFF_DECADES",
]

#: Rows whose error is within this many decades of machine epsilon (relative
#: to the exact value) sit on the roundoff floor and are left out of the fit.
ROUNDOFF_DECADES = 3

_EPS = np.finfo(float).eps
_GRID_TOL = 1e-9


class OffGridError(ValueError):
    """A sampled function was asked for a value between grid points."""


@dataclass(frozen=True)
class GridFn:
    """A function on ``[a, b]`` given by samples at ``a + k h`` or by a callable.

    Callables must accept numpy arrays. Values outside ``[a, b]`` are zero.
    """

    a: float
    b: float
    h: float
    samples: np.ndarray | None = None
    func: Callable | None = None

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError(f"grid spacing must be positive, got {self.h}")
        if not self.b > self.a:
            raise ValueError(f"need b > a, got [{self.a}, {self.b}]")
        if self.samples is None and self.func is None:
            raise ValueError("provide samples, a function, or both")
        if self.samples is not None:
            samples = np.asarray(self.samples, dtype=float)
            if samples.shape != (self.n_points,):
                raise ValueError(
                    f"expected {self.n_points} samples, got shape {samples.shape}"
                )
            object.__setattr__(self, "samples", samples)

    @classmethod
    def from_function(cls, func: Callable, a: float, b: float, h: float) -> GridFn:
        return cls(a, b, h, func=func)

    @classmethod
    def sampled(cls, func: Callable, a: float, b: float, h: float) -> GridFn:
        """Tabulate ``func`` on the grid and keep only the samples."""
        n = math.floor((b - a) / h + _GRID_TOL) + 1
        return cls(a, b, h, samples=np.asarray(func(a + h * np.arange(n)), dtype=float))

    @property
    def n_points(self) -> int:
        return math.floor((self.b - self.a) / self.h + _GRID_TOL) + 1

    @property
    def nodes(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.n_points)

    def grid_index(self, x: float) -> int:
        """Index of grid point ``x``; raises :class:`OffGridError` if ``x`` is between nodes."""
        t = (x - self.a) / self.h
        i = round(t)
        if abs(t - i) > _GRID_TOL:
            raise OffGridError(f"x = {x} is not a grid point")
        return i

    def values_at_offsets(self, x: float, offsets: np.ndarray) -> np.ndarray:
        """``f(x + offsets * h)`` with zero extension; ``offsets`` are in units of ``h``."""
        offsets = np.asarray(offsets, dtype=float)
        if self.func is not None:
            y = x + offsets * self.h
            inside = (y >= self.a - _GRID_TOL * self.h) & (y <= self.b + _GRID_TOL * self.h)
            out = np.zeros_like(y)
            if inside.any():
                out[inside] = np.asarray(self.func(np.clip(y[inside], self.a, self.b)), dtype=float)
            return out
        steps = np.rint(offsets)
        if np.any(np.abs(offsets - steps) > _GRID_TOL):
            raise OffGridError(
                "a non-integer shift needs an evaluable function, not samples"
            )
        idx = self.grid_index(x) + steps.astype(int)
        inside = (idx >= 0) & (idx < self.n_points)
        out = np.zeros(len(idx))
        out[inside] = self.samples[idx[inside]]
        return out


def _terms_needed(f: GridFn, x: float, r, side: str) -> int:
    span = (x - f.a) if side == "left" else (f.b - x)
    n = math.floor(span / f.h + _GRID_TOL)
    return n + math.ceil(r)


def apply_shifted_grunwald(
    f: GridFn,
    x: float,
    spec: GeneratorSpec,
    w: WeightSeq | Sequence | None = None,
    side: str = "left",
) -> float:
    """Shifted Grünwald approximation of the order-``alpha`` derivative at ``x``.

    The sum runs over ``k = 0..N + ceil(r)`` where ``N`` counts grid cells
    between ``x`` and the boundary on the chosen side. If ``w`` is omitted
    the weights are generated from ``spec``; a shorter ``w`` is taken to be
    a finite generator whose remaining weights vanish.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not (f.a - _GRID_TOL * f.h <= x <= f.b + _GRID_TOL * f.h):
        raise ValueError(f"x = {x} lies outside [{f.a}, {f.b}]")
    r = float(spec.r)
    M = max(_terms_needed(f, x, spec.r, side), 0)
    if w is None:
        w = miller_weights(generate(spec), spec.alpha, M)
    weights = np.asarray(tuple(w), dtype=float)[: M + 1]
    k = np.arange(len(weights))
    offsets = (r - k) if side == "left" else (k - r)
    values = f.values_at_offsets(x, offsets)
    return float(np.dot(weights, values) / f.h ** float(spec.alpha))


def rl_derivative_power(mu, alpha, x):
    """Left Riemann-Liouville derivative of ``x**mu`` with base point 0.

    ``Gamma(mu + 1) / Gamma(mu + 1 - alpha) * x**(mu - alpha)``
    """
    mu, alpha, x = float(mu), float(alpha), float(x)
    if mu <= -1:
        raise ValueError(f"mu must exceed -1, got {mu}")
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    shifted = mu + 1 - alpha
    if shifted <= 0 and shifted == int(shifted):
        raise ValueError(f"Gamma has a pole at mu + 1 - alpha = {shifted:g}")
    return math.gamma(mu + 1) / math.gamma(shifted) * x ** (mu - alpha)


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    approx: float
    exact: float
    abs_error: float
    at_floor: bool


@dataclass(frozen=True)
class ConvergenceTable:
    """Errors against ``h`` with a least-squares slope of ``log(error)`` on ``log(h)``."""

    rows: tuple
    slope: float
    residual: float

    @property
    def fitted_rows(self) -> tuple:
        return tuple(r for r in self.rows if not r.at_floor)

    @property
    def reached_floor(self) -> bool:
        return any(r.at_floor for r in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("h,approx,exact,error\n")
        for row in self.rows:
            buf.write(
                f"{row.h:.17g},{row.approx:.17g},{row.exact:.17g},{row.abs_error:.17g}\n"
            )
        buf.write(f"# slope={self.slope:.6g} residual={self.residual:.6g}\n")
        return buf.getvalue()


def _fit(rows: Sequence[ConvergenceRow]) -> tuple[float, float]:
    if len(rows) < 2:
        return math.nan, math.nan
    lh = np.log([r.h for r in rows])
    le = np.log([r.abs_error for r in rows])
    slope, intercept = np.polyfit(lh, le, 1)
    resid = le - (slope * lh + intercept)
    return float(slope), float(np.sqrt(np.mean(resid**2)))


def estimate_order(
    spec: GeneratorSpec,
    mu,
    x0,
    h_list: Sequence[float],
    b: float = 2.0,
    side: str = "left",
) -> ConvergenceTable:
    """Observed convergence order for a power function on ``[0, b]`` at ``x0``.

    The left operator is tested on ``x**mu`` and the right one on its mirror
    image ``(b - x)**mu``, both against :func:`rl_derivative_power`. Rows
    whose error falls within :data:`ROUNDOFF_DECADES` decades of machine
    epsilon relative to the exact value are flagged and excluded from the fit.
    """
    h_list = [float(h) for h in h_list]
    if len(h_list) < 4:
        raise ValueError("need at least four grid spacings")
    if any(h2 >= h1 for h1, h2 in zip(h_list, h_list[1:])):
        raise ValueError("grid spacings must be strictly decreasing")
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    mu, x0, b = float(mu), float(x0), float(b)
    dist = x0 if side == "left" else b - x0
    exact = rl_derivative_power(mu, spec.alpha, dist)

    def func(y):
        return (y if side == "left" else b - y) ** mu

    betas = generate(spec)
    floor = 10.0**ROUNDOFF_DECADES * _EPS * abs(exact)
    rows = []
    for h in h_list:
        f = GridFn.from_function(func, 0.0, b, h)
        w = miller_weights(betas, spec.alpha, max(_terms_needed(f, x0, spec.r, side), 0))
        approx = apply_shifted_grunwald(f, x0, spec, w, side)
        err = abs(approx - exact)
        if not math.isfinite(err):
            raise OverflowError(f"non-finite error at h = {h}")
        rows.append(ConvergenceRow(h, float(approx), exact, float(err), bool(err <= floor)))
    slope, residual = _fit([r for r in rows if not r.at_floor])
    return ConvergenceTable(tuple(rows), slope, residual)


def grunwald_matrix(
    spec: GeneratorSpec, n_points: int, h: float, side: str = "left"
) -> np.ndarray:
    """Dense matrix of the operator acting on samples at ``n_points`` grid nodes.

    Row ``i`` gives the approximation at node ``i`` (zero extension outside
    the grid). Only integer shifts map onto grid nodes.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    r = spec.r
    if r != int(r):
        raise OffGridError("a non-integer shift needs an evaluable function, not samples")
    r = int(r)
    w = np.asarray(
        miller_weights(generate(spec), spec.alpha, max(n_points - 1 + r, 0)).weights
    )
    D = np.zeros((n_points, n_points))
    for i in range(n_points):
        for k in range(len(w)):
            j = i - k + r if side == "left" else i + k - r
            if 0 <= j < n_points:
                D[i, j] = w[k]
    return D / h ** float(spec.alpha)
