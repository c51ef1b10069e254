"""Generator-polynomial coefficients for shifted Grünwald approximations.

A generator ``W(z) = (b_0 + b_1 z + ... + b_p z^p)**alpha`` approximates the
fractional derivative of order ``alpha`` with shift ``r`` and order ``p``
exactly when the ``b_j`` satisfy the moment system

    sum_j (lam - j)**n * b_j = [n == 1],   n = 0..p,   lam = r / alpha.

:func:`beta_explicit` evaluates the closed-form solution of that system;
:func:`beta_vandermonde` solves it directly and serves as an oracle.
"""

from __future__ import annotations

import json
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum import format_rational, is_exact, parse_rational

__all__ = [
    "GeneratorSpec",
    "BetaVector",
    "lambda_of",
    "beta_explicit",
    "beta_vandermonde",
    "beta_quotient_form",
    "generate",
    "moment_residual",
    "moment_tolerance",
    "det_vandermonde",
    "det_u2",
]

#: Relative residual tolerance for moment conditions on floating input.
FLOAT_MOMENT_RTOL = 1e-12


def _as_scalar(value):
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool):
        raise TypeError("booleans are not valid parameters")
    if isinstance(value, numbers.Rational):
        return Fraction(value)
    return float(value)


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters ``(alpha, p, r)`` identifying one generator ``W_{p,r}``.

    ``alpha`` and ``r`` may be given as ``Fraction``/``int``/``"num/den"``
    strings (exact path) or floats.
    """

    alpha: object
    p: int
    r: object = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", _as_scalar(self.alpha))
        object.__setattr__(self, "r", _as_scalar(self.r))
        if isinstance(self.p, bool) or not isinstance(self.p, numbers.Integral):
            raise TypeError(f"p must be an integer, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.p < 1:
            raise ValueError(f"p must be at least 1, got {self.p}")
        if not (math.isfinite(self.alpha) and math.isfinite(self.r)):
            raise ValueError("alpha and r must be finite")

    @property
    def exact(self) -> bool:
        return is_exact(self.alpha, self.r)

    @property
    def lam(self):
        return lambda_of(self)


def lambda_of(spec: GeneratorSpec):
    """Normalized shift ``r / alpha`` in the coefficient field of ``spec``."""
    if spec.alpha == 0:
        raise ZeroDivisionError("alpha must be non-zero")
    if spec.exact:
        return Fraction(spec.r) / Fraction(spec.alpha)
    return float(spec.r) / float(spec.alpha)


@dataclass(frozen=True)
class BetaVector:
    """Coefficients ``b_0..b_p`` of the generator polynomial."""

    betas: tuple
    lam: object
    spec: GeneratorSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(self.betas))
        if len(self.betas) < 2:
            raise ValueError("a generator polynomial needs at least two coefficients")

    @property
    def p(self) -> int:
        return len(self.betas) - 1

    @property
    def exact(self) -> bool:
        return is_exact(self.lam, *self.betas)

    @property
    def degenerate(self) -> bool:
        """True when ``b_0 == 0``; such generators cannot be expanded into weights."""
        return self.betas[0] == 0

    def __getitem__(self, j: int):
        return self.betas[j]

    def __len__(self) -> int:
        return len(self.betas)

    def __iter__(self):
        return iter(self.betas)

    def to_dict(self) -> dict:
        out = {}
        if self.spec is not None:
            out["alpha"] = format_rational(self.spec.alpha)
        out["p"] = self.p
        if self.spec is not None:
            out["r"] = format_rational(self.spec.r)
        out["lambda"] = format_rational(self.lam)
        out["beta"] = [format_rational(b) for b in self.betas]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> BetaVector:
        betas = tuple(parse_rational(b) for b in data["beta"])
        if "p" in data and int(data["p"]) != len(betas) - 1:
            raise ValueError(
                f"p = {data['p']} does not match {len(betas)} coefficients"
            )
        spec = None
        if "alpha" in data:
            spec = GeneratorSpec(
                parse_rational(data["alpha"]),
                len(betas) - 1,
                parse_rational(data.get("r", "0")),
            )
        if "lambda" in data:
            lam = parse_rational(data["lambda"])
        elif spec is not None:
            lam = spec.lam
        else:
            raise ValueError("either lambda or alpha/r must be given")
        return cls(betas, lam, spec)

    @classmethod
    def from_json(cls, text: str) -> BetaVector:
        return cls.from_dict(json.loads(text))


def _field_value(lam):
    return Fraction(lam) if is_exact(lam) else float(lam)


def beta_explicit(p: int, lam) -> BetaVector:
    """Closed-form coefficients as a product of sums.

    ``b_j = -prod_{m != j} 1/(j - m) * sum_{m != j} prod_{l != m, j} (lam - l)``

    This form has no division by ``lam - l`` and is valid for every ``lam``,
    including the integers ``0..p``.
    """
    if p < 1:
        raise ValueError(f"p must be at least 1, got {p}")
    lam = _field_value(lam)
    one = Fraction(1) if isinstance(lam, Fraction) else 1.0
    betas = []
    for j in range(p + 1):
        denom = 1
        for m in range(p + 1):
            if m != j:
                denom *= j - m
        total = 0 * one
        for m in range(p + 1):
            if m == j:
                continue
            prod = one
            for l in range(p + 1):
                if l != m and l != j:
                    prod = prod * (lam - l)
            total = total + prod
        betas.append(-total / denom if isinstance(lam, Fraction) else -total / float(denom))
    return BetaVector(tuple(betas), lam)


def beta_quotient_form(p: int, lam) -> BetaVector:
    """Closed-form coefficients in quotient form.

    ``b_j = -prod_{m != j} (lam - m)/(j - m) * sum_{m != j} 1/(lam - m)``

    Singular when ``lam`` is one of ``0..p``; kept only as a cross-check.
    """
    lam = _field_value(lam)
    if lam == int(lam) and 0 <= lam <= p:
        raise ZeroDivisionError(f"quotient form is singular at lam = {lam}")
    one = Fraction(1) if isinstance(lam, Fraction) else 1.0
    betas = []
    for j in range(p + 1):
        prod = one
        recip = 0 * one
        for m in range(p + 1):
            if m == j:
                continue
            prod = prod * (lam - m) / (j - m)
            recip = recip + one / (lam - m)
        betas.append(-prod * recip)
    return BetaVector(tuple(betas), lam)


def _solve(matrix: list[list], rhs: list) -> list:
    """Gaussian elimination with partial pivoting over the entries' field."""
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = max(range(col, n), key=lambda i: abs(a[i][col]))
        if a[pivot][col] == 0:
            raise ZeroDivisionError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f == 0:
                continue
            for k in range(col, n + 1):
                a[i][k] = a[i][k] - f * a[col][k]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        acc = a[i][n]
        for k in range(i + 1, n):
            acc = acc - a[i][k] * x[k]
        x[i] = acc / a[i][i]
    return x


def beta_vandermonde(p: int, lam) -> BetaVector:
    """Solve the moment system ``V(lam_0..lam_p) b = (0, 1, 0, ..., 0)`` directly."""
    if p < 1:
        raise ValueError(f"p must be at least 1, got {p}")
    lam = _field_value(lam)
    nodes = [lam - j for j in range(p + 1)]
    one = Fraction(1) if isinstance(lam, Fraction) else 1.0
    matrix = [[one * x**n for x in nodes] for n in range(p + 1)]
    rhs = [one if n == 1 else 0 * one for n in range(p + 1)]
    return BetaVector(tuple(_solve(matrix, rhs)), lam)


def generate(spec: GeneratorSpec) -> BetaVector:
    """Coefficients of ``W_{p,r}`` for ``spec`` (exact when alpha, r are rational)."""
    b = beta_explicit(spec.p, lambda_of(spec))
    return BetaVector(b.betas, b.lam, spec)


def moment_residual(b: BetaVector | Sequence, lam, n: int):
    """``sum_j (lam - j)**n * b_j - [n == 1]``; zero for ``n <= p`` on valid input."""
    if n < 0:
        raise ValueError("moment index must be non-negative")
    betas = tuple(b)
    total = 0
    for j, bj in enumerate(betas):
        total = total + (lam - j) ** n * bj
    return total - (1 if n == 1 else 0)


def moment_tolerance(b: BetaVector | Sequence, lam, n: int) -> float:
    """Floating residual budget ``1e-12 * sum|b_j| * (1 + |lam|)**n``."""
    return FLOAT_MOMENT_RTOL * sum(abs(float(x)) for x in b) * (1 + abs(float(lam))) ** n


def det_vandermonde(xs: Sequence):
    """``prod_{i<j} (x_j - x_i)``."""
    out = 1
    for j in range(len(xs)):
        for i in range(j):
            out = out * (xs[j] - xs[i])
    return out


def det_u2(xs: Sequence):
    """Determinant of the Vandermonde variant with the linear row removed.

    Rows are ``1, x**2, x**3, ..., x**(q+1)``; the determinant equals the
    Vandermonde product times the elementary symmetric polynomial of degree
    ``q`` in the ``q + 1`` values.
    """
    xs = list(xs)
    sym = 0
    for m in range(len(xs)):
        prod = 1
        for l, x in enumerate(xs):
            if l != m:
                prod = prod * x
        sym = sym + prod
    return det_vandermonde(xs) * sym
