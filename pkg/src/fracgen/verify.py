"""Formal order check of a generator through the series of ``G_r(z)``.

``G_r(z) = z**(-alpha) W(e**(-z)) e**(r z)`` equals
``(sum_n b_n z**(n-1))**alpha`` with ``b_n = sum_j (lam - j)**n b_j / n!``.
A generator has order ``q`` when ``G_r(z) = 1 + O(z**q)``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .coeffgen import BetaVector, GeneratorSpec, generate
from .exactnum import TruncatedSeries, format_rational, is_exact, series_pow_alpha

__all__ = [
    "InconsistentGeneratorError",
    "OrderReport",
    "moment_series",
    "g_series",
    "g_direct",
    "verify_order",
    "verify_beta",
    "FLOAT_ZERO_RTOL",
]

#: Relative threshold below which a floating coefficient counts as zero.
FLOAT_ZERO_RTOL = 1e-10


class InconsistentGeneratorError(ValueError):
    """``W(1) != 0``: the symbol has a pole at ``z = 0``."""


def _lambda(alpha, r):
    if is_exact(alpha, r):
        return Fraction(r) / Fraction(alpha)
    return float(r) / float(alpha)


def _zero_scale(betas, lam) -> float:
    return max(
        1.0, sum(abs(float(bj)) * math.exp(abs(float(lam) - j)) for j, bj in enumerate(betas))
    )


def _is_zero(value, scale: float) -> bool:
    if is_exact(value):
        return value == 0
    return abs(value) <= FLOAT_ZERO_RTOL * scale


def moment_series(b: BetaVector, lam, count: int) -> list:
    """``b_n = (1/n!) sum_j (lam - j)**n b_j`` for ``n = 0..count-1``."""
    betas = tuple(b)
    exact = is_exact(lam, *betas)
    out = []
    for n in range(count):
        total = 0
        for j, bj in enumerate(betas):
            total = total + (lam - j) ** n * bj
        out.append(total / math.factorial(n) if not exact else Fraction(total, math.factorial(n)))
    return out


def g_series(b: BetaVector, alpha, r, K: int) -> TruncatedSeries:
    """Series of ``G_r(z)`` truncated at ``z**K``.

    Raises :class:`InconsistentGeneratorError` when ``sum_j b_j != 0``.
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    betas = tuple(b)
    lam = _lambda(alpha, r)
    moments = moment_series(betas, lam, K + 2)
    scale = _zero_scale(betas, lam)
    if not _is_zero(moments[0], scale):
        raise InconsistentGeneratorError(
            f"coefficients sum to {format_rational(moments[0])}, not 0: "
            "the symbol has a pole at z = 0"
        )
    head = moments[1]
    if head == 0 or (not is_exact(head) and abs(head) <= FLOAT_ZERO_RTOL * scale):
        raise InconsistentGeneratorError(
            "first moment vanishes: the generator does not approximate a derivative of this order"
        )
    tail = moments[1:]
    if head == 1:
        return series_pow_alpha(TruncatedSeries(tuple(tail)), alpha)
    n = float(alpha)
    if n == int(n):
        lead = head ** int(n)
    elif head < 0:
        raise InconsistentGeneratorError(
            f"first moment {head} is negative; G_r has no real power {alpha}"
        )
    else:
        lead = float(head) ** n
    normalized = TruncatedSeries(tuple(t / head for t in tail))
    return series_pow_alpha(normalized, alpha).scale(lead)


def g_direct(b: BetaVector, alpha, r, z: complex) -> complex:
    """Evaluate ``z**(-alpha) W(e**(-z)) e**(r z)`` in floating point."""
    z = complex(z)
    poly = sum(float(bj) * cmath.exp(-j * z) for j, bj in enumerate(b))
    lam = float(r) / float(alpha)
    # (P(e^-z) e^{lam z} / z)**alpha avoids the branch cut of separate powers.
    return (poly * cmath.exp(lam * z) / z) ** float(alpha)


@dataclass(frozen=True)
class OrderReport:
    """Result of a formal order check."""

    spec: GeneratorSpec
    confirmed_order: int
    leading_coeff: object
    b0_residual: object
    a_tail: tuple
    coeffs: tuple

    def to_dict(self) -> dict:
        return {
            "alpha": format_rational(self.spec.alpha),
            "p": self.spec.p,
            "r": format_rational(self.spec.r),
            "confirmed_order": self.confirmed_order,
            "leading_coeff": format_rational(self.leading_coeff),
            "b0_residual": format_rational(self.b0_residual),
            "tail": [format_rational(a) for a in self.a_tail],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _confirmed_order(coeffs: tuple, scale: float) -> int:
    a0 = coeffs[0]
    if not (a0 == 1 if is_exact(a0) else abs(a0 - 1) <= FLOAT_ZERO_RTOL * scale):
        return 0
    K = len(coeffs) - 1
    for k in range(1, K + 1):
        if not _is_zero(coeffs[k], scale):
            return k
    return K


def verify_beta(b: BetaVector, alpha, r, K: int | None = None) -> OrderReport:
    """Order check for an arbitrary coefficient vector."""
    betas = tuple(b)
    p = len(betas) - 1
    if K is None:
        K = p + 4
    if K < p + 2:
        raise ValueError(f"K must be at least p + 2 = {p + 2}, got {K}")
    spec = GeneratorSpec(alpha, p, r)
    series = g_series(betas, spec.alpha, spec.r, K)
    lam = _lambda(spec.alpha, spec.r)
    scale = _zero_scale(betas, lam)
    b0 = moment_series(betas, lam, 1)[0]
    coeffs = series.coeffs
    return OrderReport(
        spec=spec,
        confirmed_order=_confirmed_order(coeffs, scale),
        leading_coeff=coeffs[p],
        b0_residual=b0,
        a_tail=tuple(coeffs[p:]),
        coeffs=coeffs,
    )


def verify_order(spec: GeneratorSpec, K: int | None = None) -> OrderReport:
    """Build the generator for ``spec`` and check ``G_r(z) = 1 + O(z**p)``.

    ``K`` defaults to ``p + 4``. The reported order is the true one, so a
    superconvergent shift shows up as ``confirmed_order > p``.
    """
    b = generate(spec)
    return verify_beta(b.betas, spec.alpha, spec.r, K)
