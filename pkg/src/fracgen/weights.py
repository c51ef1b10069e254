"""Grünwald weights: coefficients of ``W(z) = P(z)**alpha``."""

from __future__ import annotations

import io
import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .coeffgen import BetaVector, GeneratorSpec, generate
from .exactnum import TruncatedSeries, is_exact, series_mul, series_pow_alpha

__all__ = [
    "DegenerateGeneratorError",
    "WeightSeq",
    "miller_weights",
    "weights_series_oracle",
    "weights_for",
    "default_length",
]


class DegenerateGeneratorError(ValueError):
    """The generator polynomial cannot be raised to the power ``alpha``."""


@dataclass(frozen=True)
class WeightSeq:
    """Truncated weight sequence ``w_0..w_M``."""

    weights: tuple
    spec: GeneratorSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if not all(math.isfinite(w) for w in self.weights):
            raise OverflowError("weights overflow the floating range; reduce M")

    @property
    def M(self) -> int:
        return len(self.weights) - 1

    def __getitem__(self, k):
        return self.weights[k]

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("k,w\n")
        for k, w in enumerate(self.weights):
            buf.write(f"{k},{float(w):.17g}\n")
        return buf.getvalue()


def _integer_power(alpha) -> int | None:
    if float(alpha) == int(float(alpha)):
        return int(float(alpha))
    return None


def _leading_power(beta0, alpha):
    if beta0 == 0:
        raise DegenerateGeneratorError(
            "zero constant term: choose a different shift for this order"
        )
    n = _integer_power(alpha)
    if n is not None:
        return beta0**n
    if beta0 < 0:
        raise DegenerateGeneratorError(
            f"negative constant term {beta0} has no real power {alpha}"
        )
    return float(beta0) ** float(alpha)


def _check_length(M: int) -> None:
    if isinstance(M, bool) or not isinstance(M, numbers.Integral) or M < 0:
        raise ValueError(f"M must be a non-negative integer, got {M!r}")


def _as_output(values, exact: bool) -> tuple:
    if exact:
        return tuple(values)
    return tuple(float(v) for v in values)


def miller_weights(b: BetaVector, alpha, M: int, *, exact: bool = False) -> WeightSeq:
    """Expand ``P(z)**alpha`` with Miller's recurrence.

    ``w_0 = b_0**alpha`` and
    ``w_m = 1/(m b_0) * sum_{j=1}^{min(m,p)} (j(alpha+1) - m) w_{m-j} b_j``.

    Integer ``alpha`` with rational coefficients runs in exact arithmetic,
    since the floating recurrence amplifies roundoff in the weights that
    vanish beyond ``alpha * p``. ``exact=True`` returns those weights as
    ``Fraction`` values.
    """
    _check_length(M)
    betas = tuple(b)
    n = _integer_power(alpha)
    rational = n is not None and is_exact(*betas)
    if exact and not rational:
        raise ValueError("exact weights need an integer alpha and rational coefficients")
    if rational:
        alpha = Fraction(n)
        betas = tuple(Fraction(x) for x in betas)
    else:
        alpha = float(alpha)
        betas = tuple(float(x) for x in betas)
    p = len(betas) - 1
    b0 = betas[0]
    w = [_leading_power(b0, alpha)]
    for m in range(1, M + 1):
        if n is not None and m > n * p:
            w.append(0 * b0)
            continue
        acc = 0
        for j in range(1, min(m, p) + 1):
            acc += (j * (alpha + 1) - m) * w[m - j] * betas[j]
        w.append(acc / (m * b0))
    return WeightSeq(_as_output(w, exact), getattr(b, "spec", None))


def _normalized_roots(betas: tuple) -> list[complex]:
    coeffs = list(betas)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        return []
    with mpmath.workdps(50):
        mp = [
            mpmath.mpf(c.numerator) / c.denominator
            if isinstance(c, Fraction)
            else mpmath.mpf(c)
            for c in coeffs
        ]
        roots = mpmath.polyroots(mp[::-1], maxsteps=200, extraprec=200)
    return [complex(z) for z in roots]


def weights_series_oracle(b: BetaVector, alpha, M: int) -> WeightSeq:
    """Expand ``P(z)**alpha`` as ``b_0**alpha * (P(z)/b_0)**alpha`` by binomial series.

    For integer ``alpha`` on rational coefficients the series is summed
    exactly. Otherwise ``P/b_0`` is first split into linear factors
    ``1 - z/z_i`` (roots found to 50 digits) and each factor's binomial
    series is multiplied in; summing the binomial series of ``P/b_0``
    directly cancels catastrophically in floating point for long expansions.
    """
    _check_length(M)
    betas = tuple(b)
    lead = _leading_power(betas[0], alpha)
    n = _integer_power(alpha)
    if n is not None and is_exact(*betas):
        normalized = [Fraction(1)] + [Fraction(x) / Fraction(betas[0]) for x in betas[1:]]
        s = TruncatedSeries.from_coeffs(normalized, M)
        series = series_pow_alpha(s, n)
        return WeightSeq(
            tuple(float(lead * c) for c in series.coeffs), getattr(b, "spec", None)
        )
    total = TruncatedSeries.from_coeffs([1 + 0j], M)
    for root in _normalized_roots(betas):
        factor = TruncatedSeries.from_coeffs([1 + 0j, -1 / root], M)
        total = series_mul(total, series_pow_alpha(factor, float(alpha)))
    return WeightSeq(
        tuple(float(lead) * c.real for c in total.coeffs), getattr(b, "spec", None)
    )


def default_length(n_points: int, r) -> int:
    """Weights needed to reach ``n_points`` grid cells back from a point with shift ``r``."""
    return int(n_points) + math.ceil(r)


def weights_for(spec: GeneratorSpec, M: int) -> WeightSeq:
    """Generator coefficients for ``spec`` expanded into ``M + 1`` weights."""
    return miller_weights(generate(spec), spec.alpha, M)
