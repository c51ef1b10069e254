"""Exact and floating arithmetic substrate.

Rationals are :class:`fractions.Fraction`; polynomials and truncated power
series accept any coefficient field closed under ``+``, ``-``, ``*``, ``/``
(``Fraction`` for exact work, ``float`` for the fast path).
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "is_exact",
    "Polynomial",
    "TruncatedSeries",
    "series_mul",
    "series_pow_alpha",
]


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"``, an integer or a decimal literal exactly.

    Decimals are expanded literally, so ``"0.3"`` becomes ``3/10`` rather
    than the binary float nearest to it.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse {type(text).__name__} as a rational")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
    return value


def format_rational(value) -> str:
    """Serialize as ``"num/den"`` (or ``"num"`` for integers).

    Floats are emitted with 17 significant digits.
    """
    if isinstance(value, numbers.Rational):
        return str(Fraction(value))
    return format(float(value), ".17g")


def is_exact(*values) -> bool:
    """True when every value is an exact rational (``int`` or ``Fraction``)."""
    return all(
        isinstance(v, numbers.Rational) and not isinstance(v, bool) for v in values
    )


def _zero_like(values: Iterable) -> object:
    for v in values:
        return v * 0
    return 0


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial in ``z``; ``coeffs[i]`` multiplies ``z**i``."""

    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, z):
        acc = _zero_like(self.coeffs)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: Polynomial) -> Polynomial:
        if not self.coeffs or not other.coeffs:
            return Polynomial(())
        out = [_zero_like(self.coeffs)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(tuple(out))

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Polynomial((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series ``c_0 + c_1 z + ... + c_K z^K + O(z^(K+1))``.

    The truncation order ``K`` is explicit and always equals
    ``len(coeffs) - 1``.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, order: int) -> TruncatedSeries:
        """Pad with zeros or cut ``coeffs`` to exactly ``order + 1`` terms."""
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        c = list(coeffs)[: order + 1]
        c += [_zero_like(coeffs) if c else 0] * (order + 1 - len(c))
        return cls(tuple(c))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return series_mul(self, other)

    def scale(self, factor) -> TruncatedSeries:
        return TruncatedSeries(tuple(factor * c for c in self.coeffs))

    def __call__(self, z):
        acc = _zero_like(self.coeffs)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def _inexact(values: Sequence) -> bool:
    return all(
        isinstance(v, (float, complex, np.floating, np.complexfloating)) for v in values
    )


def _convolve(a: Sequence, b: Sequence, order: int) -> tuple:
    if _inexact(a) and _inexact(b):
        prod = np.convolve(np.asarray(a), np.asarray(b))[: order + 1]
        return tuple(v.item() for v in prod)
    out = []
    for k in range(order + 1):
        acc = 0
        for i in range(k + 1):
            ai = a[i]
            if ai == 0:
                continue
            acc = acc + ai * b[k - i]
        out.append(acc)
    return tuple(out)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product of two series truncated at their common order."""
    if a.order != b.order:
        raise ValueError(
            f"truncation orders differ: {a.order} != {b.order}"
        )
    return TruncatedSeries(_convolve(a.coeffs, b.coeffs, a.order))


def series_pow_alpha(s: TruncatedSeries, alpha) -> TruncatedSeries:
    """Binomial series ``s**alpha`` for a series with constant term 1.

    Writing ``s = 1 + X`` the sum ``sum_k binom(alpha, k) X**k`` stops at
    ``k = K`` because ``X`` has no constant term (and at ``k = alpha`` for a
    non-negative integer ``alpha``). It is evaluated in nested form, one
    truncated product per term. Rational ``alpha`` on a rational series stays
    exact; anything else runs in floating (or complex) arithmetic.
    """
    if s.coeffs[0] != 1:
        raise ValueError(f"constant term must be exactly 1, got {s.coeffs[0]!r}")
    K = s.order
    exact = is_exact(alpha, *s.coeffs)
    if exact:
        alpha = Fraction(alpha)
    else:
        alpha = float(alpha)
    top = K
    if alpha == int(alpha) and alpha >= 0:
        top = min(K, int(alpha))
    # S_top = 1, S_k = 1 + (alpha - k)/(k + 1) * X * S_{k+1}; result is S_0.
    if exact:
        x = [Fraction(0)] + [Fraction(c) for c in s.coeffs[1:]]
        acc = [Fraction(1)] + [Fraction(0)] * K
        for k in range(top - 1, -1, -1):
            prod = _convolve(x, acc, K)
            ratio = (alpha - k) / (k + 1)
            acc = [1 + ratio * prod[0]] + [ratio * c for c in prod[1:]]
        return TruncatedSeries(tuple(acc))
    x = np.asarray(s.coeffs)
    x = x.astype(complex if np.iscomplexobj(x) else float)
    x[0] = 0
    acc = np.zeros(K + 1, dtype=x.dtype)
    acc[0] = 1
    for k in range(top - 1, -1, -1):
        acc = np.convolve(x, acc)[: K + 1] * ((alpha - k) / (k + 1))
        acc[0] += 1
    return TruncatedSeries(tuple(v.item() for v in acc))
