"""Finite-difference stencils for integer-order derivatives.

For ``alpha = n`` the generator ``P(z)**n`` is a polynomial of degree
``n p``; its coefficients are the stencil weights. Node ``k`` sits at offset
``r - k`` (in units of ``h``) and the formula reads

    f^(n)(x) ~= h**(-n) * sum_k w_k f(x + (r - k) h)

so the ``n``-th moment of the stencil is ``+n!``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .coeffgen import beta_explicit
from .exactnum import Polynomial, format_rational, parse_rational

__all__ = ["Stencil", "integer_stencil", "stencil_moments", "render_stencil"]

_SUB = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")


@dataclass(frozen=True)
class Stencil:
    """Offsets (multiples of ``h``) and exact coefficients; scale by ``h**(-n)``."""

    n: int
    p: int
    r: Fraction
    nodes: tuple

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(
            self, "nodes", tuple((Fraction(o), Fraction(c)) for o, c in self.nodes)
        )
        offsets = [o for o, _ in self.nodes]
        if any(b >= a for a, b in zip(offsets, offsets[1:])):
            raise ValueError("stencil offsets must be strictly decreasing")
        if len(self.nodes) > self.n * self.p + 1:
            raise ValueError("a stencil has at most n*p + 1 nodes")

    @property
    def offsets(self) -> tuple:
        return tuple(o for o, _ in self.nodes)

    @property
    def coeffs(self) -> tuple:
        return tuple(c for _, c in self.nodes)

    @property
    def order(self) -> int:
        return self.p

    def apply(self, func, x: float, h: float) -> float:
        """Evaluate the finite-difference formula for ``func`` at ``x``."""
        total = math.fsum(float(c) * func(x + float(o) * h) for o, c in self.nodes)
        return total / h**self.n

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "r": format_rational(self.r),
            "nodes": [
                {"offset": format_rational(o), "coeff": format_rational(c)}
                for o, c in self.nodes
            ],
            "order": self.p,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Stencil:
        nodes = tuple(
            (parse_rational(node["offset"]), parse_rational(node["coeff"]))
            for node in data["nodes"]
        )
        return cls(int(data["n"]), int(data["p"]), parse_rational(data["r"]), nodes)

    @classmethod
    def from_json(cls, text: str) -> Stencil:
        return cls.from_dict(json.loads(text))


def integer_stencil(n: int, p: int, r) -> Stencil:
    """Stencil for the ``n``-th derivative with accuracy order ``p`` and shift ``r``."""
    if n < 1 or p < 1:
        raise ValueError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    r = parse_rational(r) if isinstance(r, str) else Fraction(r)
    betas = beta_explicit(p, r / n).betas
    w = (Polynomial(betas) ** n).coeffs
    w = tuple(w) + (Fraction(0),) * (n * p + 1 - len(w))
    nodes = tuple((r - k, w[k]) for k in range(n * p + 1))
    return Stencil(n, p, r, nodes)


def stencil_moments(s: Stencil, count: int | None = None) -> list:
    """``sum_k coeff_k * offset_k**m`` for ``m = 0..n+p-1``."""
    if count is None:
        count = s.n + s.p
    return [sum(c * o**m for o, c in s.nodes) for m in range(count)]


def _label(offset: Fraction) -> str:
    if offset.denominator == 1:
        return "f" + str(offset.numerator).translate(_SUB)
    return f"f_{{{offset}}}"


def _derivative_label(n: int) -> str:
    return "f" + "'" * n + "(x)" if n <= 3 else f"f^({n})(x)"


def render_stencil(s: Stencil, format: str = "text") -> str:
    """Render as a readable formula (``"text"``) or exact JSON (``"json"``).

    Text mode drops zero coefficients.
    """
    if format == "json":
        return s.to_json()
    if format != "text":
        raise ValueError(f"unknown stencil format {format!r}")
    terms = []
    for offset, coeff in s.nodes:
        if coeff == 0:
            continue
        mag = f"{abs(coeff)}·{_label(offset)}"
        if not terms:
            terms.append(mag if coeff > 0 else f"−{mag}")
        else:
            terms.append(("+ " if coeff > 0 else "− ") + mag)
    body = " ".join(terms) if terms else "0"
    scale = "h" if s.n == 1 else f"h^{s.n}"
    return f"{_derivative_label(s.n)} ≈ ({body})/{scale}, order {s.p}"
