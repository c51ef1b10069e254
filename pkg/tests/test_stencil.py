import math
from fractions import Fraction as F

import pytest

from fracgen.coeffgen import GeneratorSpec
from fracgen.stencil import Stencil, integer_stencil, render_stencil, stencil_moments
from fracgen.verify import verify_order
from reference_tables import WORKED_STENCILS

SHIFTS = lambda n, p: sorted({F(0), F(1), F(2), F(n * p, 2)})  # noqa: E731


def nonzero(s):
    return [(o, c) for o, c in s.nodes if c != 0]


def test_first_derivative_central():
    s = integer_stencil(1, 2, 1)
    assert s.offsets == (1, 0, -1)
    assert s.coeffs == (F(1, 2), 0, F(-1, 2))


def test_second_derivative_three_point():
    s = integer_stencil(2, 2, 1)
    assert nonzero(s) == [(1, 1), (0, -2), (-1, 1)]
    assert len(s.nodes) == 5


def test_midpoint_stencil():
    s = integer_stencil(1, 3, F(3, 2))
    assert s.offsets == (F(3, 2), F(1, 2), F(-1, 2), F(-3, 2))
    assert s.coeffs == (F(-1, 24), F(9, 8), F(-9, 8), F(1, 24))


@pytest.mark.parametrize("key", sorted(WORKED_STENCILS))
def test_worked_examples(key):
    n, p, r = key
    s = integer_stencil(n, p, r)
    assert list(s.coeffs) == WORKED_STENCILS[key]
    assert s.offsets == tuple(r - k for k in range(n * p + 1))


def test_moment_examples():
    assert stencil_moments(integer_stencil(2, 2, 1))[:3] == [0, 0, 2]
    assert stencil_moments(integer_stencil(1, 2, 1))[:2] == [0, 1]
    assert stencil_moments(integer_stencil(2, 4, 2))[0] == 0


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_order_conditions(n, p):
    for r in SHIFTS(n, p):
        moments = stencil_moments(integer_stencil(n, p, r))
        for m, value in enumerate(moments):
            assert value == (math.factorial(n) if m == n else 0), (n, p, r, m)


def test_exact_on_low_degree_polynomials():
    s = integer_stencil(2, 3, F(1, 2))
    x, h = 0.3, 0.01
    for deg in range(5):
        exact = deg * (deg - 1) * x ** (deg - 2) if deg >= 2 else 0.0
        assert s.apply(lambda t: t**deg, x, h) == pytest.approx(exact, abs=1e-8)


def test_specializations():
    assert nonzero(integer_stencil(1, 1, 0)) == [(0, 1), (-1, -1)]
    assert nonzero(integer_stencil(1, 1, 1)) == [(1, 1), (0, -1)]
    for n, p in [(1, 2), (2, 2), (1, 4), (3, 2), (2, 3)]:
        s = integer_stencil(n, p, F(n * p, 2))
        assert s.offsets == tuple(-o for o in reversed(s.offsets))
        mags = [abs(c) for c in s.coeffs]
        assert mags == mags[::-1]


def test_node_count_and_zero_sum():
    for n in (1, 2, 3):
        for p in (1, 2, 3):
            s = integer_stencil(n, p, 1)
            assert len(s.nodes) == n * p + 1
            assert sum(s.coeffs) == 0


def test_verification_chain():
    for n, p, r in [(1, 3, 2), (2, 4, 2), (3, 2, 1), (2, 3, F(3, 2))]:
        assert verify_order(GeneratorSpec(n, p, r)).confirmed_order >= p


def test_render_text():
    assert render_stencil(integer_stencil(2, 2, 1)) == "f''(x) ≈ (1·f₁ − 2·f₀ + 1·f₋₁)/h^2, order 2"
    text = render_stencil(integer_stencil(1, 2, 1))
    assert "f₀" not in text
    assert render_stencil(integer_stencil(1, 3, F(3, 2))).startswith("f'(x) ≈ (−1/24·f_{3/2}")


def test_render_json_round_trip():
    s = integer_stencil(2, 4, 2)
    assert Stencil.from_json(render_stencil(s, "json")) == s
    assert len(s.to_dict()["nodes"]) == 9
    with pytest.raises(ValueError):
        render_stencil(s, "xml")


def test_invalid_stencils():
    with pytest.raises(ValueError):
        integer_stencil(0, 2, 1)
    with pytest.raises(ValueError):
        Stencil(1, 1, 0, ((F(0), F(1)), (F(1), F(-1))))
