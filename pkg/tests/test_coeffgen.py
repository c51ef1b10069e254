import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracgen.coeffgen import (
    BetaVector,
    GeneratorSpec,
    beta_explicit,
    beta_quotient_form,
    beta_vandermonde,
    det_u2,
    generate,
    lambda_of,
    moment_residual,
    moment_tolerance,
)
from reference_tables import TABLE1, table2_beta

lambdas = st.fractions(min_value=-10, max_value=10, max_denominator=30)


def cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def u2_matrix(xs):
    q = len(xs) - 1
    rows = [[F(1)] * len(xs)]
    rows += [[x**e for x in xs] for e in range(2, q + 2)]
    return rows


@pytest.mark.parametrize(
    "alpha, r, expected",
    [(2, 1, F(1, 2)), (1, 0, F(0)), (F(3, 2), 1, F(2, 3))],
)
def test_lambda_of(alpha, r, expected):
    assert lambda_of(GeneratorSpec(alpha, 1, r)) == expected


def test_spec_validation():
    with pytest.raises(ValueError):
        GeneratorSpec(0, 1, 0)
    with pytest.raises(ValueError):
        GeneratorSpec(F(1, 2), 0, 0)
    assert GeneratorSpec("0.5", 2, "1").alpha == F(1, 2)
    assert not GeneratorSpec(0.5, 2, 1).exact


def test_beta_explicit_examples():
    for lam in (F(0), F(1, 3), F(5)):
        assert beta_explicit(1, lam).betas == (1, -1)
    assert beta_explicit(2, F(1, 2)).betas == (1, -1, 0)
    assert beta_explicit(3, 0).betas == (F(11, 6), -3, F(3, 2), F(-1, 3))


def test_beta_vandermonde_examples():
    assert beta_vandermonde(1, F(1, 2)).betas == (1, -1)
    assert beta_vandermonde(2, 0).betas == (F(3, 2), -2, F(1, 2))
    assert beta_vandermonde(4, 0).betas == (F(25, 12), -4, 3, F(-4, 3), F(1, 4))


@pytest.mark.parametrize("p", range(1, 9))
def test_explicit_matches_vandermonde_at_integer_lambda(p):
    for lam in range(0, p + 1):
        assert beta_explicit(p, lam) == beta_vandermonde(p, lam)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), lambdas)
def test_explicit_matches_vandermonde(p, lam):
    assert beta_explicit(p, lam).betas == beta_vandermonde(p, lam).betas


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), lambdas)
def test_quotient_form_agrees_off_integers(p, lam):
    if lam.denominator == 1 and 0 <= lam <= p:
        with pytest.raises(ZeroDivisionError):
            beta_quotient_form(p, lam)
    else:
        assert beta_quotient_form(p, lam).betas == beta_explicit(p, lam).betas


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), lambdas)
def test_moment_conditions_and_consistency(p, lam):
    b = beta_explicit(p, lam)
    assert all(moment_residual(b, lam, n) == 0 for n in range(p + 1))
    assert sum(b.betas) == 0


def test_moment_residual_examples():
    lam = F(1, 2)
    b = beta_explicit(2, lam)
    assert moment_residual(b, lam, 0) == 0
    assert moment_residual(b, lam, 1) == 0
    direct = sum((lam - j) ** 3 * bj for j, bj in enumerate(b)) - 0
    assert moment_residual(b, lam, 3) == direct != 0


def test_float_path_within_tolerance():
    spec = GeneratorSpec(0.7, 5, 1.3)
    b = generate(spec)
    assert all(isinstance(x, float) for x in b)
    for n in range(spec.p + 1):
        assert abs(moment_residual(b, b.lam, n)) <= moment_tolerance(b, b.lam, n)
    exact = beta_explicit(5, F(13, 7))
    assert b.betas == pytest.approx([float(x) for x in exact], rel=1e-12)


@pytest.mark.parametrize("p", range(1, 7))
def test_lubich_tables(p):
    assert list(beta_explicit(p, 0).betas) == TABLE1[p]


@pytest.mark.parametrize("p", range(1, 7))
def test_published_coefficient_polynomials(p):
    rng = random.Random(p)
    for lam in [F(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(p + 1)]:
        assert list(beta_explicit(p, lam).betas) == table2_beta(p, lam)


def test_degenerate_flag():
    b = beta_explicit(2, F(3, 2))
    assert b.degenerate and b.betas[0] == 0
    assert not beta_explicit(2, 0).degenerate


def test_det_u2_examples():
    assert det_u2([1, 2]) == 3
    assert det_u2([0, 1, 2]) == 4
    assert det_u2([F(1, 3), 5, F(1, 3)]) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(-4, 4, max_denominator=6), min_size=1, max_size=6))
def test_det_u2_matches_cofactor_expansion(xs):
    assert det_u2(xs) == cofactor_det(u2_matrix(xs))


def test_beta_json_round_trip():
    b = generate(GeneratorSpec(F(1, 2), 3, F(1, 3)))
    again = BetaVector.from_json(b.to_json())
    assert again == b
    assert again.spec == b.spec
    d = b.to_dict()
    assert d["lambda"] == "2/3" and d["alpha"] == "1/2" and d["p"] == 3
