"""Published generator tables, transcribed as exact rationals.

``TABLE2[p][j]`` lists the coefficients of ``b_j`` as a polynomial in
``lam``, lowest power first.
"""

from fractions import Fraction as F

TABLE1 = {
    1: [F(1), F(-1)],
    2: [F(3, 2), F(-2), F(1, 2)],
    3: [F(11, 6), F(-3), F(3, 2), F(-1, 3)],
    4: [F(25, 12), F(-4), F(3), F(-4, 3), F(1, 4)],
    5: [F(137, 60), F(-5), F(5), F(-10, 3), F(5, 4), F(-1, 5)],
    6: [F(49, 20), F(-6), F(15, 2), F(-20, 3), F(15, 4), F(-6, 5), F(1, 6)],
}

TABLE2 = {
    1: [[F(1)], [F(-1)]],
    2: [
        [F(3, 2), F(-1)],
        [F(-2), F(2)],
        [F(1, 2), F(-1)],
    ],
    3: [
        [F(11, 6), F(-2), F(1, 2)],
        [F(-3), F(5), F(-3, 2)],
        [F(3, 2), F(-4), F(3, 2)],
        [F(-1, 3), F(1), F(-1, 2)],
    ],
    4: [
        [F(25, 12), F(-35, 12), F(5, 4), F(-1, 6)],
        [F(-4), F(26, 3), F(-9, 2), F(2, 3)],
        [F(3), F(-19, 2), F(6), F(-1)],
        [F(-4, 3), F(14, 3), F(-7, 2), F(2, 3)],
        [F(1, 4), F(-11, 12), F(3, 4), F(-1, 6)],
    ],
    5: [
        [F(137, 60), F(-15, 4), F(17, 8), F(-1, 2), F(1, 24)],
        [F(-5), F(77, 6), F(-71, 8), F(7, 3), F(-5, 24)],
        [F(5), F(-107, 6), F(59, 4), F(-13, 3), F(5, 12)],
        [F(-10, 3), F(13), F(-49, 4), F(4), F(-5, 12)],
        [F(5, 4), F(-61, 12), F(41, 8), F(-11, 6), F(5, 24)],
        [F(-1, 5), F(5, 6), F(-7, 8), F(1, 3), F(-1, 24)],
    ],
    6: [
        [F(49, 20), F(-203, 45), F(49, 16), F(-35, 36), F(7, 48), F(-1, 120)],
        [F(-6), F(87, 5), F(-29, 2), F(31, 6), F(-5, 6), F(1, 20)],
        [F(15, 2), F(-117, 4), F(461, 16), F(-137, 12), F(95, 48), F(-1, 8)],
        [F(-20, 3), F(254, 9), F(-31), F(121, 9), F(-5, 2), F(1, 6)],
        [F(15, 4), F(-33, 2), F(307, 16), F(-107, 12), F(85, 48), F(-1, 8)],
        [F(-6, 5), F(27, 5), F(-13, 2), F(19, 6), F(-2, 3), F(1, 20)],
        [F(1, 6), F(-137, 180), F(15, 16), F(-17, 36), F(5, 48), F(-1, 120)],
    ],
}


def table2_beta(p, lam):
    """Evaluate the published coefficient polynomials at ``lam``."""
    out = []
    for poly in TABLE2[p]:
        acc = F(0)
        for c in reversed(poly):
            acc = acc * lam + c
        out.append(acc)
    return out


# Worked finite-difference examples: (n, p, r) -> expansion of the generator,
# lowest power of z first.
WORKED_STENCILS = {
    (1, 2, F(1)): [F(1, 2), F(0), F(-1, 2)],
    (1, 3, F(2)): [F(-1, 6), F(1), F(-1, 2), F(-1, 3)],
    (1, 3, F(3, 2)): [F(-1, 24), F(9, 8), F(-9, 8), F(1, 24)],
    (2, 4, F(2)): [
        F(1, 16), F(5, 12), F(-1, 18), F(-9, 4), F(73, 24),
        F(-59, 36), F(1, 2), F(-1, 12), F(1, 144),
    ],
}
