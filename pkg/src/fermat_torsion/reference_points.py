"""Published coordinates used as membership fixtures.

None of these are used to construct anything; catalogs are built from the
group law and these lists are checked against them.
"""

from __future__ import annotations

from .exactfield import Q_ALPHA_BETA, Q_EPS_MU
from .projective import ProjPoint


def flex_points(tower=Q_EPS_MU) -> list[ProjPoint]:
    e = tower.cube_root_of_unity()
    e2 = e * e
    raw = [
        [1, -1, 0], [1, 0, -1], [0, 1, -1],
        [1, -e, 0], [1, 0, -e], [0, 1, -e],
        [1, -e2, 0], [1, 0, -e2], [0, 1, -e2],
    ]
    return [ProjPoint(c, tower) for c in raw]


def type9_seeds() -> dict[str, ProjPoint]:
    """T1..T12; T10's third coordinate read as alpha^2 (beta - 1)(beta^3 + beta^2 + 1)."""
    T = Q_ALPHA_BETA
    a, b = T.gen("alpha"), T.gen("beta")
    a2 = a * a
    b2, b3, b4 = b ** 2, b ** 3, b ** 4
    raw = {
        "T1": [1, b, b2],
        "T2": [1, b2, b4],
        "T3": [1, b, b ** 5],
        "T4": [3, a * b * (b4 + 2 * b3 - b + 1), -a2 * (b2 + b + 1) * (b3 - b + 1)],
        "T5": [3, -a * b * (2 * b4 + b3 + b + 2), a2 * (b + 1) * (b - 1) ** 2],
        "T6": [3, a * b * (b4 - b3 - b - 2), -a2 * b2 * (b2 + b + 1)],
        "T7": [3, a * b * (b - 1) * (b3 + 2), -a2 * b * (b2 + b + 1) * (b2 - b + 1)],
        "T8": [3, a2 * (b - 1) * (b + 1) * (b3 + b + 1), a * b * (b4 - b3 - b - 2)],
        "T9": [3, a * b * (b - 1) ** 2 * (b2 + b + 1), -a2 * b * (b2 + b + 1) * (b2 - b + 1)],
        "T10": [3, a * b * (b - 1) ** 2 * (b2 + b + 1), a2 * (b - 1) * (b3 + b2 + 1)],
        "T11": [3, a * b * (b4 + 2 * b3 + 2 * b + 1), -a2 * b2 * (b2 + b + 1)],
        "T12": [3, -a2 * (b2 + b + 1) * (b3 - b + 1), -a * b * (2 * b4 + b3 + b + 2)],
    }
    return {k: ProjPoint(v, T) for k, v in raw.items()}


def sextactic_a_points() -> dict[str, ProjPoint]:
    T = Q_EPS_MU
    e, mu = T.gen("eps"), T.gen("mu")
    m2 = mu * mu
    raw = {
        "A1": [1, 1, 0],
        "A2": [1, 1, -m2],
        "A3": [1, 1, -e * m2],
        "A4": [1, 1, -e * e * m2],
        "A5": [1, e, 0],
        "A6": [1, e, -m2],
        "A7": [1, e, -e * m2],
        "A8": [1, e, -e * e * m2],
    }
    return {k: ProjPoint(v, T) for k, v in raw.items()}


def sextactic_b_points() -> dict[str, ProjPoint]:
    T = Q_EPS_MU
    e, mu = T.gen("eps"), T.gen("mu")
    raw = {
        "B1": [0, 1, -mu],
        "B2": [0, 1, -e * mu],
        "B3": [0, 1, -e * e * mu],
    }
    return {k: ProjPoint(v, T) for k, v in raw.items()}


def type9_c_points() -> dict[str, ProjPoint]:
    """C1..C12; C5's third coordinate read with alpha^2 (as printed, alpha)."""
    T = Q_ALPHA_BETA
    a, b = T.gen("alpha"), T.gen("beta")
    a2 = a * a
    b2, b3, b4 = b ** 2, b ** 3, b ** 4
    raw = {
        "C1": [0, 1, b],
        "C2": [0, 1, b2],
        "C3": [0, 1, b4],
        "C4": [0, 3, a * b * (b - 1) * (b3 + 2)],
        "C5": [0, 3, -a2 * (b2 + b + 1) * (b3 - b + 1)],
        "C6": [0, 3, a * b * (b4 + 2 * b3 - b + 1)],
        "C7": [0, 3, a * b * (b - 1) ** 2 * (b2 + b + 1)],
        "C8": [0, 3, a * b * (b4 + 2 * b3 + 2 * b + 1)],
        "C9": [0, 3, -a * b * (2 * b4 + b3 + b + 2)],
        "C10": [0, 3, -a2 * b2 * (b2 + b + 1)],
        "C11": [0, 3, a * b * (b4 - b3 - b - 2)],
        "C12": [0, 3, -a2 * b * (b2 + b + 1) * (b2 - b + 1)],
    }
    return {k: ProjPoint(v, T) for k, v in raw.items()}


def c5_as_printed() -> ProjPoint:
    """C5 with a single alpha, which is not a nine-fold point."""
    a, b = Q_ALPHA_BETA.gen("alpha"), Q_ALPHA_BETA.gen("beta")
    return ProjPoint([0, 3, -a * (b * b + b + 1) * (b ** 3 - b + 1)], Q_ALPHA_BETA)


# Q(x, y) and its three displayed factors, as {(i, j): c} for x^i y^j
Q_FORM = {
    (24, 0): 1, (21, 3): 4, (18, 6): -17, (15, 9): -65, (12, 12): -89,
    (9, 15): -65, (6, 18): -17, (3, 21): 4, (0, 24): 1,
}
Q_FACTORS = [
    {(9, 0): 1, (6, 3): -3, (3, 6): -6, (0, 9): -1},
    {(6, 0): 1, (3, 3): 1, (0, 6): 1},
    {(9, 0): 1, (6, 3): 6, (3, 6): 3, (0, 9): -1},
]

GAMMA_MINPOLY = {18: 1, 15: -15, 12: 177, 9: -578, 6: 6747, 3: 642, 0: 343}
