import random

import pytest

from fermat_torsion.catalogs import catalog, three_torsion, two_torsion
from fermat_torsion.elliptic import (
    FERMAT_MODEL,
    INFINITY,
    ECPoint,
    IndependenceError,
    division_poly,
    ec_add,
    ec_neg,
    ec_scalar_mul,
    from_weierstrass,
    order,
    to_weierstrass,
    torsion_subgroup,
)
from fermat_torsion.exactfield import Q, Q_ALPHA_BETA, Q_EPS_MU
from fermat_torsion.projective import ContractViolation, ProjPoint
from fermat_torsion.reference_points import type9_seeds


def test_identity_is_flex_on_x_plus_y():
    assert to_weierstrass(ProjPoint([1, -1, 0])) == INFINITY
    assert from_weierstrass(INFINITY) == ProjPoint([1, -1, 0])


def test_to_weierstrass_rejects_points_off_curve():
    with pytest.raises(ContractViolation):
        to_weierstrass(ProjPoint([1, 1, 1]))


def test_round_trip_on_every_catalog_point():
    for kind in ("flex", "sextactic", "type9"):
        cat = catalog(kind)
        for P in cat:
            E = to_weierstrass(P)
            assert FERMAT_MODEL.contains(E)
            assert from_weierstrass(E, cat.tower) == P


def test_flexes_are_three_torsion():
    for E in three_torsion(Q_EPS_MU):
        assert ec_scalar_mul(3, E).is_infinity


def test_two_torsion():
    pts = two_torsion()
    assert all(FERMAT_MODEL.contains(E) and ec_add(E, E) == INFINITY for E in pts)
    assert len(set(pts)) == 4


def test_group_axioms_on_nine_torsion():
    rng = random.Random(17)
    pts = [to_weierstrass(P) for P in catalog("type9")] + three_torsion(Q_ALPHA_BETA)
    for _ in range(60):
        p, q, r = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        assert ec_add(p, q) == ec_add(q, p)
        assert ec_add(ec_add(p, q), r) == ec_add(p, ec_add(q, r))
        assert ec_add(p, ec_neg(p)) == INFINITY
        assert ec_add(p, INFINITY) == p


def test_seed_orders():
    seeds = type9_seeds()
    for name in ("T1", "T4", "T10"):
        assert order(to_weierstrass(seeds[name]), 20) == 9


def test_division_polynomial_degrees():
    assert division_poly(3).poly.coeffs == division_poly(3).poly.coeffs
    psi3 = division_poly(3).poly
    assert [c for c in psi3.coeffs] == [0, -5184, 0, 0, 3]
    assert division_poly(9).degree == 40
    assert division_poly(2).poly.degree == 0
    with pytest.raises(ValueError):
        division_poly(13)


def test_division_polynomial_roots_match_group_law():
    psi9 = division_poly(9)
    psi3 = division_poly(3)
    for P in catalog("type9"):
        x = to_weierstrass(P).x
        assert not psi9(x) and psi3(x)


def test_even_division_polynomial_kills_sextactic_points():
    psi6 = division_poly(6)
    assert psi6.even
    for P in catalog("sextactic"):
        E = to_weierstrass(P)
        assert not E.y or not psi6(E.x)


def test_torsion_subgroup_size_and_dependence():
    seeds = type9_seeds()
    g1 = to_weierstrass(seeds["T1"])
    assert len(torsion_subgroup(g1, to_weierstrass(seeds["T4"]), 9)) == 81
    with pytest.raises(IndependenceError):
        torsion_subgroup(g1, ec_scalar_mul(2, g1), 9)


def test_ecpoint_json():
    E = to_weierstrass(type9_seeds()["T2"])
    assert ECPoint.from_json(E.to_json()) == E
    assert ECPoint.from_json(INFINITY.to_json()) is INFINITY
    assert ECPoint(Q(0), Q(1)) != INFINITY
