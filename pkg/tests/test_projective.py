import pickle

import pytest

from fermat_torsion.exactfield import Q, Q_ALPHA_BETA, Q_EPS_MU
from fermat_torsion.polynomials import hom_eval
from fermat_torsion.projective import (
    FERMAT,
    Conic,
    ContractViolation,
    Line,
    ProjPoint,
    ReducibleConicError,
    TotalContactError,
    conic_contact_profile,
    conic_parametrize,
    conic_residual_point,
    intersection_multiplicity_on_conic,
    line_residual_point,
    tangent_line,
)


def test_normalization_and_equality():
    mu = Q_EPS_MU.gen("mu")
    P = ProjPoint([2, 2, -mu * 2], Q_EPS_MU)
    assert P == ProjPoint([1, 1, -mu], Q_EPS_MU)
    assert P.coords[0] == 1
    assert ProjPoint([0, 3, 6]) == ProjPoint([0, 1, 2])
    with pytest.raises(ValueError):
        ProjPoint([0, 0, 0])


def test_points_hash_and_pickle():
    P = ProjPoint([1, Q_ALPHA_BETA.gen("beta"), 0], Q_ALPHA_BETA)
    assert {P: 1}[pickle.loads(pickle.dumps(P))] == 1
    assert ProjPoint.from_json(P.to_json()) == P


def test_permute():
    P = ProjPoint([1, 2, 3])
    assert P.permute((2, 0, 1)) == ProjPoint([3, 1, 2])


def test_tangent_at_type9_seed():
    b = Q_ALPHA_BETA.gen("beta")
    T1 = ProjPoint([1, b, b * b], Q_ALPHA_BETA)
    L = tangent_line(T1)
    assert L == Line([1, b ** 2, b ** 4], Q_ALPHA_BETA)
    R = line_residual_point(L, T1, 2)
    assert R == ProjPoint([1, b ** 4, -(b ** 2) - b ** 5], Q_ALPHA_BETA)
    assert not hom_eval(FERMAT, R.coords) and L.contains(R)


def test_tangent_at_sextactic_point_meets_a_flex():
    mu = Q_EPS_MU.gen("mu")
    P = ProjPoint([1, 1, -mu], Q_EPS_MU)
    L = tangent_line(P)
    assert L == Line([1, 1, mu * mu], Q_EPS_MU)
    assert line_residual_point(L, P, 2) == ProjPoint([1, -1, 0], Q_EPS_MU)


def test_flex_tangent_has_no_residual():
    P = ProjPoint([1, -1, 0])
    assert line_residual_point(tangent_line(P), P, 3) is None


def test_tangent_requires_point_on_curve():
    with pytest.raises(ContractViolation):
        tangent_line(ProjPoint([1, 1, 1]))


def test_conic_parametrization_of_standard_conic():
    C = Conic([0, 1, 0, 0, -1, 0])  # y^2 - xz
    P = ProjPoint([1, 0, 0])
    param = conic_parametrize(C, P)
    for t in range(-3, 4):
        assert C.contains(param(Q(t))) or param.coords_at(Q(t)) == [0, 0, 0]
    assert param(param.base_param) == P
    assert C.contains(param.at_infinity())


def test_reducible_conic_rejected():
    C = Conic([1, -1, 0, 0, 0, 0])  # (x - y)(x + y)
    assert not C.is_irreducible()
    with pytest.raises(ReducibleConicError):
        conic_parametrize(C, ProjPoint([1, 1, 0]))


def test_intersection_multiplicity_of_tangent_pair():
    # y z = x^2 and y z = x^2 + y^2 meet to order 4 at [0:0:1]
    C1 = Conic([1, 0, 0, 0, 0, -1])
    P = ProjPoint([0, 0, 1])
    assert intersection_multiplicity_on_conic(Conic([1, 1, 0, 0, 0, -1]).as_form(), C1, P) == 4
    with pytest.raises(TotalContactError):
        conic_residual_point(C1, Conic([1, 1, 0, 0, 0, -1]), P)
    # y z = x^2 and y z = x^2 + x y meet to order 3, leaving one more point
    C2 = Conic([1, 0, 0, 1, 0, -1])
    R = conic_residual_point(C1, C2, P)
    assert C1.contains(R) and C2.contains(R) and R != P


def test_contact_profile_totals_bezout():
    C = Conic([1, 1, 0, 0, 0, 1])  # x^2 + y^2 + yz through the flex [0:1:-1]
    P = ProjPoint([0, 1, -1])
    at_p, others, inf, nominal = conic_contact_profile(FERMAT, C, P)
    assert others == [] and nominal == 6
    assert at_p >= 1 and at_p + inf <= nominal


def test_conic_json_round_trip():
    mu = Q_EPS_MU.gen("mu")
    C = Conic([1, mu, 0, 2, 0, -mu], Q_EPS_MU)
    assert Conic.from_json(C.to_json()) == C
