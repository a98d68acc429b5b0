import pytest

from fermat_torsion.exactfield import Q, Q_ALPHA_BETA, Q_EPS_MU
from fermat_torsion.polynomials import (
    HomForm,
    MultiplicityError,
    UniPoly,
    binary_form,
    deflate,
    fermat_cubic,
    hessian_form,
    hom_eval,
    root_multiplicity,
    second_hessian_form,
    upoly_eval,
)


def test_unipoly_arithmetic():
    p = UniPoly([1, 2, 3])
    q = UniPoly([0, 1])
    assert (p * q).coeffs == UniPoly([0, 1, 2, 3]).coeffs
    assert (p - p).is_zero() and (p - p).degree == -1
    assert p.degree == 2 and p.leading() == 3
    assert p.derivative() == UniPoly([2, 6])
    assert (q + 1) ** 3 == UniPoly([1, 3, 3, 1])


def test_trailing_zeros_trimmed():
    assert UniPoly([1, 0, 0]).degree == 0


def test_from_roots_and_eval():
    mu = Q_EPS_MU.gen("mu")
    p = UniPoly.from_roots([mu, mu, 1], Q_EPS_MU)
    assert not p(mu) and not upoly_eval(p, Q_EPS_MU.one())
    assert p(Q_EPS_MU(2)) == (2 - mu) ** 2


def test_root_multiplicity_and_deflate():
    b = Q_ALPHA_BETA.gen("beta")
    p = UniPoly.from_roots([b, b, b, b * b], Q_ALPHA_BETA)
    assert root_multiplicity(p, b) == 3
    assert root_multiplicity(p, b * b) == 1
    assert root_multiplicity(p, Q_ALPHA_BETA.one()) == 0
    rest = deflate(p, b, 3)
    assert rest == UniPoly.from_roots([b * b], Q_ALPHA_BETA)
    with pytest.raises(MultiplicityError):
        deflate(p, b, 4)
    with pytest.raises(MultiplicityError):
        root_multiplicity(UniPoly([], Q), 0)


def test_homform_partials_and_euler():
    F = fermat_cubic()
    g = F.gradient()
    assert g[0] == HomForm(2, {(2, 0, 0): 3})
    P = [Q(2), Q(-1), Q(5)]
    # Euler: sum x_i dF/dx_i = 3 F
    euler = sum((hom_eval(gi, P) * xi for gi, xi in zip(g, P)), Q.zero())
    assert euler == hom_eval(F, P) * 3


def test_homform_multiplication_and_permutation():
    F = fermat_cubic()
    assert F.permute((2, 0, 1)) == F
    H2 = second_hessian_form()
    assert H2.degree == 9
    assert hom_eval(H2, [Q(1), Q(1), Q(0)]) == 0
    xyz = hessian_form()
    assert (xyz * xyz).terms == {(2, 2, 2): Q.one()}


def test_substitute_matches_pointwise_eval():
    F = fermat_cubic()
    x, y, z = UniPoly([1, 1]), UniPoly([0, 2]), UniPoly([3, 0, 1])
    restricted = F.substitute(x, y, z)
    for t in range(-3, 4):
        assert restricted(Q(t)) == hom_eval(F, [x(Q(t)), y(Q(t)), z(Q(t))])


def test_binary_form_embedding():
    f = binary_form({(2, 0): 1, (0, 2): -1}, variables=(0, 2))
    assert hom_eval(f, [Q(3), Q(100), Q(2)]) == 5


def test_homform_json_round_trip():
    mu = Q_EPS_MU.gen("mu")
    f = HomForm(2, {(2, 0, 0): mu, (0, 1, 1): 3}, Q_EPS_MU)
    assert HomForm.from_json(f.to_json()) == f
