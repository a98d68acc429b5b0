import pickle

import pytest

from fermat_torsion.arrangements import (
    CensusError,
    admissible_pairs,
    bezout_profile,
    condition_matrix,
    conic_catalog,
    coordinate_line_split,
    find_conic,
    nu_map,
    per_point_intersections,
    permutation_closed,
    point_conditions,
    shadow_census,
    tangent_analysis,
)
from fermat_torsion.catalogs import catalog, three_torsion
from fermat_torsion.elliptic import ec_add, to_weierstrass
from fermat_torsion.exactfield import ExactMatrix, nullspace
from fermat_torsion.exactfield.linalg import rank
from fermat_torsion.polynomials import hom_eval
from fermat_torsion.projective import FERMAT, ProjPoint, intersection_multiplicity_on_conic
from fermat_torsion.reference_points import sextactic_b_points


def test_sextactic_tangents_hit_each_flex_three_times():
    rep = tangent_analysis("sextactic")
    assert {e.classification for e in rep.entries} == {"flex"}
    assert sorted(rep.incidence.values()) == [3] * 9


def test_nu_is_a_fixed_point_free_permutation_of_order_three():
    nu = nu_map()
    assert sorted(nu) == list(range(72))
    assert all(nu[nu[nu[i]]] == i and nu[i] != i for i in range(72))
    orbits = tangent_analysis("type9").orbits
    assert len(orbits) == 24 and sorted(i for o in orbits for i in o) == list(range(72))


@pytest.mark.parametrize("kind,total,per", [("sextactic", 108, 8), ("type9", 324, 9)])
def test_admissible_pairs(kind, total, per):
    pairs = admissible_pairs(kind)
    assert len(pairs) == total
    counts = {}
    for i, j in pairs:
        counts[i] = counts.get(i, 0) + 1
        counts[j] = counts.get(j, 0) + 1
    assert set(counts.values()) == {per}


def test_sextactic_missing_partner_is_tangent_related():
    # S + S' in E[3] with S' = S would need 2S in E[3]; for sextactic points 2S is 3-torsion
    cat = catalog("sextactic")
    e3 = set(three_torsion(cat.tower))
    for P in cat:
        E = to_weierstrass(P)
        assert ec_add(E, E) in e3


def test_point_conditions_have_rank_three():
    for kind in ("sextactic", "type9"):
        for P in catalog(kind).points[:5]:
            rows = point_conditions(P)
            assert rank(ExactMatrix.from_rows(list(rows), P.tower)) == 3


def test_find_conic_on_admissible_and_non_admissible_pairs():
    cat = catalog("sextactic")
    pairs = set(admissible_pairs("sextactic"))
    i, j = sorted(pairs)[0]
    oc = find_conic(cat.points[i], cat.points[j], "sextactic")
    assert oc is not None and oc.conic.is_irreducible()
    for P in oc.base_points:
        assert intersection_multiplicity_on_conic(FERMAT, oc.conic, P) == 3
    bad = next((a, b) for a in range(27) for b in range(a + 1, 27) if (a, b) not in pairs)
    assert find_conic(cat.points[bad[0]], cat.points[bad[1]]) is None
    assert not nullspace(condition_matrix(cat.points[bad[0]], cat.points[bad[1]]))


def test_find_conic_rejects_bad_input():
    cat = catalog("sextactic")
    with pytest.raises(ValueError):
        find_conic(cat.points[0], cat.points[0])
    with pytest.raises(ValueError):
        find_conic(cat.points[0], ProjPoint([1, -1, 0], cat.tower))


@pytest.mark.parametrize("kind,total,per", [("sextactic", 108, 8), ("type9", 324, 9)])
def test_conic_catalog(kind, total, per):
    cc = conic_catalog(kind)
    assert len(cc.conics) == total
    assert len(set(oc.conic for oc in cc.conics)) == total
    assert {len(v) for v in cc.per_point.values()} == {per}
    assert sorted(cc.base_pairs) == admissible_pairs(kind)


def test_bezout_profiles_of_sextactic_conics():
    cc = conic_catalog("sextactic")
    assert {bezout_profile(oc) for oc in cc.conics} == {(3, 3, 0, 6)}


@pytest.mark.parametrize("kind,size,strata", [
    ("sextactic", 24, {2: 22, 3: 2}),
    ("type9", 30, {2: 27, 3: 3}),
])
def test_per_point_intersections(kind, size, strata):
    P = catalog(kind).points[0]
    rep = per_point_intersections(kind, P)
    assert len(rep.points) == size
    assert rep.strata == strata
    per = len(rep.conic_indices)
    assert rep.pair_count() == per * (per - 1) // 2
    assert all(hom_eval(FERMAT, R.coords) for R, _ in rep.points)


def test_sextactic_census():
    cs = shadow_census("sextactic")
    assert cs.total == 540
    assert cs.strata == {2: 486, 6: 36, 9: 18}
    assert cs.strict_counts == cs.strata
    assert coordinate_line_split(cs.stratum(9)) == [6, 6, 6]
    assert all(P in cs.stratum(9) for P in sextactic_b_points().values())
    assert permutation_closed([P for P, _, _ in cs.points])
    assert set(cs.local_strata[0]) == {2, 3}


def test_census_sanity_exact_incidence():
    cs = shadow_census("sextactic")
    conics = [oc.conic for oc in conic_catalog("sextactic").conics]
    for P, k, ids in cs.points[::37]:
        hits = [n for n, C in enumerate(conics) if C.contains(P)]
        assert hits == ids and len(hits) == k


def test_type9_census():
    cs = shadow_census("type9")
    assert cs.total == 2016
    assert cs.strata == {2: 1944, 9: 72}
    assert coordinate_line_split(cs.stratum(9)) == [24, 24, 24]
    assert all(not P.coords[0] or not P.coords[1] or not P.coords[2] for P in cs.stratum(9))


def test_census_json_shape():
    js = shadow_census("sextactic").to_json()
    assert js["total"] == 540 and js["strata"] == {"2": 486, "6": 36, "9": 18}
    assert set(js["points"][0]) == {"point", "count", "conics"}
    assert ProjPoint.from_json(js["points"][0]["point"]) == shadow_census("sextactic").points[0][0]


def test_census_error_carries_result():
    err = CensusError("boom", census="x")
    assert err.census == "x"


def test_results_pickle():
    oc = conic_catalog("sextactic").conics[0]
    assert pickle.loads(pickle.dumps(oc.conic)) == oc.conic


def test_parallel_matches_serial():
    a = conic_catalog("sextactic", threads=1, fresh=True).to_json()
    b = conic_catalog("sextactic", threads=2, fresh=True).to_json()
    assert a == b
