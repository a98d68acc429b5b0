"""Flex, sextactic and type-9 points of the Fermat cubic.

Sextactic points are E[6] minus E[3]; type-9 points are E[9] minus E[3].
Both are produced from the group law and mapped back to the plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .elliptic import (
    INFINITY,
    ECPoint,
    IndependenceError,
    division_poly,
    ec_add,
    from_weierstrass,
    to_weierstrass,
    torsion_subgroup,
)
from .exactfield import Q_ALPHA_BETA, Q_EPS_MU, get_tower
from .polynomials import HomForm, UniPoly, binary_form, hessian_form, hom_eval, second_hessian_form
from .projective import FERMAT, ProjPoint
from .reference_points import Q_FACTORS, Q_FORM, flex_points, type9_seeds

__all__ = [
    "PointCatalog",
    "CatalogError",
    "VerificationFailure",
    "flex_catalog",
    "sextactic_catalog",
    "type9_catalog",
    "catalog",
    "three_torsion",
    "two_torsion",
    "verify_Q",
    "KINDS",
]

KINDS = ("flex", "sextactic", "type9")
EXPECTED_SIZE = {"flex": 9, "sextactic": 27, "type9": 72}
PERMUTATIONS = list(permutations(range(3)))


class CatalogError(RuntimeError):
    pass


class VerificationFailure(AssertionError):
    def __init__(self, check, detail=""):
        super().__init__(f"{check} failed" + (f": {detail}" if detail else ""))
        self.check = check


@dataclass(frozen=True)
class PointCatalog:
    kind: str
    points: tuple
    field: str
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown catalog kind {self.kind!r}")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, P):
        return P in self._index

    @property
    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {P: i for i, P in enumerate(self.points)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def index(self, P) -> int:
        return self._index[P]

    @property
    def tower(self):
        return get_tower(self.field)

    def is_permutation_closed(self) -> bool:
        return all(P.permute(p) in self for P in self.points for p in PERMUTATIONS)

    def to_json(self):
        return {
            "kind": self.kind,
            "field": self.field,
            "points": [P.to_json() for P in self.points],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, obj) -> "PointCatalog":
        pts = tuple(ProjPoint.from_json(p).in_tower(get_tower(obj["field"])) for p in obj["points"])
        return cls(obj["kind"], pts, obj["field"], obj.get("provenance", {}))


def _sorted(points):
    return tuple(sorted(points, key=lambda P: P.sort_key()))


def three_torsion(tower) -> list[ECPoint]:
    """E[3] as images of the nine flexes."""
    return [to_weierstrass(P) for P in flex_points(tower)]


def two_torsion(tower=Q_EPS_MU) -> list[ECPoint]:
    """E[2]: the identity and (6 mu eps^k, 0)."""
    e, mu = tower.gen("eps"), tower.gen("mu")
    zero = tower.zero()
    return [INFINITY] + [ECPoint(mu * 6 * e ** k, zero) for k in range(3)]


@lru_cache(maxsize=None)
def flex_catalog(tower_id: str = "Q_eps_mu") -> PointCatalog:
    tower = get_tower(tower_id)
    pts = flex_points(tower)
    H = hessian_form()
    for P in pts:
        if hom_eval(FERMAT, P.coords) or hom_eval(H, P.coords):
            raise CatalogError(f"flex {P} fails F = H = 0")
    return PointCatalog(
        "flex", _sorted(pts), tower_id,
        {"generators": ["listed coordinates"], "checks": ["F = 0", "xyz = 0"]},
    )


@lru_cache(maxsize=None)
def sextactic_catalog() -> PointCatalog:
    tower = Q_EPS_MU
    e3 = three_torsion(tower)
    e2 = two_torsion(tower)
    e6 = {ec_add(t2, t3) for t2 in e2 for t3 in e3}
    if len(e6) != 36:
        raise CatalogError(f"E[6] has {len(e6)} points, expected 36")
    sext = e6 - set(e3)
    if len(sext) != 27:
        raise CatalogError(f"E[6] minus E[3] has {len(sext)} points, expected 27")
    H2 = second_hessian_form()
    pts = []
    for S in sext:
        P = from_weierstrass(S, tower)
        if hom_eval(FERMAT, P.coords) or hom_eval(H2, P.coords):
            raise CatalogError(f"{P} fails F = H2 = 0")
        pts.append(P)
    return PointCatalog(
        "sextactic", _sorted(pts), tower.id,
        {"generators": ["E[2] + E[3]"], "checks": ["F = 0", "H2 = 0"]},
    )


def _type9_generators():
    seeds = type9_seeds()
    first = to_weierstrass(seeds["T1"])
    order = ["T4"] + [f"T{j}" for j in range(5, 13)]
    last_error = None
    for name in order:
        try:
            pts = torsion_subgroup(first, to_weierstrass(seeds[name]), 9)
            return ("T1", name), pts
        except IndependenceError as exc:
            last_error = exc
    raise last_error


@lru_cache(maxsize=None)
def type9_catalog() -> PointCatalog:
    tower = Q_ALPHA_BETA
    gens, e9 = _type9_generators()
    e3 = set(three_torsion(tower))
    H = hessian_form()
    psi9 = division_poly(9).poly
    pts = []
    for R in e9:
        if R in e3:
            continue
        if psi9(R.x):
            raise CatalogError(f"psi_9 does not vanish at {R}")
        P = from_weierstrass(R, tower)
        if hom_eval(FERMAT, P.coords):
            raise CatalogError(f"{P} is not on F")
        if not hom_eval(H, P.coords):
            raise CatalogError(f"{P} lies on the Hessian")
        pts.append(P)
    if len(pts) != 72:
        raise CatalogError(f"found {len(pts)} type-9 points, expected 72")
    return PointCatalog(
        "type9", _sorted(pts), tower.id,
        {"generators": list(gens), "checks": ["F = 0", "xyz != 0", "psi_9(x~) = 0"]},
    )


def catalog(kind: str) -> PointCatalog:
    if kind == "flex":
        return flex_catalog()
    if kind == "sextactic":
        return sextactic_catalog()
    if kind == "type9":
        return type9_catalog()
    raise ValueError(f"unknown catalog kind {kind!r}")


# -- the degree-24 form ------------------------------------------------------


def q_form(variables=(0, 1)) -> HomForm:
    return binary_form(Q_FORM, variables)


def _binary_poly(coeffs) -> UniPoly:
    """Dehomogenize a binary form at y = 1 (index = power of x)."""
    deg = max(i for i, _ in coeffs)
    out = [0] * (deg + 1)
    for (i, _j), c in coeffs.items():
        out[i] = c
    return UniPoly(out)


def verify_Q(cat: PointCatalog | None = None) -> dict:
    """Check that Q cuts out the type-9 points on F and splits into 24 lines.

    Returns a report {check name: {"ok": bool, ...witness}}; raises
    VerificationFailure when any check fails.
    """
    cat = cat or type9_catalog()
    report = {}

    forms = {"Q(x,y)": q_form((0, 1)), "Q(x,z)": q_form((0, 2)), "Q(y,z)": q_form((1, 2))}
    bad = {name: [str(P) for P in cat if hom_eval(f, P.coords)] for name, f in forms.items()}
    report["vanishing"] = {
        "ok": not any(bad.values()),
        "points": len(cat),
        "failures": {k: v for k, v in bad.items() if v},
    }

    prod_form = binary_form(Q_FACTORS[0]) * binary_form(Q_FACTORS[1]) * binary_form(Q_FACTORS[2])
    report["factorization"] = {"ok": prod_form == forms["Q(x,y)"]}

    # group the points by x/y
    tower = cat.tower
    groups: dict = {}
    for P in cat:
        x, y, _ = P.coords
        if not y:
            raise VerificationFailure("ratios", f"{P} has y = 0")
        groups.setdefault(x / y, []).append(P)
    sizes = sorted({len(v) for v in groups.values()})
    # prod (x - r y) dehomogenized at y = 1 is prod (t - r)
    split = UniPoly.from_roots(sorted(groups, key=lambda r: r.sort_key()), tower)
    q_poly = _binary_poly(Q_FORM).change_tower(tower)
    scale = q_poly.leading() / split.leading()
    report["splitting"] = {
        "ok": len(groups) == 24 and sizes == [3] and split * scale == q_poly,
        "distinct_ratios": len(groups),
        "points_per_ratio": sizes,
    }
    report["degree_count"] = {"ok": 3 * 24 == len(cat) == 72, "bezout": 3 * 24}

    failed = [k for k, v in report.items() if not v["ok"]]
    if failed:
        raise VerificationFailure(f"Q {failed[0]}", str(report[failed[0]]))
    return report
