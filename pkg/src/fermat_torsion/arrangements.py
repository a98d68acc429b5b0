"""Tangent lines and osculating conics at sextactic and type-9 points.

The conic finder follows the shift-and-eliminate recipe: in an affine chart
at P, shifted so P is the origin, a conic C meets F with multiplicity >= 3
at P only if C(0,0) = 0, the y-coefficient of C - (c_z/F_z) F vanishes, and
the y^2-coefficient vanishes after two further eliminations by zF and yF.
Three linear conditions per point give a 6x6 system for (a, ..., f).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .catalogs import PERMUTATIONS, PointCatalog, catalog, flex_catalog, three_torsion
from .elliptic import ec_add, to_weierstrass
from .exactfield import ExactMatrix, nullspace
from .exactfield.element import dot_vanishes, integer_vectors
from .exactfield.linalg import _echelon
from .parallel import parallel_map
from .polynomials import hom_eval
from .projective import (
    FERMAT,
    Conic,
    Line,
    ProjPoint,
    conic_contact_profile,
    conic_parametrize,
    conic_residual_point,
    intersection_multiplicity_on_conic,
    line_residual_point,
    tangent_line,
)

__all__ = [
    "TheoremViolation",
    "DegeneracyError",
    "CensusError",
    "TangentReport",
    "OsculatingConic",
    "ConicCatalog",
    "LocalReport",
    "ShadowCensus",
    "tangent_analysis",
    "admissible_pairs",
    "point_conditions",
    "condition_matrix",
    "find_conic",
    "conic_catalog",
    "per_point_intersections",
    "shadow_census",
    "nu_map",
    "bezout_profile",
    "coordinate_line_split",
    "permutation_closed",
]

CONIC_KINDS = ("sextactic", "type9")


class TheoremViolation(AssertionError):
    pass


class DegeneracyError(ArithmeticError):
    pass


class CensusError(AssertionError):
    def __init__(self, message, census=None):
        super().__init__(message)
        self.census = census


EXPECTED_STRATA = {"sextactic": {2: 486, 6: 36, 9: 18}, "type9": {2: 1944, 9: 72}}


def _check_kind(kind):
    if kind not in CONIC_KINDS:
        raise ValueError(f"kind must be one of {CONIC_KINDS}, got {kind!r}")


def _flexes_for(kind) -> PointCatalog:
    return flex_catalog("Q_eps_mu" if kind == "sextactic" else "Q_alpha_beta")


# -- tangent lines ----------------------------------------------------------


@dataclass
class TangentEntry:
    base: ProjPoint
    line: Line
    residual: ProjPoint
    classification: str


@dataclass
class TangentReport:
    kind: str
    entries: list
    orbits: list = field(default_factory=list)
    incidence: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "kind": self.kind,
            "entries": [
                {
                    "point": e.base.to_json(),
                    "line": e.line.to_json(),
                    "residual": e.residual.to_json(),
                    "residual_kind": e.classification,
                }
                for e in self.entries
            ],
            "residual_incidence": {str(k): v for k, v in sorted(self.incidence.items())},
        }
        if self.kind == "type9":
            out["orbits"] = [list(o) for o in self.orbits]
        return out


def _tangent_entry(P):
    L = tangent_line(P)
    return L, line_residual_point(L, P, 2)


def tangent_analysis(kind: str, threads: int = 1) -> TangentReport:
    """Residual points of the tangents at every point of the catalog."""
    _check_kind(kind)
    cat = catalog(kind)
    flexes = _flexes_for(kind)
    results = parallel_map(_tangent_entry, cat.points, threads)
    entries = []
    incidence: dict = {}
    for P, (L, R) in zip(cat.points, results):
        if R is None:
            raise TheoremViolation(f"tangent at {P} has no residual point")
        if R in flexes:
            cls = "flex"
            key = flexes.index(R)
        elif R in cat:
            cls = kind
            key = cat.index(R)
        else:
            raise TheoremViolation(f"residual {R} of the tangent at {P} is unclassified")
        incidence[key] = incidence.get(key, 0) + 1
        entries.append(TangentEntry(P, L, R, cls))
    report = TangentReport(kind, entries, incidence=incidence)
    if kind == "sextactic":
        if any(e.classification != "flex" for e in entries):
            raise TheoremViolation("a sextactic tangent misses the flexes")
        if sorted(incidence.values()) != [3] * 9:
            raise TheoremViolation(f"flex incidences {incidence} are not all 3")
    else:
        if any(e.classification != "type9" for e in entries):
            raise TheoremViolation("a type-9 tangent leaves the type-9 set")
        nu = [cat.index(e.residual) for e in entries]
        if any(nu[nu[nu[i]]] != i for i in range(len(nu))) or any(nu[i] == i for i in range(len(nu))):
            raise TheoremViolation("nu^3 is not the identity without fixed points")
        seen = set()
        orbits = []
        for i in range(len(nu)):
            if i not in seen:
                orb = (i, nu[i], nu[nu[i]])
                seen.update(orb)
                orbits.append(orb)
        report.orbits = orbits
    return report


def nu_map(threads: int = 1) -> list[int]:
    """nu as a list of catalog indices."""
    rep = tangent_analysis("type9", threads)
    cat = catalog("type9")
    return [cat.index(e.residual) for e in rep.entries]


# -- the group-law prediction -----------------------------------------------


@lru_cache(maxsize=None)
def _weierstrass_images(kind):
    return tuple(to_weierstrass(P) for P in catalog(kind).points)


def admissible_pairs(kind: str) -> list[tuple[int, int]]:
    """Index pairs (i < j) with P_i + P_j in E[3]."""
    _check_kind(kind)
    cat = catalog(kind)
    imgs = _weierstrass_images(kind)
    e3 = set(three_torsion(cat.tower))
    return [
        (i, j)
        for i, j in combinations(range(len(imgs)), 2)
        if ec_add(imgs[i], imgs[j]) in e3
    ]


# -- conditions and the conic finder ----------------------------------------

_CONIC_EXPS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))


def _shift_monomial(exps, chart, y0, z0, one):
    """Expand a monomial at x_h = 1, x_yv = Y + y0, x_zv = Z + z0.

    Returns {(a, b): coefficient} in the shifted variables Y, Z.
    """
    h, yv, zv = chart
    out = {(0, 0): one}
    for var, power in enumerate(exps):
        for _ in range(power):
            if var == h:
                continue
            shift = y0 if var == yv else z0
            step = (1, 0) if var == yv else (0, 1)
            new: dict = {}
            for (a, b), c in out.items():
                k1 = (a + step[0], b + step[1])
                new[k1] = new[k1] + c if k1 in new else c
                k0 = (a, b)
                v = c * shift
                new[k0] = new[k0] + v if k0 in new else v
            out = new
    return out


def _chart(P: ProjPoint):
    """(dehomogenizing index, y-role index, z-role index)."""
    coords = P.coords
    h = next(i for i, c in enumerate(coords) if c)
    u, v = [i for i in range(3) if i != h]
    # eliminate along the variable where F has a nonzero linear term
    if coords[v]:
        return h, u, v
    if coords[u]:
        return h, v, u
    raise DegeneracyError(f"F has no linear term at {P}")


@lru_cache(maxsize=4096)
def point_conditions(P: ProjPoint):
    """Three linear forms in (a, ..., f) that vanish iff I_P(F, C) >= 3."""
    tower = P.tower
    one, zero = tower.one(), tower.zero()
    chart = _chart(P)
    h, yv, zv = chart
    y0, z0 = P.coords[yv], P.coords[zv]
    # shifted F: coefficients of the affine Fermat cubic at P
    F = {}
    for exps in ((3, 0, 0), (0, 3, 0), (0, 0, 3)):
        for k, c in _shift_monomial(exps, chart, y0, z0, one).items():
            F[k] = F[k] + c if k in F else c
    if F.get((0, 0), zero):
        raise ValueError(f"{P} is not on F")
    fz = F[(0, 1)]
    fy = F.get((1, 0), zero)
    inv_fz = fz.inverse()
    # shifted conic: each coefficient is a linear form (one slot per unknown)
    C: dict = {}
    for slot, exps in enumerate(_CONIC_EXPS):
        for k, c in _shift_monomial(exps, chart, y0, z0, one).items():
            C.setdefault(k, [zero] * 6)[slot] = c

    def coef(poly, k):
        return poly.get(k, [zero] * 6)

    def fcoef(k):
        return F.get(k, zero)

    def scaled(v, s):
        return [a * s for a in v]

    cond1 = coef(C, (0, 0))
    lam1 = scaled(coef(C, (0, 1)), inv_fz)  # coef_C(z) / coef_F(z)
    C1 = {}
    for k in set(C) | set(F):
        C1[k] = [a - l * fcoef(k) for a, l in zip(coef(C, k), lam1)]
    cond2 = C1[(1, 0)]
    # C2 = C1 - (coef_C1(z^2) / F_z) z F
    lam2 = scaled(coef(C1, (0, 2)), inv_fz)
    C2 = {}
    for k in ((2, 0), (1, 1), (0, 2)):
        zf = fcoef((k[0], k[1] - 1)) if k[1] >= 1 else zero
        C2[k] = [a - l * zf for a, l in zip(coef(C1, k), lam2)]
    # C3 = C2 - (coef_C2(yz) / F_z) y F
    lam3 = scaled(C2[(1, 1)], inv_fz)
    cond3 = [a - l * fy for a, l in zip(C2[(2, 0)], lam3)]
    return (tuple(cond1), tuple(cond2), tuple(cond3))


@lru_cache(maxsize=4096)
def _reduced_conditions(P: ProjPoint):
    """Row-reduced conditions of one point with their pivot columns."""
    rows = [list(r) for r in point_conditions(P)]
    pivots = _echelon(rows, 6)
    return rows[:len(pivots)], tuple(pivots)


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _pair_is_regular(P1: ProjPoint, P2: ProjPoint) -> bool:
    """True when the 6x6 system is certainly nonsingular.

    Eliminates P2's conditions against P1's reduced rows and tests the 3x3
    block left in P1's free columns; no inversions are needed.
    """
    rows1, piv = _reduced_conditions(P1)
    if len(piv) < 3:
        return False
    free = [c for c in range(6) if c not in piv]
    block = []
    for r in point_conditions(P2):
        r = list(r)
        for k, c in enumerate(piv):
            f = r[c]
            if f:
                r = [a - f * b if b else a for a, b in zip(r, rows1[k])]
        block.append([r[c] for c in free])
    return bool(_det3(block))


def condition_matrix(P1: ProjPoint, P2: ProjPoint) -> ExactMatrix:
    rows = list(point_conditions(P1)) + list(point_conditions(P2))
    return ExactMatrix.from_rows(rows, P1.tower)


@dataclass(frozen=True)
class OsculatingConic:
    conic: Conic
    base_points: tuple  # sorted pair of ProjPoint
    kind: str

    def to_json(self):
        return {
            "conic": self.conic.to_json(),
            "base_points": [P.to_json() for P in self.base_points],
            "kind": self.kind,
        }


def find_conic(P1: ProjPoint, P2: ProjPoint, kind: str | None = None):
    """The conic meeting F with multiplicity 3 at both points, or None."""
    if P1 == P2:
        raise ValueError("base points must differ")
    for P in (P1, P2):
        if hom_eval(FERMAT, P.coords):
            raise ValueError(f"{P} is not on F")
        if any(not c for c in P.coords):
            raise ValueError(f"{P} is a flex")
    if _pair_is_regular(P1, P2):
        return None
    kernel = nullspace(condition_matrix(P1, P2))
    if not kernel:
        return None
    if len(kernel) > 1:
        raise DegeneracyError(f"{len(kernel)}-dimensional family of conics through {P1}, {P2}")
    C = Conic(kernel[0], P1.tower)
    if not C.is_irreducible():
        raise TheoremViolation(f"conic through {P1}, {P2} is reducible")
    for P in (P1, P2):
        m = intersection_multiplicity_on_conic(FERMAT, C, P)
        if m != 3:
            raise TheoremViolation(f"contact order {m} at {P}, expected 3")
    pair = tuple(sorted((P1, P2), key=lambda P: P.sort_key()))
    return OsculatingConic(C, pair, kind or "")


def _find_conic_task(args):
    P1, P2, kind = args
    return find_conic(P1, P2, kind)


@dataclass
class ConicCatalog:
    kind: str
    conics: list  # OsculatingConic, sorted by canonical coefficients
    base_pairs: list  # (i, j) catalog indices per conic
    per_point: dict  # catalog index -> list of conic indices

    def to_json(self):
        return {
            "kind": self.kind,
            "total": len(self.conics),
            "conics": [
                {"coeffs": oc.conic.to_json(), "base_pair": list(pair)}
                for oc, pair in zip(self.conics, self.base_pairs)
            ],
            "per_point": {str(k): v for k, v in sorted(self.per_point.items())},
        }


_CONIC_CATALOGS: dict = {}


def conic_catalog(kind: str, threads: int = 1, fresh: bool = False) -> ConicCatalog:
    """All osculating conics through two catalog points of the given kind.

    Results are memoized per kind; ``fresh`` recomputes without touching the memo.
    """
    _check_kind(kind)
    if kind in _CONIC_CATALOGS and not fresh:
        return _CONIC_CATALOGS[kind]
    cat = catalog(kind)
    pairs = list(combinations(range(len(cat)), 2))
    tasks = [(cat.points[i], cat.points[j], kind) for i, j in pairs]
    found = parallel_map(_find_conic_task, tasks, threads)
    hits = {}
    for (i, j), oc in zip(pairs, found):
        if oc is None:
            continue
        if oc.conic in hits:
            raise CensusError(f"conic shared by pairs {hits[oc.conic][0]} and {(i, j)}")
        hits[oc.conic] = ((i, j), oc)
    predicted = set(admissible_pairs(kind))
    achieved = {pair for pair, _ in hits.values()}
    if achieved != predicted:
        raise CensusError(
            f"conic pairs differ from the group-law prediction: "
            f"{len(achieved - predicted)} extra, {len(predicted - achieved)} missing"
        )
    ordered = sorted(hits.values(), key=lambda item: item[1].conic.sort_key())
    conics = [oc for _, oc in ordered]
    base_pairs = [pair for pair, _ in ordered]
    per_point: dict = {i: [] for i in range(len(cat))}
    for idx, (i, j) in enumerate(base_pairs):
        per_point[i].append(idx)
        per_point[j].append(idx)
    result = ConicCatalog(kind, conics, base_pairs, per_point)
    if not fresh:
        _CONIC_CATALOGS[kind] = result
    return result


# -- intersections of conics --------------------------------------------------


@dataclass
class LocalReport:
    kind: str
    base: ProjPoint
    conic_indices: list
    points: list  # (ProjPoint, number of the base point's conics through it)

    @property
    def strata(self):
        out: dict = {}
        for _, k in self.points:
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def pair_count(self) -> int:
        return sum(k * (k - 1) // 2 for _, k in self.points)


def _local_points(args):
    """Residual points of all pairs of conics through one base point."""
    P, conics = args
    found = {}
    for (a, C1), (b, C2) in combinations(conics, 2):
        R = conic_residual_point(C1, C2, P)
        found.setdefault(R, set()).update((a, b))
    return [(R, sorted(idx)) for R, idx in found.items()]


def per_point_intersections(kind: str, P: ProjPoint, threads: int = 1) -> LocalReport:
    _check_kind(kind)
    cat = catalog(kind)
    cc = conic_catalog(kind, threads)
    i = cat.index(P)
    idx = cc.per_point[i]
    conics = [(k, cc.conics[k].conic) for k in idx]
    raw = _local_points((P, conics))
    return _classify_local(kind, P, idx, conics, raw)


def _classify_local(kind, P, idx, conics, raw):
    points = []
    for R, _ in raw:
        if not hom_eval(FERMAT, R.coords):
            raise TheoremViolation(f"residual point {R} lies on F")
        count = sum(1 for _, C in conics if C.contains(R))
        points.append((R, count))
    points.sort(key=lambda item: item[0].sort_key())
    return LocalReport(kind, P, list(idx), points)


@dataclass
class ShadowCensus:
    kind: str
    points: list  # (ProjPoint, count, [conic indices])
    local_strata: dict = field(default_factory=dict)  # catalog index -> strata
    strict_counts: dict = field(default_factory=dict)

    @property
    def total(self):
        return len(self.points)

    @property
    def strata(self):
        out: dict = {}
        for _, k, _ in self.points:
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def stratum(self, k):
        return [P for P, c, _ in self.points if c == k]

    def special(self) -> dict:
        """Points through more than two conics, by count, in canonical order."""
        return {k: self.stratum(k) for k in self.strata if k > 2}

    def top_line_split(self) -> list[int]:
        top = max(self.strata)
        return coordinate_line_split(self.stratum(top))

    def to_json(self):
        return {
            "kind": self.kind,
            "total": self.total,
            "strata": {str(k): v for k, v in self.strata.items()},
            "strict_strata": {str(k): v for k, v in self.strict_counts.items()},
            "top_line_split": self.top_line_split(),
            "points": [
                {"point": P.to_json(), "count": k, "conics": list(ids)}
                for P, k, ids in self.points
            ],
        }


def _incident(args):
    """Indices of conics through each point (exact substitution).

    Both sides are cleared of denominators once, so each test is a single
    integer kernel call.
    """
    pts, conics = args
    if not pts:
        return []
    tower = pts[0].tower
    rows = [integer_vectors(C.coeffs, tower)[0] for C in conics]
    out = []
    for R in pts:
        x, y, z = R.coords
        monos = integer_vectors([x * x, y * y, z * z, x * y, x * z, y * z], tower)[0]
        out.append([k for k, row in enumerate(rows) if dot_vanishes(tower, row, monos)])
    return out


_CENSUSES: dict = {}


def shadow_census(kind: str, threads: int = 1, check: bool = True,
                  fresh: bool = False) -> ShadowCensus:
    """Every residual point of every local pencil, with its global conic count."""
    _check_kind(kind)
    census = _CENSUSES.get(kind) if not fresh else None
    if census is None:
        census = _build_census(kind, threads)
        if not fresh:
            _CENSUSES[kind] = census
    if check and census.strata != EXPECTED_STRATA[kind]:
        raise CensusError(f"strata {census.strata} differ from {EXPECTED_STRATA[kind]}", census)
    return census


def _build_census(kind, threads):
    cat = catalog(kind)
    cc = conic_catalog(kind, threads)
    tasks = []
    for i, P in enumerate(cat.points):
        idx = cc.per_point[i]
        tasks.append((P, [(k, cc.conics[k].conic) for k in idx]))
    local = parallel_map(_local_points, tasks, threads)
    union: dict = {}
    local_strata = {}
    for i, ((P, conics), raw) in enumerate(zip(tasks, local)):
        rep = _classify_local(kind, P, cc.per_point[i], conics, raw)
        local_strata[i] = rep.strata
        for R, idx in raw:
            union.setdefault(R, set()).update(idx)
    pts = sorted(union, key=lambda R: R.sort_key())
    all_conics = [oc.conic for oc in cc.conics]
    chunks = [pts[s:s + 64] for s in range(0, len(pts), 64)]
    incid = [row for chunk in parallel_map(_incident, [(c, all_conics) for c in chunks], threads)
             for row in chunk]
    points = []
    strict = {}
    for R, ids in zip(pts, incid):
        if not hom_eval(FERMAT, R.coords):
            raise TheoremViolation(f"census point {R} lies on F")
        if not set(union[R]) <= set(ids):
            raise CensusError(f"{R} misses a conic it was computed from")
        points.append((R, len(ids), ids))
        strict[len(union[R])] = strict.get(len(union[R]), 0) + 1
    return ShadowCensus(kind, points, local_strata, dict(sorted(strict.items())))


def permutation_closed(points) -> bool:
    s = set(points)
    return all(P.permute(p) in s for P in s for p in PERMUTATIONS)


def coordinate_line_split(points) -> list[int]:
    """How many points lie on x = 0, y = 0, z = 0."""
    return [sum(1 for P in points if not P.coords[v]) for v in range(3)]


def bezout_profile(oc: OsculatingConic):
    """(mult at first base, mult at second base, mult at infinity, nominal degree)."""
    P1, P2 = oc.base_points
    at1, (at2,), inf, nominal = conic_contact_profile(FERMAT, oc.conic, P1, [P2])
    return at1, at2, inf, nominal
