"""Points, lines and conics in the projective plane over a tower field.

Intersection multiplicities with a smooth line or conic are computed as
orders of vanishing along a rational parametrization of that curve.
"""

from __future__ import annotations

from fractions import Fraction

from .exactfield import FieldElement, Q, field_dot
from .exactfield.tower import Tower, get_tower
from .polynomials import (
    HomForm,
    MultiplicityError,
    UniPoly,
    deflate,
    fermat_cubic,
    hom_eval,
    root_multiplicity,
)

__all__ = [
    "ContractViolation",
    "ReducibleConicError",
    "TotalContactError",
    "InfiniteMultiplicityError",
    "ProjPoint",
    "Line",
    "Conic",
    "ConicParametrization",
    "tangent_line",
    "line_residual_point",
    "line_restriction",
    "conic_parametrize",
    "intersection_multiplicity_on_conic",
    "conic_residual_point",
    "FERMAT",
]

FERMAT = fermat_cubic()


class ContractViolation(ValueError):
    """An operation was called outside its precondition."""


class ReducibleConicError(ValueError):
    pass


class TotalContactError(ArithmeticError):
    """Two curves meet only at the base point; there is no residual point."""


class InfiniteMultiplicityError(ArithmeticError):
    """The form vanishes identically along the curve."""


def _tower_of(values, default=Q):
    for v in values:
        if isinstance(v, FieldElement) and v.tower is not Q:
            return v.tower
    return default


def _canonical(values, tower):
    vals = [FieldElement.coerce(v, tower) for v in values]
    for i, v in enumerate(vals):
        if v:
            if v == 1:
                return tuple(vals)
            inv = v.inverse()
            return tuple(w * inv if j > i and w else (tower.one() if j == i else w)
                         for j, w in enumerate(vals))
    raise ValueError("all coordinates are zero")


class _Normalized:
    """Shared behaviour of tuples normalized so the first nonzero entry is 1."""

    __slots__ = ("tower", "_v", "_hash")
    _size = 0

    def __init__(self, values, tower: Tower | None = None, *, canonical: bool = False):
        values = list(values)
        if len(values) != self._size:
            raise ValueError(f"expected {self._size} entries, got {len(values)}")
        tower = tower or _tower_of(values)
        self.tower = tower
        if canonical:
            self._v = tuple(FieldElement.coerce(v, tower) for v in values)
        else:
            self._v = _canonical(values, tower)
        self._hash = None

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._v == other._v

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._v))
        return self._hash

    def sort_key(self):
        return tuple(c for v in self._v for c in v.coeffs)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def in_tower(self, tower: Tower):
        return type(self)([FieldElement.coerce(v, tower) for v in self._v], tower, canonical=True)

    def __reduce__(self):
        return (_rebuild, (type(self), self.tower.id, self._v))


def _rebuild(cls, tower_id, values):
    return cls(values, get_tower(tower_id), canonical=True)


class ProjPoint(_Normalized):
    _size = 3

    @property
    def coords(self):
        return self._v

    def permute(self, perm) -> "ProjPoint":
        """Point whose coordinate ``pos`` is this point's coordinate ``perm[pos]``."""
        return ProjPoint([self._v[p] for p in perm], self.tower)

    def to_json(self):
        return {"coords": [c.to_json() for c in self._v]}

    @classmethod
    def from_json(cls, obj) -> "ProjPoint":
        coords = [FieldElement.from_json(c) for c in obj["coords"]]
        return cls(coords, _tower_of(coords))

    def __repr__(self):
        return "[" + " : ".join(str(c) for c in self._v) + "]"


class Line(_Normalized):
    _size = 3

    @property
    def coeffs(self):
        return self._v

    def value(self, P) -> FieldElement:
        return field_dot(self._v, _coords(P))

    def contains(self, P) -> bool:
        return not self.value(P)

    def as_form(self) -> HomForm:
        u, v, w = self._v
        return HomForm(1, {(1, 0, 0): u, (0, 1, 0): v, (0, 0, 1): w}, self.tower)

    def to_json(self):
        return [c.to_json() for c in self._v]

    def __repr__(self):
        u, v, w = self._v
        return f"Line(({u})x + ({v})y + ({w})z)"


_CONIC_MONOMIALS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))


class Conic(_Normalized):
    """a x^2 + b y^2 + c z^2 + d xy + e xz + f yz."""

    _size = 6

    @property
    def coeffs(self):
        return self._v

    def as_form(self) -> HomForm:
        return HomForm(2, dict(zip(_CONIC_MONOMIALS, self._v)), self.tower)

    def value(self, P) -> FieldElement:
        x, y, z = _coords(P)
        return field_dot(self._v, [x * x, y * y, z * z, x * y, x * z, y * z])

    def contains(self, P) -> bool:
        return not self.value(P)

    def gradient_at(self, P):
        a, b, c, d, e, f = self._v
        x, y, z = _coords(P)
        return (
            field_dot([a * 2, d, e], [x, y, z]),
            field_dot([d, b * 2, f], [x, y, z]),
            field_dot([e, f, c * 2], [x, y, z]),
        )

    def det4(self) -> FieldElement:
        """4 * det of the symmetric matrix; nonzero iff the conic is smooth."""
        a, b, c, d, e, f = self._v
        return a * b * c * 4 + d * e * f - a * f * f - b * e * e - c * d * d

    def is_irreducible(self) -> bool:
        return bool(self.det4())

    def matrix(self):
        a, b, c, d, e, f = self._v
        h = Fraction(1, 2)
        return [[a, d * h, e * h], [d * h, b, f * h], [e * h, f * h, c]]

    def tangent_line(self, P) -> Line:
        if not self.contains(P):
            raise ContractViolation("point is not on the conic")
        return Line(self.gradient_at(P), self.tower)

    def to_json(self):
        return [c.to_json() for c in self._v]

    @classmethod
    def from_json(cls, obj) -> "Conic":
        vals = [FieldElement.from_json(c) for c in obj]
        return cls(vals, _tower_of(vals))

    def __repr__(self):
        names = ("x^2", "y^2", "z^2", "xy", "xz", "yz")
        return "Conic(" + " + ".join(f"({c}){n}" for c, n in zip(self._v, names) if c) + ")"


def _coords(P):
    if isinstance(P, ProjPoint):
        return P.coords
    return tuple(P)


def _on_fermat(P) -> bool:
    return not hom_eval(FERMAT, _coords(P))


# -- lines ------------------------------------------------------------------


def tangent_line(P: ProjPoint) -> Line:
    """Tangent to the Fermat cubic at P: (x_P^2, y_P^2, z_P^2)."""
    if not _on_fermat(P):
        raise ContractViolation(f"{P} is not on the Fermat cubic")
    return Line([c * c for c in P.coords], P.tower)


def _second_point_on_line(L: Line, P: ProjPoint):
    tower = _tower_of(list(L.coeffs) + list(P.coords))
    u, v, w = (FieldElement.coerce(c, tower) for c in L.coeffs)
    zero = tower.zero()
    # intersections of L with the coordinate lines
    candidates = [(zero, w, -v), (-w, zero, u), (v, -u, zero)]
    p = [FieldElement.coerce(c, tower) for c in P.coords]
    for cand in candidates:
        if not any(cand):
            continue
        cross = (
            p[1] * cand[2] - p[2] * cand[1],
            p[2] * cand[0] - p[0] * cand[2],
            p[0] * cand[1] - p[1] * cand[0],
        )
        if any(cross):
            return p, list(cand)
    raise AssertionError("no second point on a line")  # pragma: no cover


def line_restriction(f: HomForm, L: Line, P: ProjPoint):
    """Restriction of f to t -> P + t*Q with Q another point of L.

    Returns (polynomial, second point Q, P as a coordinate list).
    """
    if not L.contains(P):
        raise ContractViolation(f"{P} is not on {L}")
    p, q = _second_point_on_line(L, P)
    tower = _tower_of(p + q, f.tower)
    comps = [UniPoly([a, b], tower) for a, b in zip(p, q)]
    return f.substitute(*comps), q, p


def line_residual_point(L: Line, P: ProjPoint, m: int, f: HomForm = FERMAT):
    """Residual intersection of L with the cubic after removing m-fold contact at P.

    Returns None when the contact at P exhausts the intersection.
    """
    if f.degree - m > 1 or m < 1:
        raise ValueError("only a single residual point can be extracted")
    if hom_eval(f, P.coords):
        raise ContractViolation(f"{P} is not on the curve")
    poly, q, p = line_restriction(f, L, P)
    if poly.is_zero():
        raise InfiniteMultiplicityError("the line is a component of the curve")
    zero = p[0].tower.zero()
    try:
        rest = deflate(poly, zero, m)
    except MultiplicityError as exc:
        raise ContractViolation(str(exc)) from None
    if f.degree == m:
        return None
    q0, q1 = rest.coeff(0), rest.coeff(1)
    if not q1:
        return ProjPoint(q, p[0].tower)
    return ProjPoint([a * q1 - b * q0 for a, b in zip(p, q)], p[0].tower)


# -- conics -----------------------------------------------------------------


class ConicParametrization:
    """t -> b(t) W(t) - C(W(t)) P with W(t) = e_j + t e_i.

    ``components`` are three polynomials of degree <= 2; ``base_param`` is the
    parameter of P.  The value at infinity is the point on the line through P
    and e_i.
    """

    __slots__ = ("conic", "point", "components", "base_param", "sweep")

    def __init__(self, conic, point, components, base_param, sweep):
        self.conic = conic
        self.point = point
        self.components = components
        self.base_param = base_param
        self.sweep = sweep

    def coords_at(self, t):
        return [c(t) for c in self.components]

    def __call__(self, t) -> ProjPoint:
        return ProjPoint(self.coords_at(t), self.components[0].tower)

    def coords_at_ratio(self, num, den):
        """Homogeneous value at t = num/den (den may be zero for infinity)."""
        out = []
        for c in self.components:
            terms = [c.coeff(k) * (num ** k) * (den ** (2 - k)) for k in range(3)]
            out.append(terms[0] + terms[1] + terms[2])
        return out

    def at_infinity(self) -> ProjPoint:
        return ProjPoint([c.coeff(2) for c in self.components], self.components[0].tower)

    def restrict(self, f: HomForm) -> UniPoly:
        return f.substitute(*self.components)


def conic_parametrize(C: Conic, P: ProjPoint) -> ConicParametrization:
    if not C.is_irreducible():
        raise ReducibleConicError("cannot parametrize a reducible conic")
    if not C.contains(P):
        raise ContractViolation(f"{P} is not on the conic")
    tower = _tower_of(list(C.coeffs) + list(P.coords))
    p = [FieldElement.coerce(v, tower) for v in P.coords]
    grad = [FieldElement.coerce(g, tower) for g in C.gradient_at(p)]
    i = next(v for v in range(3) if grad[v])
    others = [v for v in range(3) if v != i]
    for j in others:
        k = 3 - i - j
        if p[k]:
            break
    else:  # pragma: no cover - excluded by the Euler relation
        raise AssertionError("no admissible sweep line")
    cc = [FieldElement.coerce(v, tower) for v in C.coeffs]
    diag = cc[:3]
    cross = {(0, 1): cc[3], (0, 2): cc[4], (1, 2): cc[5]}
    b0, b1 = grad[j], grad[i]
    w0, w1, w2 = diag[j], cross[tuple(sorted((i, j)))], diag[i]
    comps = []
    for m in range(3):
        # b(t) * W_m(t) - C(W(t)) * P_m
        lin = [tower.zero(), tower.zero(), tower.zero()]
        if m == j:
            lin[0], lin[1] = b0, b1
        elif m == i:
            lin[1], lin[2] = b0, b1
        comps.append(UniPoly([lin[0] - w0 * p[m], lin[1] - w1 * p[m], lin[2] - w2 * p[m]], tower))
    base = -b0 / b1
    return ConicParametrization(C, P, comps, base, (i, j))


def _restriction_at(f: HomForm, C: Conic, P: ProjPoint):
    param = conic_parametrize(C, P)
    poly = param.restrict(f)
    if poly.is_zero():
        raise InfiniteMultiplicityError("form vanishes identically on the conic")
    return param, poly


def intersection_multiplicity_on_conic(f: HomForm, C: Conic, P: ProjPoint) -> int:
    """I_P(f, C) as the order of vanishing at P's parameter."""
    param, poly = _restriction_at(f, C, P)
    return root_multiplicity(poly, param.base_param)


def conic_contact_profile(f: HomForm, C: Conic, P: ProjPoint, others=()):
    """Multiplicities of f along C at P, at each of ``others``, and at infinity.

    Returns (mult_at_P, [mult at each other point], mult_at_infinity,
    nominal degree).  Used for Bezout bookkeeping.
    """
    param, poly = _restriction_at(f, C, P)
    nominal = 2 * f.degree
    at_p = root_multiplicity(poly, param.base_param)
    mults = []
    for Q in others:
        t = _param_of(param, Q)
        mults.append(0 if t is None else root_multiplicity(poly, t))
    return at_p, mults, nominal - poly.degree, nominal


def _param_of(param: ConicParametrization, Q: ProjPoint):
    """Parameter of a point Q of the conic (None for the point at infinity)."""
    if param.point == Q:
        return param.base_param
    if param.at_infinity() == Q:
        return None
    i, j = param.sweep
    # Q lies on the line through P and e_j + t e_i; solve the linear equation
    p = param.point.coords
    q = Q.coords
    k = 3 - i - j
    # line through P and Q meets x_k = 0 at R = p_k Q - q_k P
    r = [a * p[k] - b * q[k] for a, b in zip(q, p)]
    if not r[j]:
        return None
    return r[i] / r[j]


def conic_residual_point(C1: Conic, C2: Conic, P: ProjPoint) -> ProjPoint:
    """Fourth intersection point of two conics meeting at P with contact >= 3."""
    if C1 == C2:
        raise ContractViolation("the two conics coincide")
    if not C2.is_irreducible():
        raise ReducibleConicError("second conic is reducible")
    param, poly = _restriction_at(C2.as_form(), C1, P)
    m = root_multiplicity(poly, param.base_param)
    if m < 3:
        raise ContractViolation(f"contact order {m} at the base point is below 3")
    if m >= 4:
        raise TotalContactError("the conics meet only at the base point")
    rest = deflate(poly, param.base_param, 3)
    q0, q1 = rest.coeff(0), rest.coeff(1)
    if not q1:
        return param.at_infinity()
    return ProjPoint(param.coords_at_ratio(-q0, q1), param.components[0].tower)
