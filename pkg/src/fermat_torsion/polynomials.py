"""Univariate polynomials and ternary forms over a tower field."""

from __future__ import annotations

from itertools import permutations

from .exactfield import FieldElement, Q, field_dot
from .exactfield.tower import Tower

__all__ = [
    "UniPoly",
    "HomForm",
    "MultiplicityError",
    "upoly_eval",
    "root_multiplicity",
    "deflate",
    "hom_eval",
    "fermat_cubic",
    "hessian_form",
    "second_hessian_form",
    "binary_form",
]


class MultiplicityError(ArithmeticError):
    """Root multiplicity undefined (zero polynomial) or short of a contract."""


def _common_tower(values, default=Q):
    for v in values:
        if isinstance(v, FieldElement) and v.tower is not Q:
            return v.tower
    return default


class UniPoly:
    """Dense polynomial; ``coeffs[i]`` multiplies ``t**i``."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, coeffs, tower: Tower | None = None):
        coeffs = list(coeffs)
        if tower is None:
            tower = _common_tower(coeffs)
        cs = [FieldElement.coerce(c, tower) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.tower = tower
        self.coeffs = tuple(cs)

    @classmethod
    def _trusted(cls, coeffs, tower):
        obj = object.__new__(cls)
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        obj.tower = tower
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def from_roots(cls, roots, tower: Tower | None = None) -> "UniPoly":
        tower = tower or _common_tower(roots)
        p = cls([1], tower)
        for r in roots:
            p = p * cls([-FieldElement.coerce(r, tower), 1], tower)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def leading(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.tower.zero()

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.tower.zero()

    def _lift(self, other):
        if isinstance(other, UniPoly):
            if other.tower is self.tower:
                return self, other
            if other.tower is Q:
                return self, UniPoly(other.coeffs, self.tower)
            if self.tower is Q:
                return UniPoly(self.coeffs, other.tower), other
            return self, UniPoly(other.coeffs, self.tower)
        return self, UniPoly([other], self.tower if not isinstance(other, FieldElement)
                             or other.tower is Q else other.tower)

    def __add__(self, other):
        a, b = self._lift(other)
        if a.tower is not b.tower:
            a = UniPoly(a.coeffs, b.tower)
        n = max(len(a.coeffs), len(b.coeffs))
        return UniPoly._trusted([a.coeff(i) + b.coeff(i) for i in range(n)], a.tower)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._trusted([-c for c in self.coeffs], self.tower)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)) and not isinstance(other, bool):
            if isinstance(other, FieldElement) and other.tower is not self.tower and self.tower is Q:
                return UniPoly(self.coeffs, other.tower) * other
            return UniPoly._trusted([c * other for c in self.coeffs], self.tower)
        a, b = self._lift(other)
        if a.tower is not b.tower:
            a = UniPoly(a.coeffs, b.tower)
        if not a.coeffs or not b.coeffs:
            return UniPoly._trusted([], a.tower)
        n, m = len(a.coeffs), len(b.coeffs)
        out = []
        for k in range(n + m - 1):
            lo, hi = max(0, k - m + 1), min(k, n - 1)
            out.append(field_dot(a.coeffs[lo:hi + 1], [b.coeffs[k - i] for i in range(lo, hi + 1)]))
        return UniPoly._trusted(out, a.tower)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UniPoly([1], self.tower)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, t):
        return upoly_eval(self, t)

    def derivative(self) -> "UniPoly":
        return UniPoly._trusted([c * i for i, c in enumerate(self.coeffs)][1:], self.tower)

    def change_tower(self, tower: Tower) -> "UniPoly":
        return UniPoly(self.coeffs, tower)

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                s = str(c)
                if " " in s:
                    s = f"({s})"
                terms.append(s if i == 0 else f"{s}*t^{i}")
        return "UniPoly(" + " + ".join(terms) + ")"


def upoly_eval(p: UniPoly, t) -> FieldElement:
    """Horner evaluation."""
    tower = p.tower
    if isinstance(t, FieldElement) and t.tower is not Q:
        tower = t.tower
    acc = tower.zero()
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc


def _synthetic_division(p: UniPoly, r):
    """Quotient and remainder of p by (t - r)."""
    cs = p.coeffs
    if not cs:
        return UniPoly._trusted([], p.tower), p.tower.zero()
    tower = p.tower
    if isinstance(r, FieldElement) and r.tower is not Q:
        tower = r.tower
    q = [None] * (len(cs) - 1)
    acc = FieldElement.coerce(cs[-1], tower)
    for i in range(len(cs) - 2, -1, -1):
        q[i] = acc
        acc = cs[i] + acc * r
    return UniPoly._trusted(q, tower), acc


def root_multiplicity(p: UniPoly, r) -> int:
    """Largest k with (t - r)**k dividing p."""
    if not p.coeffs:
        raise MultiplicityError("multiplicity of a root of the zero polynomial")
    k = 0
    while True:
        q, rem = _synthetic_division(p, r)
        if rem:
            return k
        k += 1
        p = q


def deflate(p: UniPoly, r, k: int) -> UniPoly:
    """Exact quotient p / (t - r)**k."""
    if not p.coeffs:
        raise MultiplicityError("cannot deflate the zero polynomial")
    for step in range(k):
        q, rem = _synthetic_division(p, r)
        if rem:
            raise MultiplicityError(f"root multiplicity {step} is below the requested {k}")
        p = q
    return p


def _coords_of(P):
    return P.coords if hasattr(P, "coords") else tuple(P)


class HomForm:
    """Homogeneous ternary form stored as ``{(i, j, k): coefficient}``."""

    __slots__ = ("degree", "tower", "terms")

    def __init__(self, degree: int, terms, tower: Tower | None = None):
        items = dict(terms).items() if not isinstance(terms, dict) else terms.items()
        items = list(items)
        if tower is None:
            tower = _common_tower([c for _, c in items])
        clean = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != 3 or sum(exps) != degree or min(exps) < 0:
                raise ValueError(f"exponents {exps} do not form a degree-{degree} monomial")
            c = FieldElement.coerce(c, tower)
            if exps in clean:
                c = clean[exps] + c
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.degree = degree
        self.tower = tower
        self.terms = dict(sorted(clean.items(), reverse=True))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HomForm"):
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        tower = self.tower if self.tower is not Q else other.tower
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return HomForm(self.degree, terms, tower)

    def __neg__(self):
        return HomForm(self.degree, {e: -c for e, c in self.terms.items()}, self.tower)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomForm):
            return HomForm(self.degree, {e: c * other for e, c in self.terms.items()},
                           _common_tower([other], self.tower))
        tower = self.tower if self.tower is not Q else other.tower
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                v = c1 * c2
                out[e] = out[e] + v if e in out else v
        return HomForm(self.degree + other.degree, out, tower)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, HomForm):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(self.terms.items())))

    def partial(self, var: int) -> "HomForm":
        if self.degree == 0:
            raise ValueError("derivative of a constant form")
        out = {}
        for e, c in self.terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return HomForm(self.degree - 1, out, self.tower)

    def gradient(self):
        return tuple(self.partial(v) for v in range(3))

    def permute(self, perm) -> "HomForm":
        """Form g with g(x_0, x_1, x_2) = f(x_perm[0], x_perm[1], x_perm[2])."""
        out = {}
        for e, c in self.terms.items():
            ne = [0, 0, 0]
            for pos in range(3):
                ne[perm[pos]] += e[pos]
            out[tuple(ne)] = c
        return HomForm(self.degree, out, self.tower)

    def __call__(self, P):
        return hom_eval(self, P)

    def substitute(self, x: UniPoly, y: UniPoly, z: UniPoly) -> UniPoly:
        """Restriction to a curve t -> (x(t), y(t), z(t))."""
        tower = _common_tower([x.leading(), y.leading(), z.leading()], self.tower)
        if self.tower is not Q and tower is not self.tower:
            tower = self.tower
        cache = {}

        def power(i, p, e):
            key = (i, e)
            if key not in cache:
                cache[key] = UniPoly([1], tower) if e == 0 else power(i, p, e - 1) * p
            return cache[key]

        total = UniPoly([], tower)
        for (i, j, k), c in self.terms.items():
            total = total + power(0, x, i) * power(1, y, j) * power(2, z, k) * c
        return total

    def to_json(self):
        return [{"exps": list(e), "coeff": c.to_json()} for e, c in self.terms.items()]

    @classmethod
    def from_json(cls, obj) -> "HomForm":
        if not obj:
            raise ValueError("cannot infer the degree of an empty form")
        terms = {tuple(t["exps"]): FieldElement.from_json(t["coeff"]) for t in obj}
        degree = sum(next(iter(terms)))
        return cls(degree, terms)

    def __repr__(self):
        names = "xyz"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"{names[v]}^{p}" if p > 1 else names[v] for v, p in enumerate(e) if p)
            s = str(c)
            if " " in s:
                s = f"({s})"
            parts.append(f"{s}*{mono}" if mono else s)
        return "HomForm(" + (" + ".join(parts) or "0") + ")"


def hom_eval(f: HomForm, P) -> FieldElement:
    x, y, z = _coords_of(P)
    tower = _common_tower([x, y, z], f.tower)
    x, y, z = (FieldElement.coerce(v, tower) for v in (x, y, z))
    if not f.terms:
        return tower.zero()
    pw = [[tower.one()], [tower.one()], [tower.one()]]
    for v, base in enumerate((x, y, z)):
        for _ in range(f.degree):
            pw[v].append(pw[v][-1] * base)
    monos = []
    coeffs = []
    for (i, j, k), c in f.terms.items():
        monos.append(pw[0][i] * pw[1][j] * pw[2][k])
        coeffs.append(c)
    return field_dot(coeffs, monos)


def fermat_cubic() -> HomForm:
    """x^3 + y^3 + z^3."""
    return HomForm(3, {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}, Q)


def hessian_form() -> HomForm:
    """xyz, the Hessian of the Fermat cubic up to a constant."""
    return HomForm(3, {(1, 1, 1): 1}, Q)


def second_hessian_form() -> HomForm:
    """(x^3 - y^3)(y^3 - z^3)(x^3 - z^3)."""
    a = HomForm(3, {(3, 0, 0): 1, (0, 3, 0): -1}, Q)
    b = HomForm(3, {(0, 3, 0): 1, (0, 0, 3): -1}, Q)
    c = HomForm(3, {(3, 0, 0): 1, (0, 0, 3): -1}, Q)
    return a * b * c


def binary_form(coeffs: dict[tuple[int, int], int], variables=(0, 1)) -> HomForm:
    """Embed a binary form {(i, j): c} in the chosen two of x, y, z."""
    degree = sum(next(iter(coeffs)))
    terms = {}
    for (i, j), c in coeffs.items():
        e = [0, 0, 0]
        e[variables[0]] += i
        e[variables[1]] += j
        terms[tuple(e)] = c
    return HomForm(degree, terms, Q)


def coordinate_permutations():
    return list(permutations(range(3)))
