"""Exact elements of a tower field.

An element is stored as integer numerators over a single positive common
denominator, reduced so that the gcd of all of them is 1.  This is only an
internal encoding: the public view is the vector of gcd-reduced rationals
returned by :attr:`FieldElement.coeffs`, and equality is equality of that
vector.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import kernels
from .tower import Q, Tower, TowerMismatchError, get_tower

__all__ = ["FieldElement", "field_mul", "field_inv", "field_add", "field_neg", "field_dot"]


def _normalize(num, den):
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = gcd(*num, den)
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class FieldElement:
    __slots__ = ("tower", "num", "den", "_hash")

    def __init__(self, tower: Tower, num, den: int = 1):
        if len(num) != tower.dim:
            raise ValueError(f"expected {tower.dim} coefficients, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.tower = tower
        self.num, self.den = _normalize([int(c) for c in num], int(den))
        self._hash = None

    @classmethod
    def _raw(cls, tower, num, den):
        # trusted constructor: num is a normalized tuple, den > 0
        obj = object.__new__(cls)
        obj.tower = tower
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, tower, num, den):
        num, den = _normalize(num, den)
        return cls._raw(tower, num, den)

    @classmethod
    def from_coeffs(cls, tower: Tower, coeffs) -> "FieldElement":
        fr = [Fraction(c) for c in coeffs]
        if len(fr) != tower.dim:
            raise ValueError(f"expected {tower.dim} coefficients, got {len(fr)}")
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        return cls._make(tower, [f.numerator * (den // f.denominator) for f in fr], den)

    @classmethod
    def coerce(cls, value, tower: Tower) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.tower is tower:
                return value
            if value.tower is Q:
                f = value.num[0]
                num = [0] * tower.dim
                num[tower.one_index] = f
                return cls._raw(tower, tuple(num), value.den)
            if tower is Q:
                raise TowerMismatchError(f"cannot coerce {value.tower.id} into Q")
            raise TowerMismatchError(f"towers differ: {value.tower.id} vs {tower.id}")
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, (int, Fraction)):
            f = Fraction(value)
            num = [0] * tower.dim
            num[tower.one_index] = f.numerator
            return cls._raw(tower, tuple(num), f.denominator)
        raise TypeError(f"cannot coerce {type(value).__name__} to a field element")

    # -- views ------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        one = self.tower.one_index
        return not any(c for i, c in enumerate(self.num) if i != one)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[self.tower.one_index], self.den)

    def sort_key(self):
        return self.coeffs

    # -- arithmetic -------------------------------------------------------

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.tower is self.tower:
                return self, other
            if other.tower is Q:
                return self, FieldElement.coerce(other, self.tower)
            if self.tower is Q:
                return FieldElement.coerce(self, other.tower), other
            raise TowerMismatchError(f"towers differ: {self.tower.id} vs {other.tower.id}")
        return self, FieldElement.coerce(other, self.tower)

    def __add__(self, other):
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            return FieldElement._make(a.tower, [x + y for x, y in zip(a.num, b.num)], a.den)
        da, db = a.den, b.den
        return FieldElement._make(
            a.tower, [x * db + y * da for x, y in zip(a.num, b.num)], da * db
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(self.tower, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return FieldElement._make(self.tower, [c * other for c in self.num], self.den)
        if isinstance(other, Fraction):
            return FieldElement._make(
                self.tower, [c * other.numerator for c in self.num], self.den * other.denominator
            )
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        if a.tower is Q:
            return FieldElement._make(Q, [a.num[0] * b.num[0]], a.den * b.den)
        table = a.tower.kernel_table
        return FieldElement._make(a.tower, kernels.backend.mul(table, a.num, b.num), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """Inverse by solving the linear system of multiplication by self."""
        if not any(self.num):
            raise ZeroDivisionError("inverse of zero")
        tower = self.tower
        if tower is Q:
            return FieldElement._make(Q, [self.den], self.num[0])
        table = tower.kernel_table
        m = kernels.backend.mul_matrix(table, self.num)
        rhs = [0] * tower.dim
        rhs[tower.one_index] = self.den
        solved = kernels.backend.solve(m, rhs)
        if solved is None:  # pragma: no cover - impossible in a field
            raise ArithmeticError("multiplication matrix is singular")
        num, den = solved
        return FieldElement._make(tower, num, den)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            f = Fraction(other)
            return FieldElement._make(
                self.tower, [c * f.denominator for c in self.num], self.den * f.numerator
            )
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        try:
            a, b = self._other(other)
        except TypeError:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.tower is not self.tower:
                try:
                    a, b = self._other(other)
                except TowerMismatchError:
                    return False
                return a.num == b.num and a.den == b.den
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == FieldElement.coerce(other, self.tower)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            # rationals hash alike in every tower so that coerced values agree
            if self.is_rational():
                self._hash = hash(Fraction(self.num[self.tower.one_index], self.den))
            else:
                self._hash = hash((self.tower.id, self.num, self.den))
        return self._hash

    def __reduce__(self):
        return (_rebuild, (self.tower.id, self.num, self.den))

    # -- display / serialization -----------------------------------------

    def __str__(self):
        return _format(self)

    def __repr__(self):
        return f"FieldElement[{self.tower.id}]({_format(self)})"

    def to_json(self) -> dict:
        return {
            "tower": self.tower.id,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> "FieldElement":
        tower = get_tower(obj["tower"])
        coeffs = [Fraction(int(n), int(d)) for n, d in obj["coeffs"]]
        return cls.from_coeffs(tower, coeffs)


def _rebuild(tower_id, num, den):
    return FieldElement._raw(get_tower(tower_id), tuple(num), den)


def _monomial_name(tower, exps):
    parts = []
    for g, e in zip(tower.generators, exps):
        if e == 1:
            parts.append(g.name)
        elif e > 1:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts)


def _format(x: FieldElement) -> str:
    terms = []
    for exps, c in zip(x.tower.basis, x.coeffs):
        if not c:
            continue
        mono = _monomial_name(x.tower, exps)
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.tower is not b.tower:
        raise TowerMismatchError(f"towers differ: {a.tower.id} vs {b.tower.id}")
    return a * b


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    if a.tower is not b.tower:
        raise TowerMismatchError(f"towers differ: {a.tower.id} vs {b.tower.id}")
    return a + b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def integer_vectors(values, tower):
    """Numerator vectors of ``values`` over one common denominator."""
    vals = [FieldElement.coerce(v, tower) for v in values]
    den = 1
    for v in vals:
        den = den * v.den // gcd(den, v.den)
    return [tuple(c * (den // v.den) for c in v.num) for v in vals], den


def dot_vanishes(tower, xs, ys) -> bool:
    """Whether sum x*y is zero, for integer vectors from ``integer_vectors``."""
    terms = [(x, y, 1) for x, y in zip(xs, ys)]
    return not any(kernels.backend.dot(tower.kernel_table, terms))


def field_dot(xs, ys) -> FieldElement:
    """Sum of x*y over paired sequences, with a single reduction at the end."""
    xs = list(xs)
    ys = list(ys)
    if not xs:
        raise ValueError("empty dot product")
    tower = next(
        (v.tower for v in xs + ys if isinstance(v, FieldElement) and v.tower is not Q), Q
    )
    xs = [FieldElement.coerce(x, tower) for x in xs]
    ys = [FieldElement.coerce(y, tower) for y in ys]
    if tower is Q:
        total = sum(Fraction(x.num[0], x.den) * Fraction(y.num[0], y.den) for x, y in zip(xs, ys))
        return FieldElement.coerce(total, Q)
    den = 1
    for x, y in zip(xs, ys):
        d = x.den * y.den
        den = den * d // gcd(den, d)
    terms = [(x.num, y.num, den // (x.den * y.den)) for x, y in zip(xs, ys) if any(x.num) and any(y.num)]
    if not terms:
        return tower.zero()
    return FieldElement._make(tower, kernels.backend.dot(tower.kernel_table, terms), den)
