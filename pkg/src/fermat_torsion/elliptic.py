"""The Weierstrass model y~^2 = x~^3 - 432 of the Fermat cubic.

The identity of the group law is the flex [1 : -1 : 0].  Plane points map to
the model by x~ = -12z/(x+y), y~ = 36(x-y)/(x+y) and back by
[36 + y~ : 36 - y~ : -6x~].
"""

from __future__ import annotations

from .exactfield import FieldElement, Q
from .exactfield.tower import Tower
from .polynomials import UniPoly, hom_eval
from .projective import FERMAT, ContractViolation, ProjPoint

__all__ = [
    "WeierstrassCurve",
    "ECPoint",
    "INFINITY",
    "FERMAT_MODEL",
    "IndependenceError",
    "to_weierstrass",
    "from_weierstrass",
    "ec_add",
    "ec_neg",
    "ec_scalar_mul",
    "order",
    "DivisionPoly",
    "division_poly",
    "torsion_subgroup",
]

MAX_DIVISION_INDEX = 12


class IndependenceError(ArithmeticError):
    """Two generators span fewer than n**2 points of E[n]."""

    def __init__(self, n, count):
        super().__init__(f"generators span {count} points, expected {n * n}")
        self.n = n
        self.count = count


class ECPoint:
    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        if (x is None) != (y is None):
            raise ValueError("give both coordinates or neither")
        if x is not None and isinstance(x, FieldElement) and isinstance(y, FieldElement):
            if x.tower is not y.tower:
                if x.tower is Q:
                    x = FieldElement.coerce(x, y.tower)
                elif y.tower is Q:
                    y = FieldElement.coerce(y, x.tower)
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, ECPoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "ECPoint(O)"
        return f"ECPoint({self.x}, {self.y})"

    def to_json(self):
        if self.is_infinity:
            return {"inf": True}
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    @classmethod
    def from_json(cls, obj) -> "ECPoint":
        if obj.get("inf"):
            return INFINITY
        return cls(FieldElement.from_json(obj["x"]), FieldElement.from_json(obj["y"]))


INFINITY = ECPoint()


class WeierstrassCurve:
    """y^2 = x^3 + A x + B."""

    def __init__(self, A, B):
        self.A = A if isinstance(A, FieldElement) else Q(A)
        self.B = B if isinstance(B, FieldElement) else Q(B)
        disc = (self.A ** 3 * 4 + self.B * self.B * 27) * (-16)
        if not disc:
            raise ValueError("singular curve")
        self.discriminant = disc

    def contains(self, P: ECPoint) -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        return y * y == x * x * x + self.A * x + self.B

    def __repr__(self):
        return f"WeierstrassCurve(A={self.A}, B={self.B})"


FERMAT_MODEL = WeierstrassCurve(0, -432)


def to_weierstrass(P: ProjPoint) -> ECPoint:
    if hom_eval(FERMAT, P.coords):
        raise ContractViolation(f"{P} is not on the Fermat cubic")
    x, y, z = P.coords
    s = x + y
    if not s:
        return INFINITY
    inv = s.inverse()
    return ECPoint(z * inv * (-12), (x - y) * inv * 36)


def from_weierstrass(Q_: ECPoint, tower: Tower | None = None) -> ProjPoint:
    if Q_.is_infinity:
        return ProjPoint([1, -1, 0], tower or Q)
    x, y = Q_.x, Q_.y
    return ProjPoint([y + 36, -y + 36, x * (-6)], tower or y.tower)


def ec_neg(P: ECPoint) -> ECPoint:
    return P if P.is_infinity else ECPoint(P.x, -P.y)


def ec_add(P: ECPoint, R: ECPoint, curve: WeierstrassCurve = FERMAT_MODEL) -> ECPoint:
    """Chord-tangent addition."""
    if P.is_infinity:
        return R
    if R.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, R.x, R.y
    if x1 == x2:
        if y1 != y2 or not y1:
            return INFINITY
        slope = (x1 * x1 * 3 + curve.A) / (y1 * 2)
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope - x1 - x2
    y3 = slope * (x1 - x3) - y1
    return ECPoint(x3, y3)


def ec_scalar_mul(n: int, P: ECPoint, curve: WeierstrassCurve = FERMAT_MODEL) -> ECPoint:
    if n < 0:
        return ec_scalar_mul(-n, ec_neg(P), curve)
    result = INFINITY
    addend = P
    while n:
        if n & 1:
            result = ec_add(result, addend, curve)
        n >>= 1
        if n:
            addend = ec_add(addend, addend, curve)
    return result


def order(P: ECPoint, bound: int = 64, curve: WeierstrassCurve = FERMAT_MODEL) -> int | None:
    """Exact order of P by repeated addition, or None beyond ``bound``."""
    R = P
    for k in range(1, bound + 1):
        if R.is_infinity:
            return k
        R = ec_add(R, P, curve)
    return None


class DivisionPoly:
    """psi_n reduced to a polynomial in x~.

    For odd n ``poly`` is psi_n; for even n it is psi_n / (2 y~) with y~^2
    eliminated, and ``even`` is True.
    """

    __slots__ = ("n", "poly", "even")

    def __init__(self, n: int, poly: UniPoly):
        self.n = n
        self.poly = poly
        self.even = n % 2 == 0

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __call__(self, x):
        return self.poly(x)

    def __repr__(self):
        return f"DivisionPoly(n={self.n}, degree={self.degree})"


def _division_table(n: int, A, B) -> list[UniPoly]:
    A = FieldElement.coerce(A, Q) if not isinstance(A, FieldElement) else A
    B = FieldElement.coerce(B, Q) if not isinstance(B, FieldElement) else B
    tower = A.tower if A.tower is not Q else B.tower
    cubic = UniPoly([B, A, 0, 1], tower)
    four_y4 = cubic * cubic * 16  # (2y)^4
    g = [
        UniPoly([], tower),
        UniPoly([1], tower),
        UniPoly([1], tower),
        UniPoly([-A * A, B * 12, A * 6, 0, 3], tower),
        UniPoly([-B * B * 8 - A ** 3, -A * B * 4, -A * A * 5, B * 20, A * 5, 0, 1], tower) * 2,
    ]
    for m in range(5, n + 1):
        k = m // 2
        if m % 2:
            if k % 2 == 0:
                val = four_y4 * g[k + 2] * g[k] ** 3 - g[k - 1] * g[k + 1] ** 3
            else:
                val = g[k + 2] * g[k] ** 3 - four_y4 * g[k - 1] * g[k + 1] ** 3
        else:
            val = g[k] * (g[k + 2] * g[k - 1] ** 2 - g[k - 2] * g[k + 1] ** 2)
        g.append(val)
    return g


_CACHE: dict = {}


def division_poly(n: int, A=0, B=-432) -> DivisionPoly:
    """psi_n for y^2 = x^3 + A x + B (defaults to the Fermat model)."""
    if not 0 <= n <= MAX_DIVISION_INDEX:
        raise ValueError(f"division polynomial index must be in [0, {MAX_DIVISION_INDEX}]")
    key = (n, str(A), str(B))
    if key not in _CACHE:
        _CACHE[key] = DivisionPoly(n, _division_table(max(n, 4), A, B)[n])
    return _CACHE[key]


def torsion_subgroup(G1: ECPoint, G2: ECPoint, n: int,
                     curve: WeierstrassCurve = FERMAT_MODEL) -> list[ECPoint]:
    """All i*G1 + j*G2 (0 <= i, j < n), checked to number exactly n**2."""
    for G in (G1, G2):
        if not ec_scalar_mul(n, G, curve).is_infinity:
            raise ValueError(f"{G} is not {n}-torsion")
    row = [INFINITY]
    for _ in range(1, n):
        row.append(ec_add(row[-1], G1, curve))
    points = []
    seen = set()
    col = INFINITY
    for _ in range(n):
        for base in row:
            P = ec_add(base, col, curve)
            if P not in seen:
                seen.add(P)
                points.append(P)
        col = ec_add(col, G2, curve)
    if len(points) != n * n:
        raise IndependenceError(n, len(points))
    return points
