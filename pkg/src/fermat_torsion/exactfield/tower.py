"""Tower extensions of the rationals presented by power-reduction rules.

A tower is a chain of generators g_1, ..., g_n.  Generator g_i has degree d_i
and a rule rewriting g_i**d_i as an integer combination of monomials whose
g_i-exponent is below d_i and whose other exponents only involve earlier
generators.  Elements are coefficient vectors over the monomial basis
prod g_i**e_i (0 <= e_i < d_i), ordered with the first generator varying
slowest.
"""

from __future__ import annotations

from itertools import product
from math import prod

__all__ = [
    "Generator",
    "Tower",
    "TowerMismatchError",
    "get_tower",
    "Q",
    "Q_EPS_MU",
    "Q_ALPHA_BETA",
]


class TowerMismatchError(ValueError):
    """Raised when an operation mixes elements of incompatible towers."""


class Generator:
    __slots__ = ("name", "degree", "rule")

    def __init__(self, name: str, degree: int, rule: dict[tuple[int, ...], int]):
        # rule maps an exponent tuple over the generators up to and including
        # this one to an integer coefficient
        self.name = name
        self.degree = degree
        self.rule = dict(rule)

    def __repr__(self):
        return f"Generator({self.name!r}, {self.degree})"


_REGISTRY: dict[str, "Tower"] = {}


class Tower:
    """An explicitly presented tower field with precomputed multiplication data."""

    def __init__(self, tower_id: str, generators: list[Generator]):
        self.id = tower_id
        self.generators = tuple(generators)
        self.degrees = tuple(g.degree for g in generators)
        self.dim = prod(self.degrees) if generators else 1
        self._check_rules()
        self.basis = [e for e in product(*(range(d) for d in self.degrees))]
        self._index = {e: i for i, e in enumerate(self.basis)}
        # raw products live on a grid with radix 2*d - 1 per generator
        self.raw_radices = tuple(2 * d - 1 for d in self.degrees)
        self.raw_dim = prod(self.raw_radices) if generators else 1
        self.raw_offsets = [self._raw_index(e) for e in self.basis]
        self.reduction = [self._reduce_monomial(e) for e in self._raw_exponents()]
        self.one_index = self._index[tuple(0 for _ in self.degrees)]
        self._kernel_table = None
        _REGISTRY[tower_id] = self

    def _check_rules(self):
        for i, g in enumerate(self.generators):
            if g.degree < 1:
                raise ValueError(f"generator {g.name} has degree < 1")
            for exps, c in g.rule.items():
                if len(exps) != i + 1:
                    raise ValueError(f"rule for {g.name} has wrong arity: {exps}")
                if exps[i] >= g.degree:
                    raise ValueError(f"rule for {g.name} is not reducing: {exps}")
                for j in range(i):
                    if exps[j] >= self.generators[j].degree:
                        raise ValueError(f"rule for {g.name} uses {exps} outside the basis")
                if int(c) != c:
                    raise ValueError("reduction rules must have integer coefficients")

    def _raw_index(self, exps):
        idx = 0
        for e, r in zip(exps, self.raw_radices):
            idx = idx * r + e
        return idx

    def _raw_exponents(self):
        return product(*(range(r) for r in self.raw_radices))

    def _reduce_monomial(self, exps) -> list[tuple[int, int]]:
        """Rewrite a monomial with possibly large exponents into the basis.

        Returns a sparse list of (basis index, integer coefficient).
        """
        pending = {tuple(exps): 1}
        done: dict[tuple[int, ...], int] = {}
        while pending:
            e, c = pending.popitem()
            # reduce the last generator whose exponent overflows
            for i in range(len(e) - 1, -1, -1):
                if e[i] >= self.degrees[i]:
                    break
            else:
                done[e] = done.get(e, 0) + c
                continue
            d = self.degrees[i]
            rest = list(e)
            rest[i] -= d
            for rexps, rc in self.generators[i].rule.items():
                new = list(rest)
                for j, rj in enumerate(rexps):
                    new[j] += rj
                key = tuple(new)
                pending[key] = pending.get(key, 0) + c * int(rc)
                if pending[key] == 0:
                    del pending[key]
        return sorted((self._index[e], c) for e, c in done.items() if c)

    # -- element constructors ------------------------------------------------

    def zero(self):
        from .element import FieldElement

        return FieldElement._raw(self, (0,) * self.dim, 1)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        from .element import FieldElement

        num = [0] * self.dim
        num[self.one_index] = int(n)
        return FieldElement._raw(self, tuple(num), 1)

    def gen(self, name: str):
        """The generator called ``name`` as a field element."""
        from .element import FieldElement

        for i, g in enumerate(self.generators):
            if g.name == name:
                if g.degree == 1:
                    raise ValueError(f"generator {name!r} has degree 1")
                exps = [0] * len(self.generators)
                exps[i] = 1
                num = [0] * self.dim
                num[self._index[tuple(exps)]] = 1
                return FieldElement._raw(self, tuple(num), 1)
        raise KeyError(f"tower {self.id} has no generator {name!r}")

    def __call__(self, value):
        from .element import FieldElement

        return FieldElement.coerce(value, self)

    def from_coeffs(self, coeffs):
        from .element import FieldElement

        return FieldElement.from_coeffs(self, coeffs)

    # -- cube roots of unity (flex coordinates need one) ---------------------

    def cube_root_of_unity(self):
        """A primitive cube root of unity w with w**2 + w + 1 = 0."""
        if self.id == "Q_eps_mu":
            return self.gen("eps")
        if self.id == "Q_alpha_beta":
            return self.gen("beta") ** 3
        raise ValueError(f"tower {self.id} has no primitive cube root of unity")

    @property
    def kernel_table(self):
        if self._kernel_table is None:
            from .kernels import KernelTable

            self._kernel_table = KernelTable(self)
        return self._kernel_table

    def __repr__(self):
        names = ", ".join(g.name for g in self.generators) or "-"
        return f"Tower({self.id!r}, gens=[{names}], dim={self.dim})"

    def __reduce__(self):
        return (get_tower, (self.id,))


def get_tower(tower_id: str) -> Tower:
    try:
        return _REGISTRY[tower_id]
    except KeyError:
        raise KeyError(f"unknown tower id {tower_id!r}") from None


Q = Tower("Q", [])
# eps**2 = -eps - 1 ; mu**3 = 2
Q_EPS_MU = Tower(
    "Q_eps_mu",
    [
        Generator("eps", 2, {(1,): -1, (0,): -1}),
        Generator("mu", 3, {(0, 0): 2}),
    ],
)
# alpha**3 = 3 ; beta**6 = -beta**3 - 1
Q_ALPHA_BETA = Tower(
    "Q_alpha_beta",
    [
        Generator("alpha", 3, {(0,): 3}),
        Generator("beta", 6, {(0, 3): -1, (0, 0): -1}),
    ],
)
