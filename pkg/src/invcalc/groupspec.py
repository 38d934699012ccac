"""Group specifications: factors plus a subgroup of the center characters.

The center character group of a product of simply connected factors is a
product of cyclic groups; its elements are stored as flat residue tuples, one
or two coordinates per factor depending on the factor's type and rank parity.
A ``GroupSpec`` holds the factor list together with generators of the relation
subgroup, which dually encodes the central subgroup that was divided out.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import product

from . import rootdata
from .lattices import CongruenceSystem, IntMatrix, Sublattice, snf, solve_congruences
from .rootdata import SimpleFactor


class SpecError(Exception):
    pass


class MalformedGenerator(SpecError):
    pass


class CenterTooLarge(SpecError):
    pass


@dataclass(frozen=True)
class CenterStructure:
    """Flat coordinate layout of the center character group."""

    moduli: tuple[int, ...]
    offsets: tuple[int, ...]  # flat offset of each factor's block
    widths: tuple[int, ...]

    @property
    def order(self) -> int:
        prod = 1
        for m in self.moduli:
            prod *= m
        return prod

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.moduli)

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def scale(self, k: int, a) -> tuple[int, ...]:
        return tuple((k * x) % m for x, m in zip(a, self.moduli))

    def component(self, elem, i: int) -> tuple[int, ...]:
        off, w = self.offsets[i], self.widths[i]
        return tuple(elem[off : off + w])

    def from_components(self, comps) -> tuple[int, ...]:
        out = []
        for c in comps:
            out.extend(c)
        return tuple(x % m for x, m in zip(out, self.moduli))

    def elements(self):
        return (tuple(e) for e in product(*[range(m) for m in self.moduli]))


def center_structure(factors) -> CenterStructure:
    moduli: list[int] = []
    offsets: list[int] = []
    widths: list[int] = []
    for f in factors:
        block = rootdata.center_moduli(f)
        offsets.append(len(moduli))
        widths.append(len(block))
        moduli.extend(block)
    return CenterStructure(tuple(moduli), tuple(offsets), tuple(widths))


@dataclass(frozen=True)
class GroupSpec:
    """Simple factors of one Dynkin type plus relation-subgroup generators."""

    factors: tuple[SimpleFactor, ...]
    r_generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.factors:
            raise SpecError("at least one factor is required")
        letters = {f.ftype for f in self.factors}
        if len(letters) > 1:
            raise SpecError("all factors must share one Dynkin type")
        st = center_structure(self.factors)
        for g in self.r_generators:
            if len(g) != len(st.moduli):
                raise MalformedGenerator(
                    f"generator {g} has {len(g)} coordinates, expected {len(st.moduli)}"
                )
            for x, m in zip(g, st.moduli):
                if not (0 <= x < m):
                    raise MalformedGenerator(
                        f"generator coordinate {x} is not reduced modulo {m}"
                    )

    @property
    def ftype(self) -> str:
        return self.factors[0].ftype

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(f.n for f in self.factors)

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def center(self) -> CenterStructure:
        return center_structure(self.factors)


def make_spec(factors, generators=()) -> GroupSpec:
    factors = tuple(
        f if isinstance(f, SimpleFactor) else SimpleFactor(*f) for f in factors
    )
    st = center_structure(factors)
    gens = tuple(
        tuple(int(x) % m for x, m in zip(g, st.moduli)) if len(g) == len(st.moduli) else tuple(g)
        for g in generators
    )
    return GroupSpec(factors, gens)


def simply_connected(factors) -> GroupSpec:
    """Spec with the full relation subgroup (no central quotient)."""
    factors = tuple(
        f if isinstance(f, SimpleFactor) else SimpleFactor(*f) for f in factors
    )
    st = center_structure(factors)
    gens = []
    for i, m in enumerate(st.moduli):
        g = [0] * len(st.moduli)
        g[i] = 1
        gens.append(tuple(g))
    return GroupSpec(factors, tuple(gens))


def adjoint(factors) -> GroupSpec:
    """Spec with trivial relation subgroup (full central quotient)."""
    factors = tuple(
        f if isinstance(f, SimpleFactor) else SimpleFactor(*f) for f in factors
    )
    return GroupSpec(factors, ())


@dataclass(frozen=True)
class RelationSubgroup:
    """Explicit subgroup of the center character group."""

    moduli: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]  # sorted, closed under addition

    @functools.cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, elem) -> bool:
        return tuple(elem) in self.element_set

    @property
    def order(self) -> int:
        return len(self.elements)

    def minimal_generators(self) -> tuple[tuple[int, ...], ...]:
        """Greedy generating set over the sorted element list (canonical)."""
        st_add = _adder(self.moduli)
        span = {(0,) * len(self.moduli)}
        gens = []
        for e in self.elements:
            if e not in span:
                gens.append(e)
                span = _close(span | {e}, st_add)
        return tuple(gens)


def _adder(moduli):
    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    return add


def _close(seed, add):
    elems = set(seed)
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(elems):
                c = add(a, b)
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return elems


@functools.lru_cache(maxsize=None)
def relation_subgroup(spec: GroupSpec) -> RelationSubgroup:
    """Smallest subgroup of the center characters containing the generators."""
    st = spec.center()
    add = _adder(st.moduli)
    elems = _close({st.zero()} | set(spec.r_generators), add)
    return RelationSubgroup(st.moduli, tuple(sorted(elems)))


def center_image(factors, weight) -> tuple[int, ...]:
    """Flat center image of a weight given by per-factor coefficient tuples."""
    comps = [
        rootdata.center_image_component(f, comp) for f, comp in zip(factors, weight)
    ]
    return center_structure(factors).from_components(comps)


def fundamental_weight(spec: GroupSpec, i: int, j: int):
    """The j-th fundamental weight (1-based) of factor i, in factor coordinates.

    For types B and D that is a unit coefficient vector; for type C, whose
    components use orthogonal coordinates, it is 1 in the first j slots.
    """
    comps = []
    for k, f in enumerate(spec.factors):
        c = [0] * f.n
        if k == i:
            if f.ftype == "C":
                for p in range(j):
                    c[p] = 1
            else:
                c[j - 1] = 1
        comps.append(tuple(c))
    return tuple(comps)


def _center_map_matrix(spec: GroupSpec) -> list[list[int]]:
    """Integer lift of the weight-to-center map, one column per flat coordinate."""
    st = spec.center()
    n_total = spec.total_rank
    cols = len(st.moduli)
    phi = [[0] * cols for _ in range(n_total)]
    off = 0
    for idx, f in enumerate(spec.factors):
        c0 = st.offsets[idx]
        n = f.n
        if f.ftype == "B":
            phi[off + n - 1][c0] = 1
        elif f.ftype == "C":
            for j in range(n):
                phi[off + j][c0] = 1
        else:
            s_positions = [2 * j for j in range((n - 1) // 2)]
            if n % 2:
                phi[off + n - 2][c0] += 1
                phi[off + n - 1][c0] -= 1
                for p in s_positions:
                    phi[off + p][c0] += 2
            else:
                phi[off + n - 2][c0] += 1
                phi[off + n - 1][c0 + 1] += 1
                for p in s_positions:
                    phi[off + p][c0] += 1
                    phi[off + p][c0 + 1] += 1
        off += n
    return phi


@functools.lru_cache(maxsize=None)
def character_lattice(spec: GroupSpec) -> Sublattice:
    """Sublattice of weights whose center image lies in the relation subgroup.

    One congruence per invariant factor of (center)/(relation subgroup),
    obtained from the Smith form of the relation lattice inside the center.
    """
    st = spec.center()
    t = len(st.moduli)
    n_total = spec.total_rank
    rel_rows = [list(g) for g in relation_subgroup(spec).minimal_generators()]
    for i, m in enumerate(st.moduli):
        row = [0] * t
        row[i] = m
        rel_rows.append(row)
    res = snf(IntMatrix.from_rows(rel_rows, t))
    phi = _center_map_matrix(spec)
    vrows = res.V.row_list()
    constraints = []
    for j in range(t):
        s = res.S.at(j, j)
        if s <= 1:
            continue
        vcol = [vrows[i][j] for i in range(t)]
        row = tuple(
            sum(phi[x][i] * vcol[i] for i in range(t)) for x in range(n_total)
        )
        constraints.append((row, s))
    return solve_congruences(CongruenceSystem.of(n_total, constraints))


@functools.lru_cache(maxsize=None)
def weight_order(spec: GroupSpec, i: int, j: int) -> int:
    """Order of the (i, j) fundamental weight class modulo the character lattice."""
    r = relation_subgroup(spec)
    st = spec.center()
    z = center_image(spec.factors, fundamental_weight(spec, i, j))
    acc = z
    order = 1
    while acc not in r:
        acc = st.add(acc, z)
        order += 1
    return order


def enumerate_subgroups(factors) -> list[RelationSubgroup]:
    """Every subgroup of the center character group, each exactly once."""
    st = center_structure(factors)
    if st.order > 2**20:
        raise CenterTooLarge(f"center order {st.order} exceeds 2**20")
    add = _adder(st.moduli)
    zero = st.zero()
    all_elems = sorted(st.elements())
    trivial = frozenset({zero})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for sub in frontier:
            for g in all_elems:
                if g in sub:
                    continue
                bigger = frozenset(_close(set(sub) | {g}, add))
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    subs = [
        RelationSubgroup(st.moduli, tuple(sorted(s)))
        for s in found
    ]
    subs.sort(key=lambda r: (r.order, r.elements))
    return subs


def spec_for_subgroup(factors, sub: RelationSubgroup) -> GroupSpec:
    return make_spec(factors, sub.minimal_generators())
