"""Lattices of Weyl-invariant forms and of decomposable classes.

Everything here lives in "d-coordinates": a vector (d_1, ..., d_m) stands for
the quadratic form sum(d_i * killing_i) on the weight lattice.  The invariant
lattice of a spec consists of those d for which the form has integer
coefficients when rewritten on a basis of the character lattice; since that
basis is triangular, the rewriting is an exact forward substitution and the
integrality conditions become a congruence system on d.

The decomposable lattice has a closed form assembled from unit-vector blocks
and a pair/forest completion, and an independent oracle that generates it from
orbit character sums of bounded dominant weights.  The two are compared by the
verification paths; neither is derived from the other.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from itertools import product
from math import factorial, gcd, lcm

from . import f2, rootdata
from .groupspec import (
    GroupSpec,
    center_image,
    character_lattice,
    relation_subgroup,
    weight_order,
)
from .lattices import (
    CongruenceSystem,
    Sublattice,
    lattice_intersection,
    solve_congruences,
)


class FormsError(Exception):
    pass


class HypothesisNotSatisfied(FormsError):
    pass


class NotInCharLattice(FormsError):
    pass


class WorkBoundExceeded(FormsError):
    pass


class NonIntegralChern(FormsError):
    """Internal consistency failure: an orbit Chern value was not integral."""


ORACLE_WORK_BOUND = 10**7


def _unit(m: int, i: int, c: int = 1) -> tuple[int, ...]:
    v = [0] * m
    v[i] = c
    return tuple(v)


def _single_center_elem(spec: GroupSpec, i: int, local) -> tuple[int, ...]:
    st = spec.center()
    out = [0] * len(st.moduli)
    for k, x in enumerate(local):
        out[st.offsets[i] + k] = x
    return tuple(out)


@functools.lru_cache(maxsize=None)
def invariant_forms_lattice(spec: GroupSpec) -> Sublattice:
    """All d with sum(d_i * killing_i) integral on the character lattice."""
    basis = character_lattice(spec).basis_rows()
    n = spec.total_rank
    m = spec.m
    pairs = [(k, l) for k in range(n) for l in range(k, n)]
    pidx = {p: r for r, p in enumerate(pairs)}
    npairs = len(pairs)

    # column-major sparse symmetric-square matrix; triangular because the
    # character-lattice basis is in echelon form
    cols: list[list[tuple[int, int]]] = [[] for _ in range(npairs)]
    for ri, (i, j) in enumerate(pairs):
        bi, bj = basis[i], basis[j]
        supp_i = [(u, bi[u]) for u in range(n) if bi[u]]
        supp_j = [(v, bj[v]) for v in range(n) if bj[v]]
        acc: dict[tuple[int, int], int] = {}
        for u, a in supp_i:
            for v, b in supp_j:
                key = (u, v) if u <= v else (v, u)
                acc[key] = acc.get(key, 0) + a * b
        for key, val in acc.items():
            if val:
                r = pidx[key]
                if r < ri:
                    raise AssertionError("symmetric square lost triangularity")
                cols[r].append((ri, val))

    solutions = []
    for fi in range(m):
        c = [0] * npairs
        for key, val in rootdata.killing_form(spec.factors, fi).coeffs.items():
            c[pidx[key]] = val
        y = [Fraction(0)] * npairs
        for r in range(npairs):
            s = Fraction(c[r])
            dval = None
            for rp, val in cols[r]:
                if rp == r:
                    dval = val
                else:
                    if y[rp]:
                        s -= y[rp] * val
            if dval is None:
                raise AssertionError("missing diagonal in symmetric square")
            y[r] = s / dval
        solutions.append(y)

    constraints = []
    for r in range(npairs):
        mod = 1
        for fi in range(m):
            mod = lcm(mod, solutions[fi][r].denominator)
        if mod == 1:
            continue
        row = tuple(int(solutions[fi][r] * mod) for fi in range(m))
        constraints.append((row, mod))
    return solve_congruences(CongruenceSystem.of(m, constraints))


def _r_as_f2(spec: GroupSpec):
    return [tuple(e) for e in relation_subgroup(spec).elements]


def _has_single(spec: GroupSpec, i: int) -> bool:
    return _single_center_elem(spec, i, (1,)) in relation_subgroup(spec)


def _has_pair(spec: GroupSpec, i: int, j: int) -> bool:
    st = spec.center()
    out = [0] * len(st.moduli)
    out[st.offsets[i]] = 1
    out[st.offsets[j]] = 1
    return tuple(out) in relation_subgroup(spec)


def _splits_as_singles_plus_pairs(spec: GroupSpec) -> bool:
    m = spec.m
    gens = []
    for i in range(m):
        if _has_single(spec, i):
            gens.append(_unit(m, i))
    for i in range(m):
        for j in range(i + 1, m):
            if (
                not _has_single(spec, i)
                and not _has_single(spec, j)
                and _has_pair(spec, i, j)
            ):
                gens.append(tuple(a + b for a, b in zip(_unit(m, i), _unit(m, j))))
    order = relation_subgroup(spec).order
    return 2 ** f2.rank(gens) == order


def _annihilator_rows(spec: GroupSpec):
    return f2.annihilator_basis(_r_as_f2(spec), spec.m)


@functools.lru_cache(maxsize=None)
def invariant_forms_closed_b(spec: GroupSpec) -> Sublattice:
    """Type B congruence description of the invariant-form lattice."""
    if spec.ftype != "B":
        raise HypothesisNotSatisfied("closed form applies to type B specs")
    if not (
        all(f.n >= 2 for f in spec.factors) or _splits_as_singles_plus_pairs(spec)
    ):
        raise HypothesisNotSatisfied(
            "needs every rank >= 2 or a relation subgroup split into singles and pairs"
        )
    delta = [
        2 if (f.n >= 2 or _has_single(spec, i)) else 1
        for i, f in enumerate(spec.factors)
    ]
    constraints = [
        (tuple(phi[j] * delta[j] for j in range(spec.m)), 4)
        for phi in _annihilator_rows(spec)
    ]
    return solve_congruences(CongruenceSystem.of(spec.m, constraints))


@functools.lru_cache(maxsize=None)
def invariant_forms_closed_c(spec: GroupSpec) -> Sublattice:
    """Type C congruence description of the invariant-form lattice."""
    if spec.ftype != "C":
        raise HypothesisNotSatisfied("closed form applies to type C specs")
    if not (
        all(f.n % 2 == 0 for f in spec.factors) or _splits_as_singles_plus_pairs(spec)
    ):
        raise HypothesisNotSatisfied(
            "needs every rank even or a relation subgroup split into singles and pairs"
        )
    weight = [
        2 if _has_single(spec, i) else f.n for i, f in enumerate(spec.factors)
    ]
    constraints = [
        (tuple(phi[j] * weight[j] for j in range(spec.m)), 4)
        for phi in _annihilator_rows(spec)
    ]
    return solve_congruences(CongruenceSystem.of(spec.m, constraints))


def orbit_chern_vector(spec: GroupSpec, weight) -> tuple[int, ...]:
    """Coefficients d with c2 of the weight's orbit character equal to sum(d_i q_i).

    The orbit of a product weight is the product of per-factor orbits, and the
    per-factor orbit sums have no cross terms, so the answer factors: each d_i
    is -1/2 times the per-factor square sum scaled by the other orbit sizes.
    """
    weight = tuple(tuple(int(x) for x in comp) for comp in weight)
    if len(weight) != spec.m:
        raise ValueError("weight must have one component per factor")
    for f, comp in zip(spec.factors, weight):
        if len(comp) != f.n:
            raise ValueError("component length does not match factor rank")
    z = center_image(spec.factors, weight)
    if z not in relation_subgroup(spec):
        raise NotInCharLattice(f"weight has center image {z} outside the relation subgroup")
    stats = [
        rootdata.orbit_square_stats(f, comp) for f, comp in zip(spec.factors, weight)
    ]
    total = 1
    for size, _ in stats:
        total *= size
    out = []
    for size, t in stats:
        num = (total // size) * t
        if num % 2:
            raise NonIntegralChern("orbit square sum is odd")
        out.append(-(num // 2))
    return tuple(out)


def _pair_forest(vertices, edges):
    """Spanning forest and component representatives, deterministically."""
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    forest = []
    for i, j in sorted(edges):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
            forest.append((i, j))
    reps = sorted({find(v) for v in vertices})
    return forest, reps


def _local_subgroup(spec: GroupSpec, i: int):
    """Elements of the relation subgroup supported on factor i only."""
    st = spec.center()
    off, w = st.offsets[i], st.widths[i]
    out = []
    for e in relation_subgroup(spec).elements:
        if any(e[k] for k in range(len(e)) if not off <= k < off + w):
            continue
        out.append(e[off : off + w])
    return sorted(out)


def _classify_local_d(f, local) -> str:
    if f.n % 2:
        if len(local) == 4:
            return "full"
        if len(local) == 2:
            return "half"
        return "zero"
    if len(local) == 4:
        return "full"
    if len(local) == 1:
        return "zero"
    other = next(e for e in local if any(e))
    if other == (1, 1):
        return "diag"
    return "e1" if other == (1, 0) else "e2"


@functools.lru_cache(maxsize=None)
def decomposable_lattice(spec: GroupSpec) -> Sublattice:
    """Closed-form lattice of decomposable classes in d-coordinates."""
    m = spec.m
    gens: list[tuple[int, ...]] = []
    if spec.ftype in ("B", "C"):
        pool = []
        for i, f in enumerate(spec.factors):
            single = _has_single(spec, i)
            if spec.ftype == "B":
                if single and f.n <= 2:
                    gens.append(_unit(m, i))
                elif f.n >= 2:
                    gens.append(_unit(m, i, 2))
                else:
                    pool.append(i)
            else:
                if single:
                    gens.append(_unit(m, i))
                elif f.n % 2 == 0:
                    gens.append(_unit(m, i, 2))
                else:
                    pool.append(i)
        edges = [
            (i, j)
            for k, i in enumerate(pool)
            for j in pool[k + 1 :]
            if _has_pair(spec, i, j)
        ]
        forest, reps = _pair_forest(pool, edges)
        for i, j in forest:
            v = [0] * m
            v[i] = v[j] = 2
            gens.append(tuple(v))
        for i in reps:
            gens.append(_unit(m, i, 4))
        return Sublattice.from_generators(m, gens)

    st = spec.center()
    pool = []
    for i, f in enumerate(spec.factors):
        kind = _classify_local_d(f, _local_subgroup(spec, i))
        if f.n % 2:
            if f.n == 3 and kind == "full":
                gens.append(_unit(m, i))
            elif kind != "zero":
                gens.append(_unit(m, i, 2))
            else:
                pool.append(i)
        else:
            if f.n == 4:
                gens.append(_unit(m, i, 2 if kind != "zero" else 4))
            elif kind in ("diag", "full"):
                gens.append(_unit(m, i, 2))
            else:
                gens.append(_unit(m, i, 4))

    def double_pair(i, j):
        out = [0] * len(st.moduli)
        out[st.offsets[i]] = 2
        out[st.offsets[j]] = 2
        return tuple(out)

    rsub = relation_subgroup(spec)
    edges = [
        (i, j)
        for k, i in enumerate(pool)
        for j in pool[k + 1 :]
        if double_pair(i, j) in rsub
    ]
    forest, reps = _pair_forest(pool, edges)
    for i, j in forest:
        v = [0] * m
        v[i] = v[j] = 4
        gens.append(tuple(v))
    for i in reps:
        gens.append(_unit(m, i, 8))
    return Sublattice.from_generators(m, gens)


def oracle_work(spec: GroupSpec) -> int:
    w = 1
    for f in spec.factors:
        w *= 2**f.n * factorial(f.n)
    return w


@functools.lru_cache(maxsize=None)
def _component_table(f, height: int):
    """Per-factor map center image -> orbit size -> reduced square-sum reps.

    Depends only on the factor and the height, so it is shared across specs.
    For fixed image and orbit size the generated lattice only needs one
    square-sum representative plus the gcd step between representatives, so
    each bucket is reduced to at most two values.
    """
    buckets: dict[tuple, dict[int, set[int]]] = {}
    for fund in product(range(height + 1), repeat=f.n):
        comp = rootdata.e_from_fund(f, fund) if f.ftype == "C" else fund
        z = rootdata.center_image_component(f, comp)
        size, t = rootdata.orbit_square_stats(f, comp)
        buckets.setdefault(z, {}).setdefault(size, set()).add(t)
    table: dict[tuple, list[tuple[int, int]]] = {}
    for z, by_size in buckets.items():
        opts = []
        for size in sorted(by_size):
            ts = sorted(by_size[size])
            t0 = ts[0]
            step = 0
            for t in ts[1:]:
                step = gcd(step, t - t0)
            opts.append((size, t0))
            if step:
                opts.append((size, t0 + step))
        table[z] = opts
    return table


def decomposable_oracle(spec: GroupSpec, height: int = 2) -> Sublattice:
    """Lattice generated by orbit Chern vectors of small dominant weights.

    Enumerates every dominant weight of the character lattice whose
    fundamental-weight coefficients lie in [0, height] and collects the
    lattice generated by their orbit Chern vectors.
    """
    if height < 0:
        raise ValueError("height must be >= 0")
    work = oracle_work(spec)
    if work > ORACLE_WORK_BOUND:
        raise WorkBoundExceeded(
            f"orbit work estimate {work} exceeds bound {ORACLE_WORK_BOUND}"
        )
    st = spec.center()
    rsub = relation_subgroup(spec)
    tables = [_component_table(f, height) for f in spec.factors]
    gens: set[tuple[int, ...]] = set()
    for z in rsub.elements:
        opt_lists = []
        feasible = True
        for i in range(spec.m):
            local = st.component(z, i)
            opts = tables[i].get(local)
            if not opts:
                feasible = False
                break
            opt_lists.append(opts)
        if not feasible:
            continue
        for combo in product(*opt_lists):
            total = 1
            for size, _ in combo:
                total *= size
            vec = []
            for size, t in combo:
                num = (total // size) * t
                if num % 2:
                    raise NonIntegralChern("orbit square sum is odd")
                vec.append(-(num // 2))
            gens.add(tuple(vec))
    return Sublattice.from_generators(spec.m, sorted(gens))


@functools.lru_cache(maxsize=None)
def reductive_lattice(spec: GroupSpec) -> Sublattice:
    """Invariant forms whose coefficients satisfy the fundamental-weight
    order divisibilities of a strict reductive envelope."""
    q = invariant_forms_lattice(spec)
    constraints = []
    for i, f in enumerate(spec.factors):
        need = 1
        for j in range(1, f.n + 1):
            o = weight_order(spec, i, j)
            th = rootdata.coroot_length_sq(f, j)
            need = lcm(need, o // gcd(o, th))
        if need > 1:
            constraints.append((_unit(spec.m, i), need))
    if not constraints:
        return q
    div = solve_congruences(CongruenceSystem.of(spec.m, constraints))
    return lattice_intersection(q, div)
