"""Invariant groups of a spec, their closed-form ranks, and generator labels.

Two independent routes produce the reductive invariant group: a lattice
quotient (reductive lattice modulo decomposable lattice) and a closed-form
rank read off the relation subgroup.  ``cross_checks`` compares them and never
reconciles a disagreement silently; mismatches are reported with the
intermediate lattices attached.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import product
from math import log2

from . import f2, forms
from .forms import HypothesisNotSatisfied, _pair_forest
from .groupspec import GroupSpec, relation_subgroup
from .lattices import FiniteAbelianGroup, lattice_equal, lattice_member, lattice_quotient

UNRAMIFIED_NOTE = (
    "every unramified degree-3 invariant is trivial over an algebraically "
    "closed field of characteristic 0"
)


@functools.lru_cache(maxsize=None)
def indecomposable_invariants(spec: GroupSpec) -> FiniteAbelianGroup:
    """Invariant forms modulo decomposable classes."""
    return lattice_quotient(
        forms.invariant_forms_lattice(spec), forms.decomposable_lattice(spec)
    )


@functools.lru_cache(maxsize=None)
def reductive_invariants(spec: GroupSpec) -> FiniteAbelianGroup:
    """Reductive-envelope invariant forms modulo decomposable classes."""
    return lattice_quotient(
        forms.reductive_lattice(spec), forms.decomposable_lattice(spec)
    )


@dataclass(frozen=True)
class RankData:
    rank: int
    quantities: tuple[tuple[str, int], ...]
    index_sets: tuple[tuple[str, tuple[int, ...]], ...] = ()

    def as_dict(self) -> dict:
        out = {"rank": self.rank}
        out.update({k: v for k, v in self.quantities})
        out.update({k: list(v) for k, v in self.index_sets})
        return out


def _dim(count: int) -> int:
    d = round(log2(count))
    if 2**d != count:
        raise AssertionError("subgroup order is not a power of two")
    return d


def _singles(spec: GroupSpec) -> list[int]:
    return [i for i in range(spec.m) if forms._has_single(spec, i)]


def _pair_rank(spec: GroupSpec, pool, pair_in_r) -> int:
    edges = [
        (i, j) for k, i in enumerate(pool) for j in pool[k + 1 :] if pair_in_r(i, j)
    ]
    forest, _ = _pair_forest(pool, edges)
    return len(forest)


def _rank_data_b(spec: GroupSpec) -> RankData:
    r = relation_subgroup(spec)
    m = spec.m
    singles = set(_singles(spec))
    dim_r = _dim(r.order)
    k = m - dim_r
    l1 = sum(1 for i in singles if spec.factors[i].n <= 2)
    pool = [i for i in range(m) if spec.factors[i].n == 1 and i not in singles]
    l2 = _pair_rank(spec, pool, lambda i, j: forms._has_pair(spec, i, j))
    rank = m - k - l1 - l2
    return RankData(rank, (("m", m), ("k", k), ("l1", l1), ("l2", l2)))


def _rank_data_c(spec: GroupSpec) -> RankData:
    r = relation_subgroup(spec)
    m = spec.m
    singles = set(_singles(spec))
    s = sum(1 for f in spec.factors if f.n % 4 == 0)
    off_multiples = {i for i, f in enumerate(spec.factors) if f.n % 4 != 0}
    restricted = [
        e
        for e in r.elements
        if all(e[i] == 0 for i in range(m) if i not in off_multiples)
    ]
    l = _dim(len(restricted))
    l1 = len(singles)
    pool = [
        i
        for i in range(m)
        if spec.factors[i].n % 2 == 1 and i not in singles
    ]
    l2 = _pair_rank(spec, pool, lambda i, j: forms._has_pair(spec, i, j))
    rank = s + l - l1 - l2
    return RankData(rank, (("s", s), ("l", l), ("l1", l1), ("l2", l2)))


def _d_lift(spec: GroupSpec, rbar) -> tuple[int, ...]:
    st = spec.center()
    out = [0] * len(st.moduli)
    for i, f in enumerate(spec.factors):
        if not rbar[i]:
            continue
        if f.n % 2:
            out[st.offsets[i]] = 2
        else:
            out[st.offsets[i]] = 1
            out[st.offsets[i] + 1] = 1
    return tuple(out)


def _d_double_pair_in_r(spec: GroupSpec, i: int, j: int) -> bool:
    st = spec.center()
    out = [0] * len(st.moduli)
    out[st.offsets[i]] = 2
    out[st.offsets[j]] = 2
    return tuple(out) in relation_subgroup(spec)


@dataclass(frozen=True)
class _DData:
    local: tuple[str, ...]
    rbar: tuple[tuple[int, ...], ...]
    rprime: tuple[tuple[int, ...], ...]
    support: tuple[int, ...]
    i1: tuple[int, ...]
    i2: tuple[int, ...]
    l1: int
    l2: int


@functools.lru_cache(maxsize=None)
def _d_data(spec: GroupSpec) -> _DData:
    m = spec.m
    r = relation_subgroup(spec)
    local = tuple(
        forms._classify_local_d(f, forms._local_subgroup(spec, i))
        for i, f in enumerate(spec.factors)
    )
    rbar = tuple(
        rb for rb in product((0, 1), repeat=m) if _d_lift(spec, rb) in r
    )
    support = tuple(
        i
        for i, f in enumerate(spec.factors)
        if f.n % 4 != 0 and local[i] != "full"
    )
    sup = set(support)
    rprime = tuple(
        rb for rb in rbar if all(rb[i] == 0 for i in range(m) if i not in sup)
    )
    i1 = tuple(
        i for i, f in enumerate(spec.factors) if local[i] == "full" and f.n != 3
    )
    i2 = tuple(
        i
        for i, f in enumerate(spec.factors)
        if f.n % 4 == 0
        and (local[i] == "zero" or (local[i] in ("e1", "e2") and f.n >= 6))
    )
    l1 = sum(
        1
        for i, f in enumerate(spec.factors)
        if f.n % 4 != 0
        and (
            (f.n % 2 == 1 and local[i] == "half")
            or (f.n % 2 == 0 and local[i] == "diag")
        )
    )
    pool = [
        i for i, f in enumerate(spec.factors) if f.n % 2 == 1 and local[i] == "zero"
    ]
    l2 = _pair_rank(spec, pool, lambda i, j: _d_double_pair_in_r(spec, i, j))
    return _DData(local, rbar, rprime, support, i1, i2, l1, l2)


def _rank_data_d(spec: GroupSpec) -> RankData:
    d = _d_data(spec)
    l = _dim(len(d.rprime))
    rank = len(d.i1) + len(d.i2) + l - d.l1 - d.l2
    return RankData(
        rank,
        (("s1", len(d.i1)), ("s2", len(d.i2)), ("l", l), ("l1", d.l1), ("l2", d.l2)),
        (
            ("I1", tuple(i + 1 for i in d.i1)),
            ("I2", tuple(i + 1 for i in d.i2)),
        ),
    )


@functools.lru_cache(maxsize=None)
def reductive_rank_data(spec: GroupSpec) -> RankData:
    """Closed-form rank of the reductive invariant group, with its inputs."""
    if spec.ftype == "B":
        return _rank_data_b(spec)
    if spec.ftype == "C":
        return _rank_data_c(spec)
    return _rank_data_d(spec)


def indecomposable_rank_formula(spec: GroupSpec) -> int | None:
    """Closed-form rank of the indecomposable group when a formula applies.

    Type B requires every rank >= 2; type C every rank even; type D has no
    such formula here.  Returns None when no hypothesis holds.
    """
    if spec.ftype == "B":
        if not all(f.n >= 2 for f in spec.factors):
            return None
        r = relation_subgroup(spec)
        m = spec.m
        k = m - _dim(r.order)
        l = sum(
            1
            for i, f in enumerate(spec.factors)
            if f.n == 2 and forms._has_single(spec, i)
        )
        return m - k - l
    if spec.ftype == "C":
        if not all(f.n % 2 == 0 for f in spec.factors):
            return None
        data = dict(reductive_rank_data(spec).quantities)
        return data["s"] + data["l"] - data["l1"]
    return None


@dataclass(frozen=True)
class GeneratorEntry:
    label: str  # e3_phi | Delta | DeltaPrime | e3
    factor: int | None = None  # 1-based factor index, for Delta/DeltaPrime/e3
    vector: tuple[int, ...] | None = None  # relation element, for e3_phi

    def render(self) -> str:
        if self.label == "e3_phi":
            body = "+".join(f"e{i + 1}" for i, x in enumerate(self.vector) if x)
            return f"e3_phi({body or '0'})"
        return f"{self.label}({self.factor})"


@dataclass(frozen=True)
class GeneratorReport:
    entries: tuple[GeneratorEntry, ...]
    kernel_basis: tuple[tuple[int, ...], ...]


def _unit_f2(m: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(m))


def _greedy_quotient_basis(m, kernel_gens, candidates) -> GeneratorReport:
    kernel = f2.reduce_basis(kernel_gens)
    span = list(kernel)
    entries = []
    for vec, entry in candidates:
        grown = f2.reduce_basis(span + [list(vec)])
        if len(grown) > len(span):
            span = grown
            entries.append(entry)
    return GeneratorReport(tuple(entries), tuple(kernel))


@functools.lru_cache(maxsize=None)
def generator_report(spec: GroupSpec) -> GeneratorReport:
    """One labeled generator per basis element of the invariant description.

    Candidates are offered in a canonical order (factor invariants first, then
    relation elements sorted), reduced modulo the vanishing kernel, so labels
    always match the kind of factor or relation element they came from.
    """
    m = spec.m
    if spec.ftype == "B":
        r = relation_subgroup(spec)
        singles = set(_singles(spec))
        kernel = [
            list(_unit_f2(m, i))
            for i in singles
            if spec.factors[i].n <= 2
        ]
        for i in range(m):
            for j in range(i + 1, m):
                if (
                    spec.factors[i].n == 1
                    and spec.factors[j].n == 1
                    and i not in singles
                    and j not in singles
                    and forms._has_pair(spec, i, j)
                ):
                    kernel.append(
                        [a ^ b for a, b in zip(_unit_f2(m, i), _unit_f2(m, j))]
                    )
        candidates = [
            (e, GeneratorEntry("e3_phi", vector=tuple(e)))
            for e in r.elements
            if any(e)
        ]
        return _greedy_quotient_basis(m, kernel, candidates)

    if spec.ftype == "C":
        r = relation_subgroup(spec)
        singles = set(_singles(spec))
        kernel = [list(_unit_f2(m, i)) for i in singles]
        for i in range(m):
            for j in range(i + 1, m):
                if (
                    spec.factors[i].n % 2 == 1
                    and spec.factors[j].n % 2 == 1
                    and i not in singles
                    and j not in singles
                    and forms._has_pair(spec, i, j)
                ):
                    kernel.append(
                        [a ^ b for a, b in zip(_unit_f2(m, i), _unit_f2(m, j))]
                    )
        candidates = [
            (_unit_f2(m, i), GeneratorEntry("Delta", factor=i + 1))
            for i, f in enumerate(spec.factors)
            if f.n % 4 == 0
        ]
        off_multiples = {i for i, f in enumerate(spec.factors) if f.n % 4 != 0}
        for e in r.elements:
            if any(e) and all(e[i] == 0 for i in range(m) if i not in off_multiples):
                candidates.append((e, GeneratorEntry("e3_phi", vector=tuple(e))))
        return _greedy_quotient_basis(m, kernel, candidates)

    d = _d_data(spec)
    rprime_set = set(d.rprime)
    kernel = [list(_unit_f2(m, i)) for i in range(m) if _unit_f2(m, i) in rprime_set]
    for i in range(m):
        for j in range(i + 1, m):
            pair = tuple(
                a ^ b for a, b in zip(_unit_f2(m, i), _unit_f2(m, j))
            )
            if (
                spec.factors[i].n % 2 == 1
                and spec.factors[j].n % 2 == 1
                and pair in rprime_set
                and _unit_f2(m, i) not in rprime_set
                and _unit_f2(m, j) not in rprime_set
            ):
                kernel.append(list(pair))
    candidates = [
        (_unit_f2(m, i), GeneratorEntry("e3", factor=i + 1)) for i in d.i1
    ]
    candidates.extend(
        (_unit_f2(m, i), GeneratorEntry("DeltaPrime", factor=i + 1)) for i in d.i2
    )
    candidates.extend(
        (e, GeneratorEntry("e3_phi", vector=tuple(e))) for e in d.rprime if any(e)
    )
    return _greedy_quotient_basis(m, kernel, candidates)


def unramified_status(spec: GroupSpec) -> str:
    return UNRAMIFIED_NOTE


def cross_checks(spec: GroupSpec, oracle_height: int | None = None) -> dict:
    """Run every verification path and collect verdicts plus mismatch detail.

    Hard failures land in "mismatches"; a strictly weaker (but contained)
    oracle lattice is only a warning since small heights legitimately see
    fewer orbit classes.
    """
    q = forms.invariant_forms_lattice(spec)
    dec = forms.decomposable_lattice(spec)
    red = forms.reductive_lattice(spec)
    ind = indecomposable_invariants(spec)
    redg = reductive_invariants(spec)
    data = reductive_rank_data(spec)
    report = generator_report(spec)
    mismatches = []
    warnings = []

    rank_ok = redg.invariant_factors == (2,) * data.rank
    if not rank_ok:
        mismatches.append(
            {
                "check": "reductive_rank",
                "lattice_path": list(redg.invariant_factors),
                "formula_rank": data.rank,
                "invariant_forms_basis": q.basis_rows(),
                "decomposable_basis": dec.basis_rows(),
                "reductive_basis": red.basis_rows(),
            }
        )

    cor = indecomposable_rank_formula(spec)
    cor_ok = None
    if cor is not None:
        cor_ok = (
            ind.invariant_factors == redg.invariant_factors
            and ind.invariant_factors == (2,) * cor
        )
        if not cor_ok:
            mismatches.append(
                {
                    "check": "indecomposable_formula",
                    "indecomposable": list(ind.invariant_factors),
                    "reductive": list(redg.invariant_factors),
                    "formula_rank": cor,
                }
            )

    gen_ok = len(report.entries) == data.rank
    if not gen_ok:
        mismatches.append(
            {
                "check": "generator_count",
                "generators": [e.render() for e in report.entries],
                "formula_rank": data.rank,
            }
        )

    closed = "n/a"
    try:
        if spec.ftype == "B":
            closed_lat = forms.invariant_forms_closed_b(spec)
        elif spec.ftype == "C":
            closed_lat = forms.invariant_forms_closed_c(spec)
        else:
            closed_lat = None
        if closed_lat is not None:
            closed = "match" if lattice_equal(closed_lat, q) else "mismatch"
            if closed == "mismatch":
                mismatches.append(
                    {
                        "check": "invariant_forms_closed_form",
                        "generic_basis": q.basis_rows(),
                        "closed_basis": closed_lat.basis_rows(),
                    }
                )
    except HypothesisNotSatisfied:
        closed = "n/a"

    oracle = None
    if oracle_height is not None:
        oracle_lat = forms.decomposable_oracle(spec, oracle_height)
        contained = all(
            lattice_member(dec, row) for row in oracle_lat.basis_rows()
        )
        if not contained:
            oracle = "not-contained"
            mismatches.append(
                {
                    "check": "decomposable_oracle",
                    "oracle_basis": oracle_lat.basis_rows(),
                    "closed_basis": dec.basis_rows(),
                    "height": oracle_height,
                }
            )
        elif lattice_equal(oracle_lat, dec):
            oracle = "equal"
        else:
            oracle = "proper-subset"
            warnings.append(
                {
                    "check": "decomposable_oracle",
                    "note": "oracle lattice is strictly smaller at this height",
                    "height": oracle_height,
                }
            )

    return {
        "reductive_rank_matches": rank_ok,
        "corollary_consistent": cor_ok,
        "generator_count_matches": gen_ok,
        "closed_form": closed,
        "oracle": oracle,
        "warnings": warnings,
        "mismatches": mismatches,
    }
