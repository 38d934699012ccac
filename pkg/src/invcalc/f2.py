"""Tiny F2 linear algebra on 0/1 tuples (used for rank bookkeeping)."""

from __future__ import annotations


def reduce_basis(vectors) -> list[tuple[int, ...]]:
    """Row-reduced echelon basis of the span of the given 0/1 vectors."""
    basis: list[list[int]] = []
    pivots: list[int] = []
    for v in vectors:
        v = [x & 1 for x in v]
        for p, b in zip(pivots, basis):
            if v[p]:
                v = [a ^ c for a, c in zip(v, b)]
        if any(v):
            p = next(i for i, x in enumerate(v) if x)
            for k, (pk, bk) in enumerate(zip(pivots, basis)):
                if bk[p]:
                    basis[k] = [a ^ c for a, c in zip(bk, v)]
            basis.append(v)
            pivots.append(p)
    order = sorted(range(len(basis)), key=lambda k: pivots[k])
    return [tuple(basis[k]) for k in order]


def rank(vectors) -> int:
    return len(reduce_basis(vectors))


def in_span(basis: list[tuple[int, ...]], v) -> bool:
    v = [x & 1 for x in v]
    for b in basis:
        p = next(i for i, x in enumerate(b) if x)
        if v[p]:
            v = [a ^ c for a, c in zip(v, b)]
    return not any(v)


def annihilator_basis(vectors, m: int) -> list[tuple[int, ...]]:
    """Canonical basis of {phi : phi . v = 0 for all v} in F2^m."""
    basis = reduce_basis(vectors)
    pivots = [next(i for i, x in enumerate(b) if x) for b in basis]
    free = [j for j in range(m) if j not in pivots]
    out = []
    for j in free:
        phi = [0] * m
        phi[j] = 1
        for b, p in zip(basis, pivots):
            if b[j]:
                phi[p] = 1
        out.append(tuple(phi))
    return reduce_basis(out)
