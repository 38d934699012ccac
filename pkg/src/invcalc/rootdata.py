"""Root-system data for the families B, C, D.

Weights of a single factor are integer coefficient tuples.  For types B and D
the coordinates are taken on the fundamental-weight basis; for type C the
standard orthogonal basis is itself a basis of the weight lattice and the
coordinates are taken there, which makes the killing form diagonal and the
center map a plain coefficient sum.  Conversion helpers between the two
coordinate systems are provided for type C.

Orbit enumeration is breadth-first closure under the simple reflections, with
a vectorized core for large orbits and a pure-Python fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .lattices import IntMatrix

FACTOR_TYPES = ("B", "C", "D")


@dataclass(frozen=True, order=True)
class SimpleFactor:
    ftype: str
    n: int

    def __post_init__(self):
        if self.ftype not in FACTOR_TYPES:
            raise ValueError(f"unknown factor type {self.ftype!r}")
        if self.ftype in ("B", "C") and self.n < 1:
            raise ValueError(f"rank must be >= 1 for type {self.ftype}")
        if self.ftype == "D" and self.n < 3:
            raise ValueError("rank must be >= 3 for type D")

    @property
    def weyl_order(self) -> int:
        if self.ftype == "D":
            return 2 ** (self.n - 1) * factorial(self.n)
        return 2**self.n * factorial(self.n)


class QForm:
    """Integer quadratic form as a finitely supported map on index pairs.

    Keys are pairs (k, l) with k <= l referring to global basis indices; zero
    coefficients are dropped, so equal forms compare equal as objects.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for (k, l), c in dict(coeffs).items():
                if k > l:
                    k, l = l, k
                if c:
                    d[(k, l)] = int(c)
        self.coeffs = d

    def __eq__(self, other):
        return isinstance(other, QForm) and self.coeffs == other.coeffs

    def __repr__(self):
        items = ", ".join(f"{k}: {c}" for k, c in sorted(self.coeffs.items()))
        return f"QForm({{{items}}})"

    def __add__(self, other: "QForm") -> "QForm":
        d = dict(self.coeffs)
        for k, c in other.coeffs.items():
            d[k] = d.get(k, 0) + c
        return QForm(d)

    def scaled(self, c: int) -> "QForm":
        return QForm({k: c * v for k, v in self.coeffs.items()})

    def shifted(self, offset: int) -> "QForm":
        return QForm({(k + offset, l + offset): c for (k, l), c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def substituted(self, images: dict[int, list[tuple[int, int]]]) -> "QForm":
        """Apply a linear substitution basis_index -> sum of (index, coeff)."""
        out: dict[tuple[int, int], int] = {}
        for (k, l), c in self.coeffs.items():
            ik = images.get(k, [(k, 1)])
            il = images.get(l, [(l, 1)])
            for (u, a) in ik:
                for (v, b) in il:
                    key = (u, v) if u <= v else (v, u)
                    out[key] = out.get(key, 0) + c * a * b
        return QForm(out)


def cartan_matrix(f: SimpleFactor) -> IntMatrix:
    """Cartan matrix with entry (i, j) = <alpha_j, alpha_i-check>."""
    n = f.n
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
    if f.ftype in ("B", "C"):
        for i in range(n - 1):
            rows[i][i + 1] = -1
            rows[i + 1][i] = -1
        if n >= 2:
            if f.ftype == "B":
                rows[n - 1][n - 2] = -2
            else:
                rows[n - 2][n - 1] = -2
    else:
        for i in range(n - 2):
            rows[i][i + 1] = -1
            rows[i + 1][i] = -1
        rows[n - 3][n - 1] = -1
        rows[n - 1][n - 3] = -1
    return IntMatrix.from_rows(rows, n)


def coroot_length_sq(f: SimpleFactor, j: int) -> int:
    """Squared length of the coroot at node j (1-based)."""
    if not 1 <= j <= f.n:
        raise ValueError("node index out of range")
    if f.ftype == "B":
        return 2 if (j == f.n and f.n >= 2) else 1
    if f.ftype == "C":
        return 1 if j == f.n else 2
    return 1


def simple_root_vectors(f: SimpleFactor) -> list[tuple[int, ...]]:
    """Simple roots in the factor's own coordinates."""
    n = f.n
    if f.ftype == "C":
        out = []
        for j in range(n - 1):
            v = [0] * n
            v[j], v[j + 1] = 1, -1
            out.append(tuple(v))
        v = [0] * n
        v[n - 1] = 2
        out.append(tuple(v))
        return out
    cm = cartan_matrix(f)
    return [tuple(cm.at(i, j) for i in range(n)) for j in range(n)]


def fund_from_e(f: SimpleFactor, x) -> tuple[int, ...]:
    """Type C: fundamental-weight coefficients from orthogonal coordinates."""
    if f.ftype != "C":
        raise ValueError("orthogonal integer coordinates are only used for type C")
    n = f.n
    x = list(x)
    return tuple(x[j] - x[j + 1] for j in range(n - 1)) + (x[n - 1],)


def e_from_fund(f: SimpleFactor, a) -> tuple[int, ...]:
    """Type C: orthogonal coordinates from fundamental-weight coefficients."""
    if f.ftype != "C":
        raise ValueError("orthogonal integer coordinates are only used for type C")
    out = []
    total = 0
    for coeff in reversed(list(a)):
        total += coeff
        out.append(total)
    return tuple(reversed(out))


def killing_form_local(f: SimpleFactor) -> QForm:
    """Normalized killing form of one factor on local indices 0..n-1."""
    n = f.n
    if f.ftype == "C":
        return QForm({(j, j): 1 for j in range(n)})
    if f.ftype == "B":
        if n == 1:
            return QForm({(0, 0): 1})
        d = {(j, j): 1 for j in range(n - 1)}
        d[(n - 1, n - 1)] = 2
        d[(n - 2, n - 1)] = d.get((n - 2, n - 1), 0) - 2
        for j in range(n - 2):
            d[(j, j + 1)] = d.get((j, j + 1), 0) - 1
        return QForm(d)
    d = {(j, j): 1 for j in range(n)}
    for j in range(n - 2):
        d[(j, j + 1)] = d.get((j, j + 1), 0) - 1
    d[(n - 3, n - 1)] = d.get((n - 3, n - 1), 0) - 1
    return QForm(d)


def killing_form(factors, i: int) -> QForm:
    """Killing form of factor i placed on the global coordinate block."""
    offset = sum(f.n for f in factors[:i])
    return killing_form_local(factors[i]).shifted(offset)


def center_moduli(f: SimpleFactor) -> tuple[int, ...]:
    """Cyclic moduli of the factor's center character group."""
    if f.ftype in ("B", "C"):
        return (2,)
    if f.n % 2:
        return (4,)
    return (2, 2)


def center_image_component(f: SimpleFactor, comp) -> tuple[int, ...]:
    """Image of a weight component in the factor's center character group."""
    comp = list(comp)
    if len(comp) != f.n:
        raise ValueError("coefficient vector length does not match rank")
    n = f.n
    if f.ftype == "B":
        return (comp[n - 1] % 2,)
    if f.ftype == "C":
        return (sum(comp) % 2,)
    s = sum(comp[2 * j] for j in range((n - 1) // 2))
    if n % 2:
        return ((comp[n - 2] - comp[n - 1] + 2 * s) % 4,)
    return ((comp[n - 2] + s) % 2, (comp[n - 1] + s) % 2)


def reflect_component(f: SimpleFactor, comp, j: int) -> tuple[int, ...]:
    """Simple reflection s_j (0-based node) in the factor's own coordinates."""
    comp = list(comp)
    if f.ftype == "C":
        if j < f.n - 1:
            comp[j], comp[j + 1] = comp[j + 1], comp[j]
        else:
            comp[j] = -comp[j]
        return tuple(comp)
    col = [cartan_matrix(f).at(i, j) for i in range(f.n)]
    aj = comp[j]
    if aj:
        for i in range(f.n):
            comp[i] -= aj * col[i]
    return tuple(comp)


def reflection_substitution(f: SimpleFactor, j: int, offset: int = 0):
    """Action of s_j on basis symbols, for substituting into a QForm."""
    n = f.n
    if f.ftype == "C":
        if j < n - 1:
            return {
                offset + j: [(offset + j + 1, 1)],
                offset + j + 1: [(offset + j, 1)],
            }
        return {offset + j: [(offset + j, -1)]}
    col = [cartan_matrix(f).at(i, j) for i in range(n)]
    img = [(offset + i, -col[i]) for i in range(n) if i != j and col[i]]
    img.append((offset + j, -1))
    return {offset + j: sorted(img)}


def dominant_representative(f: SimpleFactor, comp) -> tuple[int, ...]:
    """The unique dominant element of the component's Weyl orbit.

    Stays in the factor's own coordinates (orthogonal ones for type C, where
    dominance means weakly decreasing nonnegative coordinates).
    """
    if f.ftype == "C":
        return tuple(sorted((abs(v) for v in comp), reverse=True))
    comp = tuple(comp)
    while True:
        for j in range(f.n):
            if comp[j] < 0:
                comp = reflect_component(f, comp, j)
                break
        else:
            return comp


def _orbit_tuples_py(f: SimpleFactor, comp) -> set[tuple[int, ...]]:
    seen = {tuple(comp)}
    frontier = [tuple(comp)]
    while frontier:
        nxt = []
        for w in frontier:
            for j in range(f.n):
                r = reflect_component(f, w, j)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


def _orbit_object_array(f: SimpleFactor, comp) -> np.ndarray:
    rows = sorted(_orbit_tuples_py(f, comp))
    arr = np.empty((len(rows), f.n), dtype=object)
    for i, r in enumerate(rows):
        arr[i, :] = r
    return arr


def _orbit_array(f: SimpleFactor, comp) -> np.ndarray:
    """Weyl orbit as an int64 array; falls back to Python sets on big entries.

    Rows are deduplicated through a packed integer key, so coordinates must
    stay below 2**(62//n - 1) in magnitude; anything larger (or any rank too
    big to pack) goes through the exact pure-Python path.
    """
    n = f.n
    key_bits = min(62 // n, 20)  # keeps packed keys and gram sums inside int64
    enc_off = 1 << (key_bits - 1) if key_bits >= 2 else 0
    if enc_off < 2 or max((abs(v) for v in comp), default=0) >= enc_off:
        return _orbit_object_array(f, comp)
    if f.ftype == "C":
        cols = None
    else:
        cm = cartan_matrix(f)
        cols = np.array(
            [[cm.at(i, j) for i in range(n)] for j in range(n)], dtype=np.int64
        )
    start = np.array([list(comp)], dtype=np.int64)
    powers = (np.int64(1) << key_bits) ** np.arange(n, dtype=np.int64)

    def encode(arr):
        return (arr + enc_off) @ powers

    seen_keys = encode(start)
    chunks = [start]
    frontier = start
    while frontier.shape[0]:
        cands = []
        for j in range(n):
            # skip vectors the reflection fixes
            if f.ftype == "C" and j < n - 1:
                moved = frontier[:, j] != frontier[:, j + 1]
            else:
                moved = frontier[:, j] != 0
            if not moved.any():
                continue
            sub = frontier[moved]
            if f.ftype == "C":
                refl = sub.copy()
                if j < n - 1:
                    refl[:, [j, j + 1]] = refl[:, [j + 1, j]]
                else:
                    refl[:, j] = -refl[:, j]
            else:
                refl = sub - sub[:, j : j + 1] * cols[j][None, :]
            cands.append(refl)
        if not cands:
            break
        cand = np.vstack(cands)
        if int(np.abs(cand).max(initial=0)) >= enc_off:
            return _orbit_object_array(f, comp)
        uniq_keys, first_idx = np.unique(encode(cand), return_index=True)
        new_mask = ~np.isin(uniq_keys, seen_keys, assume_unique=True)
        fresh = cand[first_idx[new_mask]]
        if fresh.shape[0]:
            seen_keys = np.union1d(seen_keys, uniq_keys[new_mask])
            chunks.append(fresh)
        frontier = fresh
    return np.vstack(chunks)


def weyl_orbit(f: SimpleFactor, comp) -> list[tuple[int, ...]]:
    """Full Weyl orbit of a weight component, sorted lexicographically."""
    comp = tuple(int(v) for v in comp)
    if len(comp) != f.n:
        raise ValueError("coefficient vector length does not match rank")
    arr = _orbit_array(f, comp)
    return sorted(tuple(int(v) for v in row) for row in arr.tolist())


def doubled_orthogonal_coords(f: SimpleFactor, comp) -> tuple[int, ...]:
    """Twice the orthogonal coordinates of a weight component (always integral).

    Types B and D have half-integral spin coordinates, so everything is
    scaled by 2 once and for all.
    """
    n = f.n
    comp = list(comp)
    if f.ftype == "C":
        return tuple(2 * v for v in comp)
    if f.ftype == "B":
        out = []
        for k in range(n):
            out.append(2 * sum(comp[k : n - 1]) + comp[n - 1])
        return tuple(out)
    out = []
    for k in range(n - 1):
        out.append(2 * sum(comp[k : n - 2]) + comp[n - 2] + comp[n - 1])
    out.append(comp[n - 1] - comp[n - 2])
    return tuple(out)


def _killing_to_sum_of_squares_quarters(f: SimpleFactor) -> int:
    """4c where the killing form equals c * (sum of squared orthogonal coords)."""
    if f.ftype == "C":
        return 4
    if f.ftype == "B" and f.n == 1:
        return 1
    return 2


_ORBIT_STATS_CACHE: dict[tuple[str, int, tuple[int, ...]], tuple[int, int]] = {}


def orbit_square_stats(f: SimpleFactor, comp) -> tuple[int, int]:
    """(orbit size, t) where the orbit's sum of squared weights is t * killing.

    Works in orthogonal coordinates, where the Weyl group acts by signed
    permutations (even sign changes for type D): the orbit size is a
    multinomial count, and the orbit's squared-weight sum is forced onto a
    multiple of the killing form by invariance, pinned down by contracting
    with the invariant bilinear form.  ``orbit_square_stats_direct`` computes
    the same data from the materialized orbit; the two are compared in tests.
    """
    comp = dominant_representative(f, tuple(int(v) for v in comp))
    key = (f.ftype, f.n, comp)
    hit = _ORBIT_STATS_CACHE.get(key)
    if hit is not None:
        return hit
    n = f.n
    dbl = doubled_orthogonal_coords(f, comp)
    counts: dict[int, int] = {}
    for v in dbl:
        counts[abs(v)] = counts.get(abs(v), 0) + 1
    perms = factorial(n)
    for c in counts.values():
        perms //= factorial(c)
    nonzero = n - counts.get(0, 0)
    if f.ftype == "D" and nonzero == n:
        size = perms * 2 ** (nonzero - 1)
    else:
        size = perms * 2**nonzero
    ssq = sum(v * v for v in dbl)
    num = size * ssq
    den = n * _killing_to_sum_of_squares_quarters(f)
    t, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("orbit square sum is not a killing multiple")
    _ORBIT_STATS_CACHE[key] = (size, t)
    return (size, t)


def orbit_square_stats_direct(f: SimpleFactor, comp) -> tuple[int, int]:
    """Orbit size and killing multiple from the materialized Weyl orbit.

    Enumerates the orbit by reflection closure, accumulates the Gram matrix of
    all orbit elements, and matches it coefficient by coefficient against the
    killing form.
    """
    comp = dominant_representative(f, tuple(int(v) for v in comp))
    if not any(comp):
        return (1, 0)
    arr = _orbit_array(f, comp)
    size = arr.shape[0]
    if arr.dtype == object:
        gram = [[0] * f.n for _ in range(f.n)]
        for row in arr.tolist():
            for a in range(f.n):
                if row[a]:
                    for b in range(a, f.n):
                        gram[a][b] += row[a] * row[b]
    else:
        g = arr.T.astype(np.int64) @ arr.astype(np.int64)
        gram = [[int(g[a, b]) for b in range(f.n)] for a in range(f.n)]
    q = killing_form_local(f).coeffs
    t = None
    collected = {}
    for a in range(f.n):
        for b in range(a, f.n):
            coeff = gram[a][b] if a == b else 2 * gram[a][b]
            if coeff:
                collected[(a, b)] = coeff
    for key2 in sorted(q):
        if key2 in collected:
            val, rem = divmod(collected[key2], q[key2])
            if rem:
                raise ArithmeticError("orbit square sum is not a killing multiple")
            t = val
            break
    if t is None:
        t = 0
    expected = {k: t * v for k, v in q.items() if t * v}
    if expected != collected:
        raise ArithmeticError("orbit square sum is not a killing multiple")
    return (size, t)
