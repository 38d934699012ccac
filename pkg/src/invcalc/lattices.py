"""Exact integer matrix and lattice algebra.

All arithmetic uses Python integers, so every result is exact regardless of
input size.  Sublattices of Z^m are stored as row-generated subgroups with the
basis kept in Hermite normal form; two lattices are equal exactly when their
stored representations are equal.

A congruence system is a list of pairs ``(row, modulus)``: the solution set is
``{x : row . x = 0 (mod modulus)}`` intersected over all constraints.  Modulus
0 encodes an exact equation over the integers, which keeps preimage and kernel
computations in one API.
"""

from __future__ import annotations

from dataclasses import dataclass


class LatticeError(Exception):
    pass


class DimensionMismatch(LatticeError):
    pass


class NotASubgroup(LatticeError):
    pass


class InfiniteQuotient(LatticeError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows*cols")

    @staticmethod
    def from_rows(rows: list[list[int]] | tuple, cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
        else:
            width = cols if cols is not None else 0
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
        flat = tuple(int(x) for r in rows for x in r)
        return IntMatrix(len(rows), width, flat)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def diagonal(self) -> list[int]:
        return [self.at(i, i) for i in range(min(self.rows, self.cols))]


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch("matmul shape mismatch")
    br = b.row_list()
    out = []
    for i in range(a.rows):
        ra = a.row(i)
        acc = [0] * b.cols
        for k, x in enumerate(ra):
            if x:
                rb = br[k]
                for j in range(b.cols):
                    acc[j] += x * rb[j]
        out.append(acc)
    return IntMatrix.from_rows(out, b.cols)


@dataclass(frozen=True)
class SnfResult:
    """Smith decomposition U*A*V = S with unimodular U, V and canonical S."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def invariant_diagonal(self) -> list[int]:
        return self.S.diagonal()


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def snf(a: IntMatrix) -> SnfResult:
    """Smith normal form via extended-gcd 2x2 unimodular transforms.

    Pairwise gcd combinations keep the entry growth polynomial, unlike plain
    division-and-swap pivoting.  The diagonal of S is nonnegative with each
    entry dividing the next, and is the unique such form for the input.
    """
    m, n = a.rows, a.cols
    A = a.row_list()
    U = IntMatrix.identity(m).row_list()
    V = IntMatrix.identity(n).row_list()

    def row_combine(i1, i2, x, y, z, w):
        # rows (i1, i2) <- (x*r1 + y*r2, z*r1 + w*r2); x*w - y*z = +/-1
        for M in (A, U):
            r1, r2 = M[i1], M[i2]
            for j in range(len(r1)):
                a1, a2 = r1[j], r2[j]
                r1[j] = x * a1 + y * a2
                r2[j] = z * a1 + w * a2

    def col_combine(j1, j2, x, y, z, w):
        for r in range(m):
            a1, a2 = A[r][j1], A[r][j2]
            A[r][j1] = x * a1 + y * a2
            A[r][j2] = z * a1 + w * a2
        for r in range(n):
            a1, a2 = V[r][j1], V[r][j2]
            V[r][j1] = x * a1 + y * a2
            V[r][j2] = z * a1 + w * a2

    def row_swap(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def col_swap(j, k):
        for r in range(m):
            A[r][j], A[r][k] = A[r][k], A[r][j]
        for r in range(n):
            V[r][j], V[r][k] = V[r][k], V[r][j]

    def row_add(i, k):  # row i += row k
        Ai, Ak = A[i], A[k]
        for j in range(n):
            Ai[j] += Ak[j]
        Ui, Uk = U[i], U[k]
        for j in range(m):
            Ui[j] += Uk[j]

    t = 0
    while t < min(m, n):
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])

        while True:
            for i in range(t + 1, m):
                if A[i][t]:
                    p, q = A[t][t], A[i][t]
                    if q % p == 0:
                        row_combine(t, i, 1, 0, -(q // p), 1)
                    else:
                        g, x, y = _xgcd(p, q)
                        row_combine(t, i, x, y, -(q // g), p // g)
            for j in range(t + 1, n):
                if A[t][j]:
                    p, q = A[t][t], A[t][j]
                    if q % p == 0:
                        col_combine(t, j, 1, 0, -(q // p), 1)
                    else:
                        g, x, y = _xgcd(p, q)
                        col_combine(t, j, x, y, -(q // g), p // g)
            if all(A[i][t] == 0 for i in range(t + 1, m)):
                break

        if A[t][t] < 0:
            for j in range(n):
                A[t][j] = -A[t][j]
            for j in range(m):
                U[t][j] = -U[t][j]

        d = A[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender)
            continue
        t += 1

    return SnfResult(
        U=IntMatrix.from_rows(U, m),
        S=IntMatrix.from_rows(A, n),
        V=IntMatrix.from_rows(V, n),
    )


def _hnf_rows(rows, ncols: int) -> list[list[int]]:
    """Row Hermite normal form: echelon, positive pivots, reduced above."""
    work = [list(r) for r in rows if any(r)]
    top = 0
    for j in range(ncols):
        pivot = None
        for i in range(top, len(work)):
            if work[i][j]:
                pivot = i
                break
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        wt = work[top]
        for i in range(top + 1, len(work)):
            wi = work[i]
            if not wi[j]:
                continue
            p, q = wt[j], wi[j]
            if q % p == 0:
                f = q // p
                for c in range(j, ncols):
                    wi[c] -= f * wt[c]
            else:
                g, x, y = _xgcd(p, q)
                zf, wf = -(q // g), p // g
                for c in range(j, ncols):
                    a1, a2 = wt[c], wi[c]
                    wt[c] = x * a1 + y * a2
                    wi[c] = zf * a1 + wf * a2
        if wt[j] < 0:
            work[top] = wt = [-x for x in wt]
        p = wt[j]
        for i in range(top):
            q = work[i][j] // p
            if q:
                wi = work[i]
                for c in range(j, ncols):
                    wi[c] -= q * wt[c]
        top += 1
    return [r for r in work[:top]]


@dataclass(frozen=True)
class Sublattice:
    """Finite-rank subgroup of Z^m, basis rows stored in Hermite normal form."""

    ambient_dim: int
    basis: IntMatrix

    @staticmethod
    def from_generators(ambient_dim: int, generators) -> "Sublattice":
        gens = [list(g) for g in generators]
        for g in gens:
            if len(g) != ambient_dim:
                raise DimensionMismatch("generator length does not match ambient dimension")
        rows = _hnf_rows(gens, ambient_dim)
        return Sublattice(ambient_dim, IntMatrix.from_rows(rows, ambient_dim))

    @staticmethod
    def full(ambient_dim: int) -> "Sublattice":
        return Sublattice(ambient_dim, IntMatrix.identity(ambient_dim))

    @staticmethod
    def zero(ambient_dim: int) -> "Sublattice":
        return Sublattice(ambient_dim, IntMatrix.from_rows([], ambient_dim))

    @property
    def rank(self) -> int:
        return self.basis.rows

    def basis_rows(self) -> list[list[int]]:
        return self.basis.row_list()

    def scaled(self, c: int) -> "Sublattice":
        return Sublattice.from_generators(
            self.ambient_dim, [[c * x for x in r] for r in self.basis_rows()]
        )

    def index_in_ambient(self) -> int:
        """Index [Z^m : L] for a full-rank lattice (product of HNF pivots)."""
        if self.rank != self.ambient_dim:
            raise InfiniteQuotient("lattice is not of full rank")
        prod = 1
        for i in range(self.rank):
            prod *= self.basis.at(i, self._pivot_col(i))
        return prod

    def _pivot_col(self, i: int) -> int:
        row = self.basis.row(i)
        for j, v in enumerate(row):
            if v:
                return j
        raise LatticeError("zero basis row")


def _coords_in_hnf(rows: list[list[int]], v) -> list[int] | None:
    """Coefficients expressing v over echelon rows, or None if not a member."""
    v = list(v)
    coeffs = []
    for r in rows:
        p = next(j for j, x in enumerate(r) if x)
        q, rem = divmod(v[p], r[p])
        if rem:
            return None
        if q:
            for j in range(p, len(v)):
                v[j] -= q * r[j]
        coeffs.append(q)
    if any(v):
        return None
    return coeffs


def lattice_member(lat: Sublattice, v) -> bool:
    if len(v) != lat.ambient_dim:
        raise DimensionMismatch("vector length does not match ambient dimension")
    return _coords_in_hnf(lat.basis_rows(), v) is not None


def lattice_sum(a: Sublattice, b: Sublattice) -> Sublattice:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    return Sublattice.from_generators(a.ambient_dim, a.basis_rows() + b.basis_rows())


def lattice_equal(a: Sublattice, b: Sublattice) -> bool:
    return a.ambient_dim == b.ambient_dim and a.basis == b.basis


def left_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : x . M = 0} for the matrix M given by `rows`."""
    nrows = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(nrows)] for i in range(nrows)]
    red = _hnf_rows(aug, ncols + nrows)
    out = []
    for r in red:
        if not any(r[:ncols]):
            out.append(r[ncols:])
    return out


def lattice_intersection(a: Sublattice, b: Sublattice) -> Sublattice:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    ra = a.basis_rows()
    rb = b.basis_rows()
    stacked = ra + rb
    gens = []
    for w in left_kernel(stacked, a.ambient_dim):
        u = w[: len(ra)]
        vec = [0] * a.ambient_dim
        for c, row in zip(u, ra):
            if c:
                for j in range(a.ambient_dim):
                    vec[j] += c * row[j]
        gens.append(vec)
    return Sublattice.from_generators(a.ambient_dim, gens)


@dataclass(frozen=True)
class CongruenceSystem:
    """Constraints (row, modulus) on Z^m; modulus 0 means exact equality."""

    m: int
    constraints: tuple[tuple[tuple[int, ...], int], ...]

    @staticmethod
    def of(m: int, constraints) -> "CongruenceSystem":
        canon = []
        for row, mod in constraints:
            row = tuple(int(x) for x in row)
            if len(row) != m:
                raise DimensionMismatch("constraint row length does not match m")
            if mod < 0:
                raise ValueError("modulus must be nonnegative")
            canon.append((row, int(mod)))
        return CongruenceSystem(m, tuple(canon))


def solve_congruences(sys: CongruenceSystem) -> Sublattice:
    """Solution subgroup of a congruence system as a sublattice of Z^m."""
    active = [(row, mod) for row, mod in sys.constraints if mod != 1]
    if not active:
        return Sublattice.full(sys.m)
    c = len(active)
    # unknowns (x, y): x.A + y.D = 0 where column p of A is the p-th row vector
    stacked = []
    for i in range(sys.m):
        stacked.append([row[i] for row, _ in active])
    for p in range(c):
        stacked.append([active[p][1] if q == p else 0 for q in range(c)])
    gens = [w[: sys.m] for w in left_kernel(stacked, c)]
    return Sublattice.from_generators(sys.m, gens)


def membership_system(lat: Sublattice) -> CongruenceSystem:
    """Congruences cutting out a full-rank lattice inside its ambient Z^m."""
    if lat.rank != lat.ambient_dim:
        raise InfiniteQuotient("membership system needs a full-rank lattice")
    res = snf(lat.basis)
    cons = []
    vr = res.V.row_list()
    n = lat.ambient_dim
    for j in range(n):
        s = res.S.at(j, j)
        col = tuple(vr[i][j] for i in range(n))
        cons.append((col, s))
    return CongruenceSystem.of(n, cons)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group by its invariant factors f1 | f2 | ..., all >= 2."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        for k, f in enumerate(fs):
            if f < 2:
                raise ValueError("invariant factors must be >= 2")
            if k and fs[k] % fs[k - 1]:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        prod = 1
        for f in self.invariant_factors:
            prod *= f
        return prod

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def elementary_two_rank(self) -> int | None:
        """Rank r when the group is (Z/2)^r, else None."""
        if all(f == 2 for f in self.invariant_factors):
            return len(self.invariant_factors)
        return None

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{f}" for f in self.invariant_factors)


TRIVIAL_GROUP = FiniteAbelianGroup(())


def lattice_quotient(big: Sublattice, small: Sublattice) -> FiniteAbelianGroup:
    """Invariant factors of big/small; requires small <= big of equal rank."""
    if big.ambient_dim != small.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if small.rank != big.rank:
        raise InfiniteQuotient(f"ranks differ: {big.rank} vs {small.rank}")
    big_rows = big.basis_rows()
    coords = []
    for r in small.basis_rows():
        c = _coords_in_hnf(big_rows, r)
        if c is None:
            raise NotASubgroup("small lattice is not contained in the big one")
        coords.append(c)
    if not coords:
        return TRIVIAL_GROUP
    res = snf(IntMatrix.from_rows(coords, big.rank))
    factors = []
    for d in res.invariant_diagonal():
        if d == 0:
            raise InfiniteQuotient("quotient has a free part")
        if d > 1:
            factors.append(d)
    return FiniteAbelianGroup(tuple(factors))
