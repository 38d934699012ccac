import itertools
import random

import pytest

from invcalc.lattices import (
    CongruenceSystem,
    DimensionMismatch,
    FiniteAbelianGroup,
    InfiniteQuotient,
    IntMatrix,
    NotASubgroup,
    Sublattice,
    lattice_equal,
    lattice_intersection,
    lattice_member,
    lattice_quotient,
    lattice_sum,
    matmul,
    membership_system,
    snf,
    solve_congruences,
)


def det_bareiss(rows):
    # fraction-free determinant, independent of the snf implementation
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def test_intmatrix_shape_validation():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])


def test_snf_identity():
    a = IntMatrix.identity(2)
    res = snf(a)
    assert res.S == a
    assert res.U == IntMatrix.identity(2)
    assert res.V == IntMatrix.identity(2)


def test_snf_already_diagonal():
    a = IntMatrix.from_rows([[1, 0], [0, 0]])
    assert snf(a).invariant_diagonal() == [1, 0]


def test_snf_hand_reduction():
    a = IntMatrix.from_rows([[2, 4], [6, 8]])
    res = snf(a)
    assert res.invariant_diagonal() == [2, 4]
    assert matmul(matmul(res.U, a), res.V) == res.S


def test_snf_random_contracts():
    rng = random.Random(20240817)
    for _ in range(300):
        r = rng.randint(1, 6)
        c = rng.randint(1, 6)
        a = IntMatrix.from_rows(
            [[rng.randint(-50, 50) for _ in range(c)] for _ in range(r)], c
        )
        res = snf(a)
        assert matmul(matmul(res.U, a), res.V) == res.S
        diag = res.invariant_diagonal()
        nz = [x for x in diag if x]
        assert all(x >= 0 for x in diag)
        assert diag[: len(nz)] == nz
        assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
        assert abs(det_bareiss(res.U.row_list())) == 1
        assert abs(det_bareiss(res.V.row_list())) == 1
        if r == c:
            prod = 1
            for x in diag:
                prod *= x
            assert prod == abs(det_bareiss(a.row_list()))


def test_snf_uniqueness_under_row_shuffles():
    rng = random.Random(9)
    base = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    want = snf(IntMatrix.from_rows(base)).invariant_diagonal()
    for _ in range(5):
        rows = base[:]
        rng.shuffle(rows)
        assert snf(IntMatrix.from_rows(rows)).invariant_diagonal() == want


def test_solve_congruences_single_modulus():
    lat = solve_congruences(CongruenceSystem.of(1, [((1,), 4)]))
    assert lat.basis_rows() == [[4]]


def test_solve_congruences_two_dim():
    lat = solve_congruences(CongruenceSystem.of(2, [((1, 1), 2)]))
    assert lat.basis_rows() == [[1, 1], [0, 2]]


def test_solve_congruences_empty():
    lat = solve_congruences(CongruenceSystem.of(2, []))
    assert lattice_equal(lat, Sublattice.full(2))


def test_solve_congruences_exact_equation():
    lat = solve_congruences(CongruenceSystem.of(2, [((1, -1), 0)]))
    assert lat.basis_rows() == [[1, 1]]


def test_solve_congruences_exhaustive_small():
    rng = random.Random(7)
    for _ in range(40):
        m = rng.randint(1, 3)
        cons = []
        for _ in range(rng.randint(0, 3)):
            row = tuple(rng.randint(-4, 4) for _ in range(m))
            mod = rng.choice([0, 2, 3, 4, 6])
            cons.append((row, mod))
        lat = solve_congruences(CongruenceSystem.of(m, cons))
        for v in itertools.product(range(-8, 9), repeat=m):
            sat = all(
                (sum(r * x for r, x in zip(row, v)) % mod == 0)
                if mod
                else (sum(r * x for r, x in zip(row, v)) == 0)
                for row, mod in cons
            )
            assert sat == lattice_member(lat, list(v))


def test_full_rank_when_all_moduli_positive():
    rng = random.Random(3)
    for _ in range(20):
        m = rng.randint(1, 4)
        cons = [
            (tuple(rng.randint(-3, 3) for _ in range(m)), rng.choice([2, 3, 4]))
            for _ in range(rng.randint(1, 3))
        ]
        lat = solve_congruences(CongruenceSystem.of(m, cons))
        assert lat.rank == m


def test_lattice_member_examples():
    two_z = Sublattice.from_generators(1, [[2]])
    assert lattice_member(two_z, [4])
    assert not lattice_member(two_z, [3])
    with pytest.raises(DimensionMismatch):
        lattice_member(two_z, [1, 2])


def test_lattice_sum_gcd():
    a = Sublattice.from_generators(1, [[2]])
    b = Sublattice.from_generators(1, [[3]])
    assert lattice_equal(lattice_sum(a, b), Sublattice.full(1))


def test_lattice_equal_canonical():
    a = Sublattice.from_generators(2, [[1, 1], [0, 2]])
    b = Sublattice.from_generators(2, [[1, -1], [0, 2]])
    assert lattice_equal(a, b)
    assert a.basis == b.basis


def test_lattice_intersection():
    a = Sublattice.from_generators(2, [[2, 0], [0, 1]])
    b = Sublattice.from_generators(2, [[1, 1], [0, 3]])
    inter = lattice_intersection(a, b)
    for v in itertools.product(range(-6, 7), repeat=2):
        assert lattice_member(inter, v) == (
            lattice_member(a, v) and lattice_member(b, v)
        )


def test_quotient_examples():
    big = Sublattice.from_generators(1, [[1]])
    small = Sublattice.from_generators(1, [[2]])
    assert lattice_quotient(big, small).invariant_factors == (2,)

    big = Sublattice.full(2)
    small = Sublattice.from_generators(2, [[2, 0], [0, 2]])
    assert lattice_quotient(big, small).invariant_factors == (2, 2)

    small = Sublattice.from_generators(2, [[2, 2], [4, 0]])
    assert lattice_quotient(big, small).invariant_factors == (2, 4)


def test_quotient_self_is_trivial():
    lat = Sublattice.from_generators(2, [[2, 1], [0, 3]])
    assert lattice_quotient(lat, lat).invariant_factors == ()


def test_quotient_order_is_index_ratio():
    rng = random.Random(11)
    for _ in range(30):
        m = rng.randint(1, 3)
        rows = [[rng.randint(-4, 4) for _ in range(m)] for _ in range(m + 1)]
        big = Sublattice.from_generators(m, rows)
        if big.rank != m:
            continue
        mult = rng.randint(1, 4)
        small = big.scaled(mult)
        q = lattice_quotient(big, small)
        assert q.order == small.index_in_ambient() // big.index_in_ambient()


def test_quotient_errors():
    big = Sublattice.from_generators(2, [[2, 0], [0, 2]])
    outside = Sublattice.from_generators(2, [[1, 0], [0, 2]])
    with pytest.raises(NotASubgroup):
        lattice_quotient(big, outside)
    thin = Sublattice.from_generators(2, [[2, 0]])
    with pytest.raises(InfiniteQuotient):
        lattice_quotient(big, thin)


def test_membership_system_roundtrip():
    lat = Sublattice.from_generators(2, [[2, 1], [0, 3]])
    back = solve_congruences(membership_system(lat))
    assert lattice_equal(back, lat)


def test_finite_abelian_group_validation():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((1,))
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))
    g = FiniteAbelianGroup((2, 4))
    assert g.order == 8
    assert g.elementary_two_rank() is None
    assert FiniteAbelianGroup((2, 2)).elementary_two_rank() == 2
    assert FiniteAbelianGroup(()).is_trivial
