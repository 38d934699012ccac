import itertools

import pytest

from invcalc.rootdata import (
    QForm,
    SimpleFactor,
    cartan_matrix,
    center_image_component,
    coroot_length_sq,
    dominant_representative,
    e_from_fund,
    fund_from_e,
    killing_form,
    killing_form_local,
    orbit_square_stats,
    orbit_square_stats_direct,
    reflect_component,
    reflection_substitution,
    simple_root_vectors,
    weyl_orbit,
)

SMALL_FACTORS = [
    SimpleFactor("B", 1),
    SimpleFactor("B", 2),
    SimpleFactor("B", 3),
    SimpleFactor("C", 1),
    SimpleFactor("C", 2),
    SimpleFactor("C", 3),
    SimpleFactor("D", 3),
    SimpleFactor("D", 4),
]


def test_factor_validation():
    with pytest.raises(ValueError):
        SimpleFactor("D", 2)
    with pytest.raises(ValueError):
        SimpleFactor("B", 0)
    with pytest.raises(ValueError):
        SimpleFactor("E", 6)


def test_cartan_b1():
    assert cartan_matrix(SimpleFactor("B", 1)).row_list() == [[2]]


def test_cartan_b2():
    assert cartan_matrix(SimpleFactor("B", 2)).row_list() == [[2, -1], [-2, 2]]


def test_cartan_c2():
    assert cartan_matrix(SimpleFactor("C", 2)).row_list() == [[2, -2], [-1, 2]]


def test_cartan_d4_fork():
    cm = cartan_matrix(SimpleFactor("D", 4)).row_list()
    # node 2 (index 1) is adjacent to nodes 1, 3, 4
    assert cm[1][0] == cm[1][2] == cm[1][3] == -1
    assert cm[2][3] == cm[3][2] == 0


def test_killing_form_b1():
    assert killing_form_local(SimpleFactor("B", 1)) == QForm({(0, 0): 1})


def test_killing_form_c2():
    assert killing_form_local(SimpleFactor("C", 2)) == QForm({(0, 0): 1, (1, 1): 1})


def test_killing_form_d4():
    want = QForm(
        {
            (0, 0): 1,
            (1, 1): 1,
            (2, 2): 1,
            (3, 3): 1,
            (0, 1): -1,
            (1, 2): -1,
            (1, 3): -1,
        }
    )
    assert killing_form_local(SimpleFactor("D", 4)) == want


def test_killing_form_global_offset():
    factors = [SimpleFactor("B", 2), SimpleFactor("B", 1)]
    q1 = killing_form(factors, 1)
    assert q1 == QForm({(2, 2): 1})


def test_killing_form_weyl_invariance():
    for f in SMALL_FACTORS:
        q = killing_form_local(f)
        for j in range(f.n):
            sub = reflection_substitution(f, j)
            assert q.substituted(sub) == q, (f, j)


def test_center_image_examples():
    assert center_image_component(SimpleFactor("B", 3), (0, 0, 1)) == (1,)
    assert center_image_component(SimpleFactor("C", 2), (1, 1)) == (0,)
    assert center_image_component(SimpleFactor("D", 5), (0, 0, 0, 0, 1)) == (3,)
    assert center_image_component(SimpleFactor("D", 4), (0, 0, 1, 0)) == (1, 0)


def test_center_image_additive():
    import random

    rng = random.Random(5)
    for f in SMALL_FACTORS:
        for _ in range(20):
            a = tuple(rng.randint(-3, 3) for _ in range(f.n))
            b = tuple(rng.randint(-3, 3) for _ in range(f.n))
            za = center_image_component(f, a)
            zb = center_image_component(f, b)
            zab = center_image_component(f, tuple(x + y for x, y in zip(a, b)))
            mods = (2,) if f.ftype in "BC" else ((4,) if f.n % 2 else (2, 2))
            assert zab == tuple((x + y) % m for x, y, m in zip(za, zb, mods))


def test_center_image_b_ignores_early_nodes():
    f = SimpleFactor("B", 3)
    for j in range(f.n - 1):
        comp = [0] * f.n
        comp[j] = 1
        assert center_image_component(f, comp) == (0,)


def test_orbit_b1():
    f = SimpleFactor("B", 1)
    assert weyl_orbit(f, (1,)) == [(-1,), (1,)]


def test_orbit_zero_fixed():
    for f in SMALL_FACTORS:
        assert weyl_orbit(f, (0,) * f.n) == [(0,) * f.n]


def test_orbit_d4_vector():
    assert len(weyl_orbit(SimpleFactor("D", 4), (1, 0, 0, 0))) == 8


def test_orbit_b2_roots():
    f = SimpleFactor("B", 2)
    assert len(weyl_orbit(f, (1, 0))) == 4  # short-root orbit
    assert len(weyl_orbit(f, (0, 2))) == 4  # long-root orbit (twice spin weight)


def test_orbit_sizes_divide_weyl_order():
    for f in SMALL_FACTORS:
        for comp in itertools.product(range(3), repeat=f.n):
            assert f.weyl_order % len(weyl_orbit(f, comp)) == 0


def test_orbit_closed_under_reflections_and_sum_zero():
    for f in SMALL_FACTORS:
        for comp in itertools.product(range(2), repeat=f.n):
            orbit = weyl_orbit(f, comp)
            members = set(orbit)
            total = [0] * f.n
            for w in orbit:
                for j in range(f.n):
                    assert reflect_component(f, w, j) in members
                    total[j] += w[j]
            if any(comp):
                assert not any(total)


def test_orbit_contains_input_any_sign():
    f = SimpleFactor("D", 4)
    comp = (-1, 2, 0, -1)
    assert comp in weyl_orbit(f, comp)


def test_dominant_representative():
    for f in SMALL_FACTORS:
        for comp in itertools.product(range(-2, 2), repeat=f.n):
            dom = dominant_representative(f, comp)
            orbit = weyl_orbit(f, comp)
            assert dom in orbit
            if f.ftype == "C":
                assert list(dom) == sorted((abs(v) for v in comp), reverse=True)
            else:
                assert all(v >= 0 for v in dom)


def test_c_coordinate_roundtrip():
    f = SimpleFactor("C", 4)
    for x in itertools.product(range(-2, 3), repeat=4):
        assert e_from_fund(f, fund_from_e(f, x)) == tuple(x)


def test_simple_roots_c():
    f = SimpleFactor("C", 3)
    assert simple_root_vectors(f) == [(1, -1, 0), (0, 1, -1), (0, 0, 2)]


def test_coroot_lengths():
    assert coroot_length_sq(SimpleFactor("B", 3), 3) == 2
    assert coroot_length_sq(SimpleFactor("B", 3), 1) == 1
    assert coroot_length_sq(SimpleFactor("B", 1), 1) == 1
    assert coroot_length_sq(SimpleFactor("C", 3), 1) == 2
    assert coroot_length_sq(SimpleFactor("C", 3), 3) == 1
    assert coroot_length_sq(SimpleFactor("D", 5), 2) == 1


def test_orbit_stats_fast_equals_direct():
    shapes = [("B", 1), ("B", 2), ("B", 3), ("B", 4), ("C", 1), ("C", 2), ("C", 3),
              ("C", 4), ("D", 3), ("D", 4), ("D", 5)]
    for ftype, n in shapes:
        f = SimpleFactor(ftype, n)
        for comp in itertools.product(range(3), repeat=n):
            assert orbit_square_stats(f, comp) == orbit_square_stats_direct(f, comp)


def test_orbit_stats_direct_matches_literal_square_sum():
    # independent recomputation straight from the orbit list
    for f in [SimpleFactor("B", 2), SimpleFactor("C", 2), SimpleFactor("D", 3)]:
        for comp in itertools.product(range(3), repeat=f.n):
            orbit = weyl_orbit(f, comp)
            acc = {}
            for w in orbit:
                for a in range(f.n):
                    for b in range(a, f.n):
                        c = w[a] * w[b] if a == b else 2 * w[a] * w[b]
                        if c:
                            acc[(a, b)] = acc.get((a, b), 0) + c
            acc = {k: v for k, v in acc.items() if v}
            size, t = orbit_square_stats(f, comp)
            assert size == len(orbit)
            q = killing_form_local(f)
            assert acc == {k: t * v for k, v in q.coeffs.items() if t * v}


def test_qform_substitution_and_arithmetic():
    q = QForm({(0, 0): 2, (0, 1): -1})
    assert (q + q.scaled(-1)).is_zero()
    shifted = q.shifted(3)
    assert shifted == QForm({(3, 3): 2, (3, 4): -1})
