import pytest

from invcalc.groupspec import (
    CenterTooLarge,
    GroupSpec,
    MalformedGenerator,
    SpecError,
    adjoint,
    center_image,
    center_structure,
    character_lattice,
    enumerate_subgroups,
    fundamental_weight,
    make_spec,
    relation_subgroup,
    simply_connected,
    spec_for_subgroup,
    weight_order,
)
from invcalc.lattices import lattice_equal, lattice_member, Sublattice
from invcalc.rootdata import SimpleFactor, simple_root_vectors

from conftest import CORPUS_SHAPES, corpus_specs, factor_lists


def test_mixed_types_rejected():
    with pytest.raises(SpecError):
        make_spec([("B", 2), ("C", 2)])


def test_malformed_generator():
    with pytest.raises(MalformedGenerator):
        GroupSpec((SimpleFactor("B", 1),), ((1, 0),))
    with pytest.raises(MalformedGenerator):
        GroupSpec((SimpleFactor("D", 3),), ((5,),))


def test_center_structure_shapes():
    st = center_structure(
        [SimpleFactor("D", 3), SimpleFactor("D", 4)]
    )
    assert st.moduli == (4, 2, 2)
    assert st.offsets == (0, 1)
    assert st.widths == (1, 2)
    assert st.order == 16


def test_closure_examples():
    spec = make_spec([("B", 1), ("B", 1)], [(1, 1)])
    r = relation_subgroup(spec)
    assert r.elements == ((0, 0), (1, 1))

    spec = make_spec([("D", 5)], [(1,)])
    assert relation_subgroup(spec).order == 4

    spec = make_spec([("D", 5)], [(2,)])
    assert relation_subgroup(spec).elements == ((0,), (2,))


def test_char_lattice_simply_connected_is_identity():
    spec = simply_connected([("B", 2), ("B", 3)])
    lat = character_lattice(spec)
    assert lattice_equal(lat, Sublattice.full(5))


def test_char_lattice_b1_adjoint():
    spec = adjoint([("B", 1)])
    assert character_lattice(spec).basis_rows() == [[2]]


def test_char_lattice_c2_adjoint_is_root_lattice():
    spec = adjoint([("C", 2)])
    assert character_lattice(spec).basis_rows() == [[1, 1], [0, 2]]


def test_char_lattice_index_matches_center_quotient():
    for shape in CORPUS_SHAPES[:2]:
        for spec in corpus_specs(shape[0], 2, shape[2][:3]):
            lat = character_lattice(spec)
            st = spec.center()
            r = relation_subgroup(spec)
            assert lat.index_in_ambient() == st.order // r.order


def test_char_lattice_monotone_in_relation_subgroup():
    for factors in factor_lists("D", 1, (3, 4)):
        subs = enumerate_subgroups(factors)
        for a in subs:
            for b in subs:
                if set(a.elements) <= set(b.elements):
                    la = character_lattice(spec_for_subgroup(factors, a))
                    lb = character_lattice(spec_for_subgroup(factors, b))
                    assert all(lattice_member(lb, row) for row in la.basis_rows())


def test_adjoint_char_lattice_contains_simple_roots():
    for factors in [
        [SimpleFactor("B", 3)],
        [SimpleFactor("C", 3)],
        [SimpleFactor("D", 4)],
        [SimpleFactor("B", 1), SimpleFactor("B", 2)],
    ]:
        spec = adjoint(factors)
        lat = character_lattice(spec)
        off = 0
        for f in factors:
            for root in simple_root_vectors(f):
                vec = [0] * spec.total_rank
                for k, v in enumerate(root):
                    vec[off + k] = v
                assert lattice_member(lat, vec)
            off += f.n


def test_weight_order_examples():
    sc = simply_connected([("B", 3)])
    assert all(weight_order(sc, 0, j) == 1 for j in range(1, 4))

    assert weight_order(adjoint([("B", 1)]), 0, 1) == 2
    assert weight_order(adjoint([("D", 5)]), 0, 5) == 4


def test_weight_order_divides_center_exponent():
    for spec in corpus_specs("D", 1, (3, 4, 5)):
        for i, f in enumerate(spec.factors):
            for j in range(1, f.n + 1):
                assert 4 % weight_order(spec, i, j) == 0 or weight_order(
                    spec, i, j
                ) in (1, 2, 4)


def test_fundamental_weight_type_c_coordinates():
    spec = adjoint([("C", 3)])
    w2 = fundamental_weight(spec, 0, 2)
    assert w2 == ((1, 1, 0),)
    assert center_image(spec.factors, w2) == (0,)


def test_enumerate_subgroup_counts():
    assert len(enumerate_subgroups([SimpleFactor("B", 1)])) == 2
    assert len(enumerate_subgroups([SimpleFactor("B", 1), SimpleFactor("B", 2)])) == 5
    assert len(enumerate_subgroups([SimpleFactor("D", 3)])) == 3
    assert len(enumerate_subgroups([SimpleFactor("D", 3), SimpleFactor("D", 5)])) == 15
    # F2^3 has 1 + 7 + 7 + 1 subspaces
    assert len(enumerate_subgroups([SimpleFactor("C", 1)] * 3)) == 16


def test_enumerate_subgroups_sorted_and_unique():
    subs = enumerate_subgroups([SimpleFactor("D", 4)])
    keys = [(s.order, s.elements) for s in subs]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_enumerate_center_too_large():
    with pytest.raises(CenterTooLarge):
        enumerate_subgroups([SimpleFactor("B", 1)] * 21)


def test_minimal_generators_regenerate():
    for factors in factor_lists("D", 2, (3, 4)):
        for sub in enumerate_subgroups(factors):
            spec = spec_for_subgroup(factors, sub)
            assert relation_subgroup(spec).elements == sub.elements
