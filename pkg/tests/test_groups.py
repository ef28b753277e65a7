from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import conjugacy_classes as brute_classes
from oracles import element_order, is_homomorphism
from strategies import small_groups
from torsion_obstruct.errors import GroupConstructionError, ResourceError
from torsion_obstruct.groups import (
    FiniteGroup,
    abelian_invariants,
    basic_invariants,
    central_product,
    check_cap,
    derived_series_orders,
    direct_product,
    find_isomorphism,
    is_isomorphic,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_sl2,
    make_symmetric,
    permutation_group,
    semidirect_product,
)


def test_cyclic_table_is_addition_mod_n():
    g = make_cyclic(6)
    assert g.order == 6
    assert g.mul(4, 5) == 3
    assert list(g.element_orders) == [1, 6, 3, 2, 3, 6]


def test_dihedral_numbering():
    g = make_dihedral(4)
    r, s = 1, 4
    assert g.element_orders[r] == 4
    assert g.element_orders[s] == 2
    # s r s^-1 = r^-1
    assert g.conjugate(r, s) == 3
    assert g.mul(2, 4) == 6  # r^2 s


def test_dicyclic_relations():
    g = make_dicyclic(3)
    x, y = 1, 6
    assert g.order == 12
    assert g.power(x, 3) == g.power(y, 2) == 3
    assert g.conjugate(x, g.inv(y)) == g.inv(x)
    assert g.involutions() == [3]


def test_dicyclic_2_is_quaternion():
    q8 = make_dicyclic(2)
    assert Counter(q8.element_orders) == {1: 1, 2: 1, 4: 6}


def test_semidirect_action():
    g = semidirect_product(7, 3, 2)
    a, b = 1, 7
    assert g.conjugate(a, b) == g.power(a, 2)
    assert sorted(set(g.element_orders)) == [1, 3, 7]


@pytest.mark.parametrize("args", [(7, 3, 3), (6, 2, 2), (0, 1, 1)])
def test_semidirect_rejects_bad_parameters(args):
    with pytest.raises(GroupConstructionError):
        semidirect_product(*args)


def test_constructor_preconditions():
    with pytest.raises(GroupConstructionError):
        make_cyclic(0)
    with pytest.raises(GroupConstructionError):
        make_dicyclic(1)


def test_axiom_check_rejects_non_group():
    with pytest.raises(GroupConstructionError):
        FiniteGroup([[0, 1], [1, 1]])
    with pytest.raises(GroupConstructionError):
        FiniteGroup([[1, 0], [0, 1]])


def test_axiom_check_rejects_non_associative_latin_square():
    # a Latin square with identity 0 that is not associative
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupConstructionError):
        FiniteGroup(t)


def test_direct_product_indexing():
    g = direct_product(make_cyclic(2), make_cyclic(3))
    assert g.order == 6
    assert max(g.element_orders) == 6
    # (1, 2) * (1, 2) = (0, 1)
    assert g.mul(1 * 3 + 2, 1 * 3 + 2) == 1


def test_central_product_of_quaternions():
    q8 = make_dicyclic(2)
    g = central_product(q8, 2, q8, 2)
    assert g.order == 32
    assert len(g.center) == 2


def test_central_product_requires_central_involution():
    with pytest.raises(GroupConstructionError):
        central_product(make_dihedral(3), 3, make_cyclic(2), 1)


def test_sl2_orders():
    assert make_sl2(3).order == 24
    assert make_sl2(5).order == 120
    assert len(make_sl2(5).center) == 2


def test_symmetric_and_alternating():
    assert make_symmetric(4).order == 24
    assert make_alternating(5).order == 60
    assert len(make_alternating(5).conjugacy) == 5
    assert abelian_invariants(make_alternating(5)) == []


def test_permutation_group_matches_symmetric():
    g = permutation_group([(1, 2, 0), (1, 0, 2)])
    assert is_isomorphic(g, make_dihedral(3))


def test_check_cap():
    with pytest.raises(ResourceError):
        check_cap(make_cyclic(10), 5)
    check_cap(make_cyclic(10), None)


def test_abelian_invariants_known_values():
    assert abelian_invariants(make_cyclic(12)) == [3, 4]
    assert abelian_invariants(make_dihedral(4)) == [2, 2]
    assert abelian_invariants(make_dicyclic(3)) == [4]
    assert abelian_invariants(direct_product(make_cyclic(2), make_cyclic(8))) == [2, 8]


def test_derived_series():
    assert derived_series_orders(make_symmetric(4)) == [24, 12, 4, 1]
    assert derived_series_orders(make_alternating(5)) == [60]


def test_isomorphism_distinguishes_same_invariant_candidates():
    d4, q8 = make_dihedral(4), make_dicyclic(2)
    assert not is_isomorphic(d4, q8)
    assert is_isomorphic(make_dihedral(6), direct_product(make_dihedral(3), make_cyclic(2)))
    assert not is_isomorphic(make_dicyclic(3), make_dihedral(6))
    assert is_isomorphic(make_sl2(3), make_sl2(3))


def test_find_isomorphism_returns_homomorphism():
    g = make_dihedral(6)
    h = direct_product(make_dihedral(3), make_cyclic(2))
    phi = find_isomorphism(g, h)
    assert phi is not None and sorted(phi) == list(range(12))
    assert is_homomorphism(g.rows, h.rows, phi)


def test_words_are_shortest_and_evaluate():
    g = make_dihedral(5)
    assert g.words[0] == "1"
    for x in range(g.order):
        w = g.words[x]
        if x:
            y = 0
            for letter in w.split("*"):
                y = g.mul(y, g.generator_labels[letter])
            assert y == x


def test_quotient_by_center():
    g = make_dicyclic(2)
    q = g.quotient(g.center)
    assert q.order == 4 and q.is_abelian and q.exponent == 2


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_conjugacy_matches_brute_force(g):
    cd = g.conjugacy
    ours = {frozenset(c) for c in cd.classes}
    assert ours == set(brute_classes(g.rows))
    assert sum(cd.class_sizes) == g.order
    for i, r in enumerate(cd.representatives):
        assert cd.class_of[r] == i


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_group_axioms_and_orders(g):
    t = g.table
    assert np.array_equal(t[t], t[:, t])  # (x y) z = x (y z) for all triples
    for x in range(g.order):
        assert g.mul(x, g.inv(x)) == 0
        assert g.element_orders[x] == element_order(g.rows, x)
        assert g.order % g.element_orders[x] == 0


@settings(max_examples=40, deadline=None)
@given(small_groups(), st.data())
def test_power_map_consistent(g, data):
    cd = g.conjugacy
    i = data.draw(st.integers(0, len(cd) - 1))
    k = data.draw(st.integers(0, g.exponent - 1))
    assert cd.class_of[g.power(cd.representatives[i], k)] == cd.power_class(i, k)


@settings(max_examples=30, deadline=None)
@given(small_groups())
def test_generators_generate(g):
    assert g.generates(g.generators)
    assert len(g.closure(g.generators)) == g.order


@settings(max_examples=30, deadline=None)
@given(small_groups(max_order=24))
def test_relabelled_group_is_isomorphic(g):
    rng = np.random.default_rng(g.order)
    perm = np.concatenate([[0], 1 + rng.permutation(g.order - 1)])
    inv = np.argsort(perm)
    t = perm[g.table[inv][:, inv]]
    h = FiniteGroup(t)
    assert basic_invariants(h) == basic_invariants(g)
    assert is_isomorphic(g, h)
