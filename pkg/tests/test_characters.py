from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import numeric_determinant, solution_count
from strategies import small_groups
from torsion_obstruct.catalog import binary_polyhedral, small_group
from torsion_obstruct.characters import (
    character_table,
    count_by_orders,
    determinant_character,
    dixon_prime,
    embeds_in_O,
    embeds_in_SO,
    frobenius_schur,
    frobenius_solution_count,
    min_faithful_SO_degree,
    real_blocks,
)
from torsion_obstruct.errors import ResourceError
from torsion_obstruct.groups import (
    direct_product,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_symmetric,
    semidirect_product,
)
from torsion_obstruct.suites import character_identities


@pytest.mark.parametrize(
    "g,degrees",
    [
        (make_symmetric(3), [1, 1, 2]),
        (make_dihedral(4), [1, 1, 1, 1, 2]),
        (make_dicyclic(2), [1, 1, 1, 1, 2]),
        (make_alternating(4), [1, 1, 1, 3]),
        (make_symmetric(4), [1, 1, 2, 3, 3]),
        (make_alternating(5), [1, 3, 3, 4, 5]),
        (binary_polyhedral("2T"), [1, 1, 1, 2, 2, 2, 3]),
        (semidirect_product(7, 3, 2), [1, 1, 1, 3, 3]),
    ],
    ids=lambda v: getattr(v, "name", None),
)
def test_degrees(g, degrees):
    assert sorted(character_table(g).degrees) == degrees


def test_trivial_character_first():
    tab = character_table(make_symmetric(4))
    assert all(v == 1 for v in tab.trivial)


def test_indicators():
    q8 = character_table(make_dicyclic(2))
    d4 = character_table(make_dihedral(4))
    c3 = character_table(make_cyclic(3))
    assert Counter(frobenius_schur(q8, i) for i in range(5)) == {1: 4, -1: 1}
    assert all(frobenius_schur(d4, i) == 1 for i in range(5))
    assert Counter(frobenius_schur(c3, i) for i in range(3)) == {1: 1, 0: 2}


def test_a5_has_irrational_values():
    tab = character_table(make_alternating(5))
    assert any(not v.is_rational() for row in tab.rows for v in row)


def test_dixon_prime():
    p = dixon_prime(60, 30)
    assert p % 30 == 1 and p > 120
    assert dixon_prime(60, 30) == 151


def test_cap_is_enforced():
    with pytest.raises(ResourceError):
        character_table(make_cyclic(50), cap=10)


@pytest.mark.parametrize(
    "g,n,expected",
    [
        (make_cyclic(7), 2, True),
        (make_dihedral(5), 2, False),
        (make_dihedral(5), 3, True),
        (make_alternating(5), 3, True),
        (make_symmetric(4), 3, True),
        (make_dicyclic(2), 3, False),
        (make_dicyclic(2), 4, True),
        (direct_product(make_cyclic(2), make_cyclic(2)), 2, False),
        (direct_product(make_cyclic(2), make_cyclic(2)), 3, True),
        (direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2)), 3, False),
        (direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2)), 4, True),
        (direct_product(direct_product(make_cyclic(3), make_cyclic(3)), make_cyclic(3)), 5, False),
        (direct_product(direct_product(make_cyclic(3), make_cyclic(3)), make_cyclic(3)), 6, True),
        (binary_polyhedral("2I"), 4, True),
        (binary_polyhedral("2I"), 3, False),
    ],
    ids=lambda v: getattr(v, "name", str(v)),
)
def test_embeds_in_SO_examples(g, n, expected):
    res = embeds_in_SO(g, n)
    assert bool(res) is expected
    if expected:
        assert sum(b["degree"] for b in res.describe()) <= n


def test_orientation_reversing_helps():
    # C2 acting by a reflection
    assert embeds_in_O(make_cyclic(2), 1) and not embeds_in_SO(make_cyclic(2), 1)
    assert min_faithful_SO_degree(make_cyclic(2)) == 2


def test_blocks_for_metacyclic_group():
    tab = character_table(semidirect_product(7, 3, 2))
    kinds = Counter(b.kind for b in real_blocks(tab, 6))
    assert kinds == {"real": 1, "complex": 2}


def test_frobenius_count_small_examples():
    # pairs (a, b) with [a, b] = 1 number |G| * (number of classes)
    g = make_symmetric(4)
    assert frobenius_solution_count(g, 1, []) == 24 * 5
    # r = 0, g0 = 0: only the empty product
    assert frobenius_solution_count(g, 0, []) == 1


@settings(max_examples=30, deadline=None)
@given(small_groups(max_order=40))
def test_character_identities(g):
    assert all(character_identities(g).values())


@settings(max_examples=30, deadline=None)
@given(small_groups(max_order=40), st.data())
def test_determinant_matches_eigenvalue_oracle(g, data):
    tab = character_table(g, cap=None)
    cd = g.conjugacy
    i = data.draw(st.integers(0, len(tab) - 1))
    row = tab.rows[i]
    det = determinant_character(tab, i)
    for c in range(len(cd)):
        sums = [complex(row[cd.power_class(c, l)]) for l in range(1, tab.degrees[i] + 1)]
        assert abs(complex(det[c]) - numeric_determinant(sums)) < 1e-6
    # det is a linear character
    assert tab.inner_product(det, det) == 1


@settings(max_examples=30, deadline=None)
@given(small_groups(max_order=24), st.data())
def test_frobenius_count_matches_dp_oracle(g, data):
    cd = g.conjugacy
    g0 = data.draw(st.integers(0, 1))
    r = data.draw(st.integers(0, 3))
    choice = data.draw(st.lists(st.integers(0, len(cd) - 1), min_size=r, max_size=r))
    got = frobenius_solution_count(g, g0, choice, cap=None)
    assert got == solution_count(g.rows, g0, [cd.classes[c] for c in choice])


@settings(max_examples=30, deadline=None)
@given(small_groups(max_order=24), st.data())
def test_count_by_orders_matches_dp_oracle(g, data):
    orders = sorted(set(g.element_orders))
    g0 = data.draw(st.integers(0, 1))
    periods = data.draw(st.lists(st.sampled_from(orders), max_size=3))
    tab = character_table(g, cap=None)
    classes = [[x for x in range(g.order) if g.element_orders[x] == p] for p in periods]
    assert count_by_orders(tab, g0, periods) == solution_count(g.rows, g0, classes)


@settings(max_examples=15, deadline=None)
@given(small_groups(max_order=24))
def test_embedding_monotone_in_dimension(g):
    verdicts = [bool(embeds_in_SO(g, n, cap=None)) for n in range(1, 9)]
    assert verdicts == sorted(verdicts)


def test_catalog_tables():
    for key in ((16, 4), (20, 3), (27, 4), (40, 3)):
        g = small_group(*key)
        tab = character_table(g)
        assert sum(d * d for d in tab.degrees) == g.order
