import pytest
from hypothesis import given, settings

from oracles import all_subgroups as brute_subgroups
from oracles import generating_pairs
from strategies import small_groups
from torsion_obstruct.catalog import small_group
from torsion_obstruct.errors import ResourceError
from torsion_obstruct.groups import (
    direct_product,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_symmetric,
)
from torsion_obstruct.subgroups import SubgroupLattice, all_subgroups, index2_subgroups, subgroup_lattice

def mobius(n):
    out, p = 1, 2
    while n > 1:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return out


KNOWN_COUNTS = [
    (make_symmetric(3), 6),
    (make_dihedral(4), 10),
    (make_dicyclic(2), 6),
    (make_alternating(4), 10),
    (make_symmetric(4), 30),
    (direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2)), 16),
    (make_alternating(5), 59),
]


@pytest.mark.parametrize("g,count", KNOWN_COUNTS, ids=lambda v: getattr(v, "name", str(v)))
def test_subgroup_counts(g, count):
    assert len(all_subgroups(g)) == count


def test_index2_counts():
    assert len(index2_subgroups(make_dihedral(4))) == 3
    assert len(index2_subgroups(make_cyclic(9))) == 0
    assert len(index2_subgroups(make_alternating(4))) == 0
    assert len(index2_subgroups(small_group(32, 2))) == 3
    assert len(index2_subgroups(small_group(40, 3))) == 1


def test_lattice_cap():
    g = direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2))
    with pytest.raises(ResourceError):
        SubgroupLattice(g, cap=5)


def test_moebius_of_cyclic_group_is_number_theoretic():
    lat = subgroup_lattice(make_cyclic(12))
    mu = {r.order: m for r, m in zip(lat.records, lat.moebius)}
    assert mu == {d: mobius(12 // d) for d in (1, 2, 3, 4, 6, 12)}


def test_moebius_of_a5_at_trivial_subgroup():
    lat = subgroup_lattice(make_alternating(5))
    assert lat.moebius[0] == -60


@settings(max_examples=25, deadline=None)
@given(small_groups(max_order=32))
def test_lattice_matches_brute_force(g):
    assert set(all_subgroups(g, cap=None)) == brute_subgroups(g.rows)


@settings(max_examples=25, deadline=None)
@given(small_groups(max_order=32))
def test_moebius_inversion_counts_generating_pairs(g):
    lat = subgroup_lattice(g)
    total = sum(m * r.order ** 2 for r, m in zip(lat.records, lat.moebius))
    assert total == generating_pairs(g.rows)


@settings(max_examples=25, deadline=None)
@given(small_groups(max_order=32))
def test_index2_subgroups_are_normal_of_index_two(g):
    subs = index2_subgroups(g)
    brute = [h for h in brute_subgroups(g.rows) if 2 * len(h) == g.order]
    assert set(subs) == set(brute)


@settings(max_examples=20, deadline=None)
@given(small_groups(max_order=32))
def test_conjugacy_of_subgroups_preserves_order(g):
    lat = subgroup_lattice(g)
    for i, rep in enumerate(lat.conjugacy_class_of):
        assert lat.records[rep].order == lat.records[i].order
        assert rep <= i
