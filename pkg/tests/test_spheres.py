import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import is_homomorphism
from strategies import small_groups
from torsion_obstruct.catalog import binary_polyhedral, small_group
from torsion_obstruct.characters import embeds_in_SO, min_faithful_SO_degree
from torsion_obstruct.errors import GroupConstructionError
from torsion_obstruct.groups import (
    direct_product,
    make_alternating,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_symmetric,
    semidirect_product,
)
from torsion_obstruct.spheres import (
    MetacyclicParams,
    dirichlet_witness,
    embeds_in_SO3_classical,
    find_embedding,
    genus_bound_pipeline,
    is_prime,
    least_prime_in_window,
    metacyclic_group,
    metacyclic_pairs,
    min_sphere_dim,
    multiplicative_order,
    s3_obstructed,
    s4_obstructed,
    so4_membership,
    so4_structural,
    sphere_report,
)


def c3_cubed():
    return direct_product(direct_product(make_cyclic(3), make_cyclic(3)), make_cyclic(3))


def test_min_sphere_dim_cases():
    assert min_sphere_dim(MetacyclicParams(7, 3)) == 5
    assert min_sphere_dim(MetacyclicParams(5, 4)) == 4
    assert min_sphere_dim(MetacyclicParams(5, 4, orientation="any")) == 3
    assert min_sphere_dim(MetacyclicParams(7, 3, orientation="any")) == 5


@pytest.mark.parametrize("args", [(9, 2), (2, 1), (7, 4), (7, 3, 3)])
def test_metacyclic_params_validation(args):
    with pytest.raises(GroupConstructionError):
        MetacyclicParams(*args)


def test_metacyclic_params_orientation_validation():
    with pytest.raises(ValueError):
        MetacyclicParams(7, 3, orientation="reversing")


def test_metacyclic_pairs():
    pairs = metacyclic_pairs(200)
    assert (7, 3) in pairs and (5, 4) in pairs and (3, 2) in pairs
    assert all(p * k <= 200 and (p - 1) % k == 0 for p, k in pairs)
    assert len(pairs) == 47


def test_metacyclic_group_shape():
    g = metacyclic_group(13, 3)
    assert g.order == 39 and set(g.element_orders) == {1, 3, 13}


def test_number_theory_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert multiplicative_order(2, 7) == 3
    with pytest.raises(ValueError):
        multiplicative_order(7, 7)


@pytest.mark.parametrize(
    "g,expected",
    [
        (direct_product(make_cyclic(2), make_cyclic(2)), True),
        (direct_product(make_cyclic(2), make_cyclic(8)), False),
        (make_alternating(5), True),
        (make_symmetric(4), True),
        (make_dicyclic(3), False),
        (make_dihedral(9), True),
        (make_cyclic(1), True),
        (direct_product(make_cyclic(3), make_cyclic(3)), False),
    ],
    ids=lambda v: getattr(v, "name", str(v)),
)
def test_so3_classical(g, expected):
    assert embeds_in_SO3_classical(g) is expected
    assert bool(embeds_in_SO(g, 3)) is expected


@pytest.mark.parametrize(
    "g,expected",
    [(make_dicyclic(2), True), (metacyclic_group(7, 3), False), (c3_cubed(), False), (binary_polyhedral("2T"), True)],
    ids=lambda v: getattr(v, "name", str(v)),
)
def test_so4_membership(g, expected):
    assert so4_membership(g, cross_check=True) is expected


def test_structural_route_finds_central_product():
    sv = so4_structural(make_dicyclic(2))
    assert sv.embeds is True and sv.pair is not None


def test_find_embedding_is_injective_homomorphism():
    g = make_dihedral(3)
    h = make_symmetric(4)
    phi = find_embedding(g, h)
    assert phi is not None and len(set(phi)) == g.order
    assert is_homomorphism(g.rows, h.rows, phi)
    assert find_embedding(make_cyclic(5), make_symmetric(4)) is None
    assert find_embedding(make_cyclic(1), make_cyclic(3)) == [0]


def test_s3_obstruction_examples():
    assert s3_obstructed(semidirect_product(4, 4, 3)).verdict
    assert not s3_obstructed(make_dicyclic(5)).verdict


def test_s4_obstruction_examples():
    ev = s4_obstructed(small_group(27, 4))
    assert ev.verdict and ev.detail["so5"]["embeds"] is False
    ev = s4_obstructed(small_group(40, 3))
    assert not ev.verdict and ev.detail["index2_in_so4"] == 0


def test_sphere_report_annotates_topological_case():
    rep = sphere_report(small_group(40, 3))
    data = rep.to_json()
    assert set(data["tests"]) == {"so3", "so4", "so5", "index2_so4", "s3_obstructed", "s4_obstructed"}
    assert data["tests"]["so5"] is False and data["tests"]["index2_so4"] is True
    assert any("topological argument" in n for n in data["notes"])


def test_sphere_report_metacyclic_dimensions():
    rep = sphere_report(metacyclic_group(7, 3), metacyclic=(7, 3))
    assert rep.min_dim["metacyclic"]["preserving"] == 5
    assert rep.min_dim["faithful_SO_degree"] == 6
    assert rep.tests["s3_obstructed"] and rep.tests["s4_obstructed"]


def test_dirichlet_witness_examples():
    for n in (2, 3, 4):
        w = dirichlet_witness(n)
        assert (w.q, w.p) == (3, 7) and w.group is not None
    w = dirichlet_witness(9)
    assert (w.q, w.p) == (7, 29) and w.group is None
    assert w.to_json()["order"] == 203
    with pytest.raises(ValueError):
        least_prime_in_window(1)


@pytest.mark.parametrize("n", range(2, 33))
def test_dirichlet_witness_beats_dimension(n):
    w = dirichlet_witness(n)
    assert 2 * w.q > n + 1 and w.q <= n + 1
    assert w.p % w.q == 1 and is_prime(w.p)
    assert w.min_dim > n


def test_pipeline_small_n():
    for n in (3, 4):
        assert genus_bound_pipeline(n, window=20)["p2q"] == 147
    rep = genus_bound_pipeline(3)
    assert rep["empirical"]["onset"] <= 42


@pytest.mark.parametrize("p,k", [(7, 3), (13, 3), (11, 5), (5, 4), (13, 4), (7, 6)])
def test_linear_realisation_degrees(p, k):
    g = metacyclic_group(p, k)
    so = min_faithful_SO_degree(g, limit=2 * k + 2)
    if k % 2:
        assert so == 2 * k == min_sphere_dim(MetacyclicParams(p, k)) + 1
    else:
        assert so == k + 1


@settings(max_examples=30, deadline=None)
@given(small_groups(max_order=48))
def test_so3_routes_agree(g):
    assert embeds_in_SO3_classical(g) == bool(embeds_in_SO(g, 3))


@settings(max_examples=30, deadline=None)
@given(small_groups(max_order=48))
def test_so4_implies_so5(g):
    if so4_membership(g):
        assert embeds_in_SO(g, 5)


@settings(max_examples=15, deadline=None)
@given(small_groups(max_order=24))
def test_structural_route_never_contradicts_characters(g):
    sv = so4_structural(g)
    if sv.embeds is not None:
        assert sv.embeds == bool(embeds_in_SO(g, 4))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 5, 7, 9, 11, 13, 15, 21, 25]), st.sampled_from([1, 3, 5, 7]))
def test_odd_order_abelian_rank_two_in_so4(m, n):
    g = direct_product(make_cyclic(m), make_cyclic(n))
    assert so4_membership(g)


@pytest.mark.parametrize("key", [(21, 1), (27, 4)])
def test_odd_order_nonabelian_fixtures_not_in_so4(key):
    assert not so4_membership(small_group(*key))
