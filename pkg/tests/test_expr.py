import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_obstruct.errors import GroupConstructionError, ResourceError
from torsion_obstruct.expr import (
    BinaryPolyhedral,
    Catalog,
    CentralProduct,
    Cyclic,
    Dicyclic,
    Dihedral,
    DirectProduct,
    ExprError,
    Metacyclic,
    Presented,
    Semidirect,
    build_group,
    expr_order,
    format_expr,
    parse_group,
)
from torsion_obstruct.groups import is_isomorphic, make_dicyclic


def test_examples():
    assert parse_group("C4 x D5") == DirectProduct(Cyclic(4), Dihedral(5))
    assert parse_group("M(7,3)") == Metacyclic(7, 3)
    assert parse_group("DC(6)") == Dicyclic(6)
    assert parse_group(" C ( 4 ) × D5 ") == DirectProduct(Cyclic(4), Dihedral(5))
    assert parse_group("SG(40,3)") == Catalog(40, 3)
    assert parse_group("BP(2T)") == BinaryPolyhedral("2T")
    assert parse_group("CP(DC2,2,DC2,2)") == CentralProduct(Dicyclic(2), 2, Dicyclic(2), 2)
    assert parse_group("P(some/file.pres)") == Presented("some/file.pres")


def test_zero_cyclic_error_position():
    with pytest.raises(ExprError) as info:
        parse_group("C0")
    assert info.value.position == 1 and "n >= 1" in info.value.message


@pytest.mark.parametrize(
    "text,position",
    [("M(8,3)", 2), ("M(7,4)", 4), ("SD(6,2,2)", 7), ("C4 x", 4), ("Q8", 0), ("C4 D5", 3), ("(C4", 3), ("BP(3T)", 3)],
)
def test_error_positions(text, position):
    with pytest.raises(ExprError) as info:
        parse_group(text)
    assert info.value.position == position


def test_syntax_error_lists_expected_tokens():
    with pytest.raises(ExprError) as info:
        parse_group("")
    assert info.value.expected


def test_format_canonical():
    assert format_expr(parse_group("C(4) x (D5 x C2)")) == "C4 x (D5 x C2)"
    assert format_expr(parse_group("(C4 x D5) x C2")) == "C4 x D5 x C2"
    assert format_expr(Semidirect(5, 4, 4)) == "SD(5,4,4)"


def test_orders_and_builds():
    assert expr_order(parse_group("C4 x D5")) == 40
    assert expr_order(parse_group("CP(DC2,2,DC2,2)")) == 32
    g = build_group("CP(DC2,2,BP(2T),16)")
    assert g.order == 96 and g.name == "CP(DC2,2,BP(2T),16)"
    assert is_isomorphic(build_group("DC(3)"), make_dicyclic(3))
    assert build_group("SG(20,3)").order == 20


def test_cap_checked_before_building():
    with pytest.raises(ResourceError):
        build_group("C1000 x C1000")
    assert build_group("C300", cap=None).order == 300


def test_unknown_catalog_entry():
    with pytest.raises(GroupConstructionError):
        build_group("SG(12,3)")


def test_presented_group(tmp_path):
    path = tmp_path / "s3.pres"
    path.write_text("gens 2\na^3\nb^2\n(a b)^2\n")
    assert build_group(f"P({path})").order == 6


def _units(n):
    return [r for r in range(n) if math.gcd(r, n) == 1]


@st.composite
def semidirect(draw):
    n = draw(st.integers(2, 20))
    k = draw(st.integers(1, 6))
    r = draw(st.sampled_from([r for r in _units(n) if pow(r, k, n) == 1]))
    return Semidirect(n, k, r)


leaves = st.one_of(
    st.integers(1, 50).map(Cyclic),
    st.integers(1, 50).map(Dihedral),
    st.integers(2, 50).map(Dicyclic),
    semidirect(),
    st.sampled_from([(7, 3), (13, 4), (5, 2), (31, 5)]).map(lambda t: Metacyclic(*t)),
    st.sampled_from([(16, 4), (40, 3), (96, 66)]).map(lambda t: Catalog(*t)),
    st.sampled_from(["2T", "2O", "2I"]).map(BinaryPolyhedral),
)


def _extend(children):
    return st.one_of(
        st.tuples(children, children).map(lambda t: DirectProduct(*t)),
        st.tuples(children, st.integers(0, 99), children, st.integers(0, 99)).map(lambda t: CentralProduct(*t)),
    )


exprs = st.recursive(leaves, _extend, max_leaves=6)


def _spaced(text, data):
    out = []
    for ch in text:
        out.append(ch)
        if ch in ",()x" and data.draw(st.booleans()):
            out.append(" ")
    return "".join(out)


@settings(max_examples=300)
@given(exprs, st.data())
def test_print_parse_round_trip(e, data):
    text = format_expr(e)
    parsed = parse_group(text)
    assert format_expr(parsed) == text
    assert parse_group(format_expr(parsed)) == parsed
    assert parse_group(_spaced(text, data)) == parsed


@settings(max_examples=200)
@given(st.text(alphabet="CDMSGPBx()0123456789, ", max_size=20))
def test_parser_never_crashes(text):
    try:
        e = parse_group(text)
    except ExprError as exc:
        assert 0 <= exc.position <= len(text)
    else:
        assert parse_group(format_expr(e)) == e
