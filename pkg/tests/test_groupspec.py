import pytest
from hypothesis import given, strategies as st

from powergraphs.config import Limits
from powergraphs.errors import ResourceError, SpecParseError
from powergraphs.groupspec import Atom, Product, build_group, parse_spec, render_spec, spec_order


def test_parse_examples():
    assert parse_spec("C12") == Atom("Cyclic", (12,))
    assert parse_spec("Z6") == Atom("Cyclic", (6,))
    assert parse_spec("S3xZ6") == Product((Atom("Symmetric", (3,)), Atom("Cyclic", (6,))))
    assert parse_spec("Q8") == Atom("Dicyclic", (2,))
    assert parse_spec("q16") == Atom("Dicyclic", (4,))
    assert parse_spec("dic5") == Atom("Dicyclic", (5,))
    assert parse_spec("E3^2") == Atom("ElemAbelian", (3, 2))
    assert parse_spec("d4XC3") == parse_spec("D4xC3")


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("C", 1),
        ("C12x", 4),
        ("xC2", 0),
        ("C12y", 3),
        ("K5", 0),
        ("D2", 1),
        ("S8", 1),
        ("Q12", 1),
        ("E4^2", 1),
        ("E2", 2),
        ("E2^13", 3),
        ("C3xDic1", 6),
        ("C1.5", 2),
    ],
)
def test_parse_errors_report_offsets(text, offset):
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    assert info.value.offset == offset
    assert f"offset {offset}" in str(info.value)


def test_orders_and_build(grp):
    for text, order in [("C12", 12), ("D5", 10), ("Dic3", 12), ("S4", 24), ("A5", 60), ("E2^3", 8), ("S3xZ6", 36)]:
        spec = parse_spec(text)
        assert spec_order(spec) == order
        assert build_group(spec).order == order


def test_order_cap():
    with pytest.raises(ResourceError):
        build_group("C100xC200", limits=Limits(max_order=10000))
    assert build_group("C50", limits=Limits(max_order=50)).order == 50


atoms = st.one_of(
    st.builds(lambda n: Atom("Cyclic", (n,)), st.integers(1, 500)),
    st.builds(lambda n: Atom("Dihedral", (n,)), st.integers(3, 500)),
    st.builds(lambda n: Atom("Dicyclic", (n,)), st.integers(2, 500)),
    st.builds(lambda n: Atom("Symmetric", (n,)), st.integers(1, 7)),
    st.builds(lambda n: Atom("Alternating", (n,)), st.integers(1, 7)),
    st.builds(lambda pk: Atom("ElemAbelian", pk), st.sampled_from([(2, 1), (2, 12), (3, 5), (5, 3), (7, 4)])),
)
specs = st.one_of(atoms, st.lists(atoms, min_size=2, max_size=4).map(lambda fs: Product(tuple(fs))))


@given(specs)
def test_render_parse_round_trip(spec):
    assert parse_spec(render_spec(spec)) == spec
