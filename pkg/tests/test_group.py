import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tqftlab.errors import ParseError, UnsupportedParams
from tqftlab.group import (
    CrossedModule,
    FiniteGroup,
    build_catalog_group,
    catalog,
    conjugacy_classes,
    cyclic,
    group_from_spec,
    verify_crossed_module,
    verify_group,
)

CATALOG = catalog(8)


def test_trivial_group():
    g = build_catalog_group("cyclic", 1)
    assert g.order == 1 and verify_group(g)
    assert conjugacy_classes(g) == [[0]]


def test_klein_four():
    k = build_catalog_group("product", cyclic(2), cyclic(2))
    assert k.order == 4 and k.is_abelian()


def test_s3_is_nonabelian():
    s3 = build_catalog_group("symmetric", 3)
    pairs = [(a, b) for a in range(6) for b in range(6) if s3.mul(a, b) != s3.mul(b, a)]
    assert s3.order == 6 and pairs and not s3.is_abelian()


def test_catalog_expressions():
    assert group_from_spec("product(cyclic(2), dihedral(3))").order == 12
    with pytest.raises(ParseError):
        group_from_spec("cyclic(2")
    with pytest.raises((UnsupportedParams, ParseError)):
        group_from_spec("cyclic(0)")


@pytest.mark.parametrize("g", CATALOG, ids=lambda g: g.label)
def test_catalog_groups_verify(g):
    assert verify_group(g)


def test_corrupted_z4_reports_a_triple():
    t = [list(r) for r in cyclic(4).table]
    t[2][3], t[2][1] = t[2][1], t[2][3]
    v = verify_group(FiniteGroup(t))
    assert not v
    a, b, c = v.witness
    g = FiniteGroup(t)
    assert g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))


def test_classes():
    assert conjugacy_classes(cyclic(4)) == [[0], [1], [2], [3]]
    s3 = group_from_spec("symmetric(3)")
    assert sorted(len(c) for c in conjugacy_classes(s3)) == [1, 2, 3]
    assert [len(c) for c in conjugacy_classes(s3)] == [1, 3, 2]


@pytest.mark.parametrize("g", CATALOG, ids=lambda g: g.label)
def test_classes_partition_and_are_closed(g):
    classes = conjugacy_classes(g)
    assert sorted(itertools.chain(*classes)) == list(range(g.order))
    for c in classes:
        assert {g.prod(y, c[0], g.inv(y)) for y in g.elements} == set(c)


def test_crossed_modules():
    z1, z2 = cyclic(1), cyclic(2)
    assert verify_crossed_module(CrossedModule(z1, z2, [0, 0]))
    assert verify_crossed_module(CrossedModule(z2, z2, [0, 1]))
    flip = CrossedModule(z2, z2, [0, 1], [[0, 1], [1, 0]])
    v = verify_crossed_module(flip)
    assert not v and "equivariance" in v.message


@given(st.sampled_from(CATALOG), st.data())
def test_inverses_and_identity(g, data):
    x = data.draw(st.integers(0, g.order - 1))
    assert g.mul(x, g.inv(x)) == g.identity == g.mul(g.inv(x), x)
