import random

import pytest
from hypothesis import given

from strategies import seeds
from tqftlab import linalg
from tqftlab.cobordism.dsl import parse_word
from tqftlab.cobordism.evaluate import FROBENIUS_RELATIONS, closed_value, eval_closed_2d, genus_word
from tqftlab.errors import AlgebraMismatch, NotCommutative
from tqftlab.frobenius import (
    AlgModule,
    center,
    change_basis,
    field_algebra,
    genus_invariant,
    handle_element,
    hom_modules,
    is_semisimple,
    make_group_algebra,
    regular_module,
    truncated_polynomial,
    verify_frobenius,
    verify_module,
)
from tqftlab.group import catalog, cyclic, group_from_spec
from tqftlab.samples import random_commutative_frobenius, random_unimodular
from tqftlab.scalar import Scalar

S3 = group_from_spec("symmetric(3)")


def test_group_algebra_of_z2():
    a = make_group_algebra(cyclic(2))
    assert a.dim == 2
    assert a.gram() == linalg.identity(2)


def test_group_algebra_of_trivial_group():
    a = make_group_algebra(cyclic(1))
    assert a.dim == 1 and a.eps(a.unit) == 1


def test_group_algebra_of_s3():
    a = make_group_algebra(S3)
    assert a.dim == 6 and a.is_symmetric() and not a.is_commutative()
    assert linalg.det(a.gram()) != 0
    assert verify_frobenius(a)


def test_verify_examples():
    v = verify_frobenius(field_algebra(Scalar("3/2")))
    assert v and v.info["commutative"]
    assert verify_frobenius(make_group_algebra(cyclic(3))).info["commutative"]
    # eps = coefficient of the generator: Gram [[0, 1], [1, 0]] is still invertible
    off = make_group_algebra(cyclic(2), [0, 1])
    assert linalg.det(off.gram()) == -1
    assert verify_frobenius(off)
    assert not verify_frobenius(truncated_polynomial(2, [1, 0]))


def test_center():
    assert len(center(make_group_algebra(cyclic(4)))) == 4
    assert len(center(make_group_algebra(S3))) == 3  # one per conjugacy class
    assert len(center(field_algebra(5))) == 1


def test_handle_element():
    lam = Scalar(7)
    assert handle_element(field_algebra(lam)) == (lam.inverse(),)
    assert handle_element(make_group_algebra(cyclic(2))) == (Scalar(2), Scalar(0))
    with pytest.raises(NotCommutative):
        handle_element(make_group_algebra(S3))


@pytest.mark.parametrize("g", catalog(6), ids=lambda g: g.label)
def test_group_algebras_are_semisimple(g):
    assert is_semisimple(make_group_algebra(g))


def test_semisimplicity():
    dual_numbers = truncated_polynomial(2, [0, 1])
    assert verify_frobenius(dual_numbers)
    assert not is_semisimple(dual_numbers)
    assert is_semisimple(field_algebra())


def test_genus_invariant_examples():
    lam = Scalar(3)
    assert genus_invariant(0, field_algebra(lam)) == lam
    assert genus_invariant(1, make_group_algebra(cyclic(3))) == 3
    assert genus_invariant(1, field_algebra()) == 1
    assert genus_invariant(2, field_algebra(lam)) == lam.inverse()


def test_modules():
    a = make_group_algebra(cyclic(2))
    reg = regular_module(a)
    assert verify_module(reg)
    dim, basis = hom_modules(reg, reg)
    assert dim == 2
    trivial = AlgModule(a, 1, [[[1]], [[1]]], "trivial")
    sign = AlgModule(a, 1, [[[1]], [[-1]]], "sign")
    assert verify_module(trivial) and verify_module(sign)
    assert hom_modules(trivial, sign)[0] == 0
    # the identity is in the span of the self-intertwiners
    d, basis = hom_modules(sign, sign)
    assert d == 1 and linalg.rank(tuple(tuple(x for r in m for x in r) for m in basis + [linalg.identity(1)])) == 1
    with pytest.raises(AlgebraMismatch):
        hom_modules(reg, regular_module(make_group_algebra(cyclic(3))))


@given(seeds)
def test_random_algebras_satisfy_relations(seed):
    a = random_commutative_frobenius(random.Random(seed))
    assert verify_frobenius(a)
    for _, lhs, rhs in FROBENIUS_RELATIONS:
        assert eval_closed_2d(parse_word(lhs, 2), a) == eval_closed_2d(parse_word(rhs, 2), a)


@given(seeds)
def test_genus_word_matches_handle_element(seed):
    a = random_commutative_frobenius(random.Random(seed))
    for g in range(3):
        assert closed_value(genus_word(g), a) == genus_invariant(g, a)


@given(seeds)
def test_closed_invariants_ignore_basis(seed):
    rnd = random.Random(seed)
    a = random_commutative_frobenius(rnd)
    b = change_basis(a, random_unimodular(a.dim, rnd))
    assert verify_frobenius(b)
    for g in range(3):
        assert genus_invariant(g, a) == genus_invariant(g, b)
