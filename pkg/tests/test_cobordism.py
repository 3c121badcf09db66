import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import seeds
from tqftlab import linalg
from tqftlab.cobordism.cob1 import canonical_word, compose, from_word, homs, identity, mapping_cylinder, sign_strings
from tqftlab.cobordism.dsl import make_word, parse_ast, parse_word, serialize_ast, serialize_word
from tqftlab.cobordism.evaluate import (
    BoundaryData,
    closed_value,
    eval_1d,
    eval_1d_data,
    eval_normal_form,
    permutation_operator,
    swap_matrix,
    transmission,
)
from tqftlab.character2 import Cocycle
from tqftlab.errors import InconsistentBoundaryData, ParseError, SignMismatch, TwistedInput, WordTypeError
from tqftlab.frobenius import field_algebra, make_group_algebra
from tqftlab.group import conjugacy_classes, cyclic, group_from_spec
from tqftlab.projrep import ProjRep, pauli_projrep, twisted_regular_rep
from tqftlab.samples import random_boundary_data, random_word_1d, random_word_2d, s3_standard_rep
from tqftlab.scalar import Scalar

SPHERE, TORUS = "cup ; cap", "cup ; comul ; mul ; cap"


def test_typing_examples():
    assert parse_word(SPHERE, 2).signature() == "circles:0 -> circles:0"
    torus = parse_word(TORUS, 2)
    assert (torus.source, torus.target) == (0, 0)
    with pytest.raises(TypeError) as info:
        parse_word("mul ; cup", 2)
    assert isinstance(info.value, WordTypeError) and info.value.pos == 6


@pytest.mark.parametrize("text", [SPHERE, TORUS, "mul ; cup"])
def test_round_trip_examples(text):
    assert parse_ast(serialize_ast(parse_ast(text))) == parse_ast(text)


@pytest.mark.parametrize("text,pos", [("cup ;", 5), ("cup | | cap", 6), ("(cup ; cap", 10), ("flip", 0), ("ev", 0)])
def test_parse_errors(text, pos):
    with pytest.raises(ParseError) as info:
        parse_word(text, 2)
    assert info.value.pos == pos


def test_closed_values():
    assert closed_value(parse_word(SPHERE, 2), field_algebra()) == 1
    assert closed_value(parse_word(TORUS, 2), make_group_algebra(cyclic(2))) == 2
    lam = Scalar("2/3")
    genus2 = parse_word("cup ; comul ; mul ; comul ; mul ; cap", 2)
    assert closed_value(genus2, field_algebra(lam)) == lam.inverse()


def test_one_dimensional_examples():
    for d in (1, 2, 3):
        assert eval_1d(parse_word("coev ; swap ; ev", 1), d) == ((Scalar(d),),)
    e1 = [1, 0, 0]
    assert eval_1d(parse_word("lbnd ; rbnd", 1), 3, (e1, e1)) == ((Scalar(1),),)
    assert eval_1d(parse_word("", 1), 2) == ((Scalar(1),),)


def test_mapping_cylinders():
    w = mapping_cylinder("+-", "+-", [0, 1])
    assert eval_1d(w, 3) == linalg.identity(9)
    assert from_word(w) == identity(("+", "-"))
    assert eval_1d(mapping_cylinder("++", "++", [1, 0]), 2) == swap_matrix(2)
    with pytest.raises(SignMismatch):
        mapping_cylinder("+-", "+-", [1, 0])


def test_transmission():
    for g in (cyclic(3), group_from_spec("symmetric(3)")):
        ones = ProjRep(g, Cocycle.trivial(g), 1, [[[1]]] * g.order)
        assert transmission(g, ones) == [1] * len(conjugacy_classes(g))
    s3 = group_from_spec("symmetric(3)")
    assert transmission(s3, s3_standard_rep()) == [2, 0, -1]
    z2 = cyclic(2)
    assert transmission(z2, twisted_regular_rep(Cocycle.trivial(z2))) == [2, 0]
    with pytest.raises(TwistedInput):
        transmission(pauli_projrep().group, pauli_projrep())


def test_boundary_data_zigzag():
    bad = BoundaryData(2, linalg.identity(2), linalg.scale(2, linalg.identity(2)), (1, 0), (1, 0))
    with pytest.raises(InconsistentBoundaryData):
        bad.check()
    rnd = random.Random(4)
    for _ in range(10):
        bc = random_boundary_data(rnd)
        bc.check()
        zig = parse_word("(id | coev) ; (ev | id)", 1, ("+",))
        assert eval_1d_data(zig, bc) == linalg.identity(bc.dim)


@given(seeds, st.integers(1, 6))
def test_random_2d_words_round_trip(seed, depth):
    ast, _, _ = random_word_2d(random.Random(seed), depth)
    text = serialize_ast(ast)
    assert parse_ast(text, 2) == ast
    assert serialize_word(parse_word(text, 2)) == text


@given(seeds, st.integers(1, 6))
def test_random_1d_words_round_trip(seed, depth):
    ast, src, _ = random_word_1d(random.Random(seed), depth)
    text = serialize_ast(ast)
    assert parse_ast(text, 1) == ast
    assert parse_word(text, 1, src).source == src


@given(seeds, st.integers(1, 4))
def test_normal_form_evaluation_matches_word(seed, depth):
    rnd = random.Random(seed)
    ast, src, _ = random_word_1d(rnd, depth)
    w = make_word(ast, 1, src)
    bc = random_boundary_data(rnd)
    nf = from_word(w)
    assert eval_normal_form(nf, bc) == eval_1d_data(w, bc)
    assert from_word(canonical_word(nf)) == nf
    assert eval_1d_data(canonical_word(nf), bc) == eval_1d_data(w, bc)


@given(seeds, st.integers(1, 3), st.integers(1, 3))
def test_compose_matches_concatenated_words(seed, d1, d2):
    rnd = random.Random(seed)
    a, src, mid = random_word_1d(rnd, d1)
    b, _, _ = random_word_1d(rnd, d2, mid)
    wa, wb = make_word(a, 1, src), make_word(b, 1, mid)
    joined = parse_word(f"({serialize_ast(a)}) ; ({serialize_ast(b)})", 1, src)
    assert compose(from_word(wa), from_word(wb)) == from_word(joined)


def test_homs_are_distinct_and_typed():
    for s in sign_strings(2):
        for t in sign_strings(2):
            hs = homs(s, t, 1, 1)
            assert len(set(hs)) == len(hs)
            assert all(h.source == s and h.target == t for h in hs)


def test_permutation_operator_is_a_representation():
    d, perms = 2, [(1, 2, 0), (2, 0, 1), (0, 2, 1)]
    for p in perms:
        for q in perms:
            pq = tuple(q[p[k]] for k in range(3))
            lhs = permutation_operator(d, pq)
            assert lhs == linalg.matmul(permutation_operator(d, q), permutation_operator(d, p))
