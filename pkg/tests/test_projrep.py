import random

import pytest
from hypothesis import given

from strategies import seeds
from tqftlab import linalg
from tqftlab.character2 import Cocycle, from_cocycle, klein_cocycle, verify_cocycle
from tqftlab.errors import CharacterNotCocycleForm, NotScalarMultiple
from tqftlab.group import cyclic, group_from_spec
from tqftlab.projrep import (
    HomotopyFixedPoint,
    ProjRep,
    extract_holonomy,
    from_fixed_point,
    pauli_projrep,
    to_fixed_point,
    twisted_regular_rep,
    verify_fixed_point,
    verify_projrep,
)
from tqftlab.samples import random_fixed_point, random_projrep, small_crossed_modules
from tqftlab.scalar import Scalar

KLEIN = group_from_spec("product(cyclic(2),cyclic(2))")


def test_trivial_rep():
    g = cyclic(3)
    r = ProjRep(g, Cocycle.trivial(g), 1, [[[1]]] * 3)
    assert verify_projrep(r)
    p = to_fixed_point(r)
    assert verify_fixed_point(p) and p.character == from_cocycle(Cocycle.trivial(g))
    assert from_fixed_point(HomotopyFixedPoint(from_cocycle(Cocycle.trivial(g)), 1, [[[1]]] * 3)) == r


def test_pauli():
    r = pauli_projrep()
    v = verify_projrep(r)
    assert v and v.message == "projective relation holds (16/16 pairs)"
    assert verify_cocycle(r.cocycle)
    assert r.cocycle == klein_cocycle()


def test_pauli_sign_flip_fails():
    r = pauli_projrep()
    mats = list(r.mats)
    mats[3] = linalg.scale(-1, mats[3])
    assert not verify_projrep(ProjRep(KLEIN, r.cocycle, 2, mats))


def test_pauli_fixed_point_and_round_trip():
    r = pauli_projrep()
    p = to_fixed_point(r)
    assert verify_fixed_point(p)
    assert p.character == from_cocycle(r.cocycle)  # sign cocycles are self-inverse
    back = from_fixed_point(p)
    assert back == r and back.mats == r.mats and back.cocycle == r.cocycle


def test_dimension_zero():
    r = ProjRep(KLEIN, klein_cocycle(), 0, [()] * 4)
    assert verify_projrep(r)
    p = to_fixed_point(r)
    assert p.dim == 0 and verify_fixed_point(p)


@given(seeds)
def test_random_z4_round_trip(seed):
    r = random_projrep(cyclic(4), random.Random(seed))
    assert verify_projrep(r)
    p = to_fixed_point(r)
    assert verify_fixed_point(p)
    back = from_fixed_point(p)
    assert back == r and verify_projrep(back)


def test_twisted_regular():
    z2 = cyclic(2)
    r = twisted_regular_rep(Cocycle.trivial(z2))
    assert r.dim == 2 and verify_projrep(r)
    r = twisted_regular_rep(klein_cocycle())
    assert r.dim == 4 and verify_projrep(r)


@pytest.mark.parametrize("label", ["cyclic(4)", "product(cyclic(2),cyclic(2))", "cyclic(6)", "dihedral(4)"])
def test_twisted_regular_on_sampled_cocycles(label):
    from tqftlab.samples import random_cocycle_exponents

    g = group_from_spec(label)
    rnd = random.Random(5)
    for _ in range(3):
        alpha = Cocycle.from_exponents(g, random_cocycle_exponents(g, rnd, 4), 4)
        assert verify_cocycle(alpha)
        assert verify_projrep(twisted_regular_rep(alpha))


def test_from_fixed_point_rejects_two_groups():
    X = small_crossed_modules()[0]
    p = random_fixed_point(X, random.Random(0))
    with pytest.raises(CharacterNotCocycleForm):
        from_fixed_point(p)


@given(seeds)
def test_extracted_holonomy_matches_character(seed):
    rnd = random.Random(seed)
    X = rnd.choice(small_crossed_modules())
    p = random_fixed_point(X, rnd)
    assert verify_fixed_point(p)
    hol = p.character.holonomy
    for a in range(X.fiber.order):
        for g in range(X.base.order):
            assert extract_holonomy(p, a, g) == hol[a][g]


def test_corrupted_candidate_is_flagged():
    X = small_crossed_modules()[0]
    p = random_fixed_point(X, random.Random(1))
    maps = list(p.maps)
    g = 1 if X.target(1, 0) == 0 else 0
    maps[g] = linalg.matmul(maps[g], ((Scalar(1), Scalar(1)), (Scalar(0), Scalar(1)))) if p.dim == 2 else linalg.scale(3, maps[g])
    bad = HomotopyFixedPoint(p.character, p.dim, maps)
    assert not verify_fixed_point(bad)
    try:
        lam = extract_holonomy(bad, 1, g)
    except NotScalarMultiple:
        return
    assert lam != p.character.holonomy[1][g]
