import random

import pytest
from hypothesis import given

from strategies import seeds
from tqftlab.character2 import (
    CharacterMorphism,
    Cocycle,
    TwoCharacter,
    coboundary,
    commutator_pairing,
    find_morphism,
    from_cocycle,
    holonomy_table,
    is_coboundary,
    klein_cocycle,
    lift_to_crossed_module,
    verify_character_morphism,
    verify_cocycle,
    verify_two_character,
)
from tqftlab.errors import NotCommuting, NotTwoGroup
from tqftlab.group import CrossedModule, cyclic, group_from_spec
from tqftlab.samples import random_cocycle_exponents, random_mu_table
from tqftlab.scalar import ONE, Scalar, root_of_unity

S3 = group_from_spec("symmetric(3)")
KLEIN = group_from_spec("product(cyclic(2),cyclic(2))")
E10, E01 = KLEIN.index("(1,0)"), KLEIN.index("(0,1)")


def random_beta(g, rnd, order):
    return [ONE] + [root_of_unity(order, rnd.randrange(order)) for _ in range(g.order - 1)]


def test_trivial_character_passes():
    for g in (cyclic(1), cyclic(5), S3):
        assert verify_two_character(TwoCharacter(g, [[1] * g.order for _ in range(g.order)]))


def test_klein_character():
    alpha = klein_cocycle()
    c = from_cocycle(alpha)
    v = verify_two_character(c)
    assert v and v.total == 64
    assert c.psi == alpha.values


def test_klein_character_corrupted():
    psi = [list(r) for r in klein_cocycle().values]
    psi[E10][E01] = -psi[E10][E01]
    v = verify_two_character(TwoCharacter(KLEIN, psi))
    assert not v and len(v.witness) == 3


def test_unit_condition_is_enforced():
    psi = [[ONE] * 2 for _ in range(2)]
    psi[0][0] = Scalar(-1)
    assert not verify_two_character(TwoCharacter(cyclic(2), psi))


@given(seeds)
def test_s3_cocycles_give_characters(seed):
    rnd = random.Random(seed)
    alpha = coboundary(S3, random_beta(S3, rnd, 6))
    assert verify_cocycle(alpha)
    assert verify_two_character(from_cocycle(alpha))


@given(seeds)
def test_cocycle_check_agrees_with_character_check(seed):
    rnd = random.Random(seed)
    g = rnd.choice([cyclic(4), KLEIN, S3])
    exps = random_cocycle_exponents(g, rnd, 4) if seed % 2 else random_mu_table(g, rnd, 4)
    alpha = Cocycle.from_exponents(g, exps, 4)
    assert bool(verify_cocycle(alpha)) == bool(verify_two_character(from_cocycle(alpha)))


def test_commutator_pairing():
    assert commutator_pairing(Cocycle.trivial(KLEIN), E10, E01) == 1
    assert commutator_pairing(klein_cocycle(), E10, E01) == -1
    for x in KLEIN.elements:
        assert commutator_pairing(klein_cocycle(), x, x) == 1
    with pytest.raises(NotCommuting):
        commutator_pairing(Cocycle.trivial(S3), 1, 2)


def test_commutator_pairing_is_coboundary_invariant():
    rnd = random.Random(7)
    alpha = klein_cocycle()
    for _ in range(100):
        beta = random_beta(KLEIN, rnd, 8)
        assert commutator_pairing(alpha * coboundary(KLEIN, beta), E10, E01) == -1


def test_identity_morphism():
    c = from_cocycle(klein_cocycle())
    assert verify_character_morphism(CharacterMorphism(c, c, [ONE] * 4))


def test_coboundary_morphisms_on_z4():
    z4 = cyclic(4)
    rnd = random.Random(11)
    for _ in range(50):
        alpha = Cocycle.from_exponents(z4, random_cocycle_exponents(z4, rnd, 4), 4)
        beta = random_beta(z4, rnd, 4)
        src = from_cocycle(alpha * coboundary(z4, beta))
        assert verify_character_morphism(CharacterMorphism(src, from_cocycle(alpha), beta))


def test_no_morphism_between_klein_classes():
    triv, twisted = from_cocycle(Cocycle.trivial(KLEIN)), from_cocycle(klein_cocycle())
    assert find_morphism(triv, twisted) is None
    assert not is_coboundary(klein_cocycle())
    rnd = random.Random(3)
    for _ in range(20):
        xi = random_beta(KLEIN, rnd, 4)
        assert not verify_character_morphism(CharacterMorphism(triv, twisted, xi))


def test_holonomy_flags():
    z2 = cyclic(2)
    X = CrossedModule(z2, z2, [0, 1])
    flat = TwoCharacter(X, [[1, 1], [1, 1]])
    assert holonomy_table(flat)[1]
    twisted = TwoCharacter(X, [[1, 1], [1, 1]], [[1, 1], [-1, -1]])
    assert verify_two_character(twisted)
    assert not holonomy_table(twisted)[1]
    lifted = lift_to_crossed_module(from_cocycle(Cocycle.trivial(z2)), X)
    assert holonomy_table(lifted)[1]
    with pytest.raises(NotTwoGroup):
        holonomy_table(flat.__class__(z2, [[1, 1], [1, 1]]))
