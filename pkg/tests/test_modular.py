import cmath
import random

import numpy as np
import pytest

from tqftlab.anomaly.modular import (
    ModularData,
    modular_defect,
    modular_defect_float,
    parse_relator,
    semion,
    toric_code,
    verify_modular_data,
)
from tqftlab.errors import NotProjectivelyTrivial, ParseError
from tqftlab.scalar import root_of_unity

RELATOR = "(S T)^3 S^-2"
BASE_RELATORS = ["S^4", "S^2 T S^-2 T^-1", RELATOR]


def numeric_fixture(name):
    """Oracle matrices written down from trigonometric values, independent of the Scalar code."""
    if name == "toric":
        S = 0.5 * np.array([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]], dtype=complex)
        T = np.diag([1, 1, 1, -1]).astype(complex)
    else:
        S = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        T = np.diag([1, 1j])
    return S, T


def oracle_defect(name):
    S, T = numeric_fixture(name)
    ST = S @ T
    M = ST @ ST @ ST @ np.linalg.inv(S @ S)
    c = M[0, 0]
    assert np.allclose(M, c * np.eye(len(S)), atol=1e-12)
    return c


@pytest.mark.parametrize("m", [toric_code(), semion()], ids=["toric", "semion"])
def test_fixtures_are_well_formed(m):
    assert verify_modular_data(m)
    S, T = numeric_fixture(m.label if m.label == "semion" else "toric")
    assert np.allclose(np.array([[complex(x) for x in r] for r in m.S]), S)
    assert np.allclose(np.array([[complex(x) for x in r] for r in m.T]), T)


def test_identity_relator():
    assert modular_defect(semion(), "") == 1
    assert modular_defect(toric_code(), "S S^-1 T^0") == 1


def test_toric_defect_is_one():
    assert modular_defect(toric_code(), RELATOR) == 1
    assert abs(oracle_defect("toric") - 1) < 1e-9


def test_semion_defect_is_zeta8():
    exact = modular_defect(semion(), RELATOR)
    assert exact == root_of_unity(8)
    assert abs(complex(exact) - oracle_defect("semion")) < 1e-9
    assert abs(modular_defect_float(semion(), RELATOR) - cmath.exp(1j * cmath.pi / 4)) < 1e-9


def test_non_scalar_relator():
    with pytest.raises(NotProjectivelyTrivial):
        modular_defect(toric_code(), "S")
    with pytest.raises(NotProjectivelyTrivial):
        modular_defect_float(semion(), "S T")


@pytest.mark.parametrize("text,pos", [("S X", 2), ("(S T", 4), ("S)", 1), ("^2", 0)])
def test_relator_parse_errors(text, pos):
    with pytest.raises(ParseError) as info:
        parse_relator(text)
    assert info.value.pos == pos


def _conjugate(word, rnd):
    g = " ".join(rnd.choice(["S", "T", "S^-1", "T^-1"]) for _ in range(rnd.randint(1, 3)))
    return f"({g}) ({word}) ({g})^-1"


@pytest.mark.parametrize("m", [toric_code(), semion()], ids=["toric", "semion"])
def test_defect_is_multiplicative(m):
    rnd = random.Random(2)
    for _ in range(25):
        parts = [rnd.choice(BASE_RELATORS) for _ in range(rnd.randint(1, 3))]
        parts = [_conjugate(p, rnd) if rnd.random() < 0.5 else p for p in parts]
        prod = modular_defect(m, " ".join(f"({p})" for p in parts))
        expected = 1
        for p in parts:
            expected = expected * modular_defect(m, p)
        assert prod == expected
        assert abs(complex(prod) - modular_defect_float(m, " ".join(f"({p})" for p in parts))) < 1e-9


def test_modular_data_shape_check():
    with pytest.raises(ValueError):
        ModularData(((1, 0),), ((1,),))
