"""Exact-arithmetic checks for 2-characters, projective representations,
Frobenius-algebra TQFTs, anomalies and their boundary reductions."""

from .character2 import Cocycle, TwoCharacter, from_cocycle, verify_cocycle, verify_two_character
from .errors import WorkbenchError
from .frobenius import FrobeniusAlgebra, make_group_algebra, verify_frobenius
from .group import CrossedModule, FiniteGroup, build_catalog_group, group_from_spec, verify_group
from .projrep import HomotopyFixedPoint, ProjRep, from_fixed_point, to_fixed_point, verify_fixed_point, verify_projrep
from .scalar import Scalar, root_of_unity
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "Cocycle",
    "CrossedModule",
    "FiniteGroup",
    "FrobeniusAlgebra",
    "HomotopyFixedPoint",
    "ProjRep",
    "Scalar",
    "TwoCharacter",
    "Verdict",
    "WorkbenchError",
    "build_catalog_group",
    "from_cocycle",
    "from_fixed_point",
    "group_from_spec",
    "make_group_algebra",
    "root_of_unity",
    "to_fixed_point",
    "verify_cocycle",
    "verify_fixed_point",
    "verify_frobenius",
    "verify_group",
    "verify_projrep",
    "verify_two_character",
]
