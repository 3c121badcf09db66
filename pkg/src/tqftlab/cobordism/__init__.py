"""Cobordism words, 1d normal forms and their evaluation."""

from .cob1 import Cob1, canonical_word, compose, from_word, homs, identity, mapping_cylinder, sign_strings
from .dsl import CobWord, parse_word, serialize_word, typecheck
from .evaluate import (
    FROBENIUS_RELATIONS,
    BoundaryData,
    closed_value,
    eval_1d,
    eval_1d_data,
    eval_closed_2d,
    eval_normal_form,
    genus_word,
    permutation_operator,
    transmission,
)

__all__ = [
    "BoundaryData",
    "Cob1",
    "CobWord",
    "FROBENIUS_RELATIONS",
    "canonical_word",
    "closed_value",
    "compose",
    "eval_1d",
    "eval_1d_data",
    "eval_closed_2d",
    "eval_normal_form",
    "from_word",
    "genus_word",
    "homs",
    "identity",
    "mapping_cylinder",
    "parse_word",
    "permutation_operator",
    "serialize_word",
    "sign_strings",
    "transmission",
    "typecheck",
]
