"""Anomalies, anomalous theories, the boundary reduction and modular defects."""

from .modular import (
    ModularData,
    modular_defect,
    modular_defect_float,
    parse_relator,
    relator_matrix,
    semion,
    toric_code,
    verify_modular_data,
)
from .model import CobordismModel, build_1d_model, verify_model
from .reduction import (
    CYLINDER_PIECES,
    cylinderize,
    euler_anomaly,
    euler_weight,
    pieces,
    reduce_boundary,
    restrict_to_object,
)
from .theory import AnomalousTheory, SemitrivializedAnomaly, verify_anomalous_theory, verify_anomaly

__all__ = [
    "AnomalousTheory",
    "CYLINDER_PIECES",
    "CobordismModel",
    "ModularData",
    "SemitrivializedAnomaly",
    "build_1d_model",
    "cylinderize",
    "euler_anomaly",
    "euler_weight",
    "modular_defect",
    "modular_defect_float",
    "parse_relator",
    "pieces",
    "reduce_boundary",
    "relator_matrix",
    "restrict_to_object",
    "semion",
    "toric_code",
    "verify_anomalous_theory",
    "verify_anomaly",
    "verify_model",
    "verify_modular_data",
]
