"""Center-focus analysis and limit-cycle bifurcation for planar vector fields
with a p:q weighted-homogeneous leading part."""

from .fields import (
    Monomial,
    WeightedField,
    ValidationReport,
    validate,
    normalize,
    reduce_weights,
    parse_system,
    load_system,
)
from .jets import Jet, jet_add, jet_mul, jet_div, jet_compose
from .polar import PolarRHS, homog_component, rq, polar_rhs
from .flow import (
    JetTrajectory,
    SectionCrossing,
    integrate_jet,
    return_map,
    identity_residuals,
    section_return,
    nu1_closed_form,
)
from .focal import (
    FocalReport,
    focal_values,
    shifted_focal_check,
    focal_jacobian,
    parity_survey,
    structural_center,
)
from .cycles import CycleSet, displacement, find_cycles, alternation_search
from .quadrature import QuadResult, quad_periodic
from . import casestudy

__version__ = "0.1.0"

__all__ = [
    "Monomial",
    "WeightedField",
    "ValidationReport",
    "validate",
    "normalize",
    "reduce_weights",
    "parse_system",
    "load_system",
    "Jet",
    "jet_add",
    "jet_mul",
    "jet_div",
    "jet_compose",
    "PolarRHS",
    "homog_component",
    "rq",
    "polar_rhs",
    "JetTrajectory",
    "SectionCrossing",
    "integrate_jet",
    "return_map",
    "identity_residuals",
    "section_return",
    "nu1_closed_form",
    "FocalReport",
    "focal_values",
    "shifted_focal_check",
    "focal_jacobian",
    "parity_survey",
    "structural_center",
    "CycleSet",
    "displacement",
    "find_cycles",
    "alternation_search",
    "QuadResult",
    "quad_periodic",
    "casestudy",
]
