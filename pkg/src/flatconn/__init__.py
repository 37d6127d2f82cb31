"""Exact checks for flat complex connections on Lie algebras and polynomial frames."""

from .complex_structure import InnerMetric, LinearComplexStructure, classify_structure, nijenhuis
from .connection_lab import (
    Connection,
    TorsionType,
    chern,
    curvature,
    first_canonical,
    levi_civita,
    minus_connection,
    torsion,
    torsion_type,
)
from .exact_core import Polynomial
from .frame_fields import Frame, PolyVectorField, field_bracket, frame_torsion_type
from .lie_algebra import LieAlgebra, bracket, is_two_step_solvable, is_unimodular

__version__ = "0.1.0"
