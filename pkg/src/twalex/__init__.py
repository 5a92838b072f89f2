"""Twisted Alexander invariants of braid and welded braid groups over Z[t^+-1, z^+-1, a^+-1]."""

from .exprio import (
    ParseError,
    load_matrix,
    load_presentation,
    load_representation,
    parse_matrix,
    parse_poly,
    parse_presentation,
    parse_representation,
    parse_word,
    render,
)
from .freegroup import GroupRingElement, Word, fox_derivative
from .invariant import (
    EXACT,
    UPPER_BOUND,
    GcdStrategy,
    InvariantError,
    InvariantResult,
    alexander_matrix,
    cross_validate,
    equal_up_to_unit,
    twisted_alexander,
)
from .laurent import TZA, LaurentPoly, VarSet, associates, divides, exact_div, gcd, normal
from .linalg import PolyMatrix, det, det_cofactor, minor
from .presentation import Presentation, braid_group, validate, welded_braid_group
from .representation import MatrixRep, burau_reduced, burau_unreduced, phi_eval, tym, validate_rep, wtym

__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Path of a bundled fixture file."""
    from pathlib import Path
    return str(Path(__file__).with_name("data") / name)
