"""Exact computations for Verma modules of the N=2 superconformal algebra."""

__version__ = "0.1.0"

from .algebra import Gm, Gp, Kind, L, Mode, T, bracket, mode_grade, parity
from .verma import (
    DEFAULT_CUTOFF,
    CutoffExceeded,
    Grade,
    HighestWeight,
    ModuleElement,
    ModulePresentation,
    check_singular,
    graded_dim_gf,
    is_singular,
    pbw_basis,
)
from .singular import build_vsing, find_singular, predicted_weights, verify_embedding_data, verify_vsing
from .spectrum import (
    AdmissibleLevel,
    central_charge,
    d_membership,
    is_admissible,
    lemma_duv_check,
    s_set,
    w_set,
)
