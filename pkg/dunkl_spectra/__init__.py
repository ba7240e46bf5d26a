from pathlib import Path

__version__ = "0.1.0"
PACKAGE_ROOT = Path(__file__).parent

from .errors import (
    ConvergenceError,
    DegeneracyError,
    DomainError,
    DunklSpectraError,
    HypothesisError,
    InsufficientDataError,
)
from .basis import BasisParams
from .coeffs import MixedParams, TParams, chat_matrix, cprime_matrix, t_matrix_closed
from .spectra import OperatorKind, OperatorSpec, RitzResult, ritz_spectrum, sandwich_check, witten_build
from .config import OUTPUT_PATHS

__all__ = [
    'BasisParams',
    'TParams',
    'MixedParams',
    't_matrix_closed',
    'chat_matrix',
    'cprime_matrix',
    'OperatorKind',
    'OperatorSpec',
    'RitzResult',
    'ritz_spectrum',
    'sandwich_check',
    'witten_build',
    'OUTPUT_PATHS',
    'DunklSpectraError',
    'DomainError',
    'DegeneracyError',
    'InsufficientDataError',
    'HypothesisError',
    'ConvergenceError',
    '__version__',
]
