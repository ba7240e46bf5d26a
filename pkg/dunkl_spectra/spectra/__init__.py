from .base import FormAssembler, OperatorKind, OperatorSpec, RitzResult
from .assemblers import assemble_U, assemble_V, get_assembler, indicial_exponent
from .solver import eigen_sym, ritz_spectrum, solve
from .sandwich import SandwichReport, gap_slope, sandwich_check, sandwich_check_V
from .halfline import IndicialRoot, assemble_halfline_direct, halfline_reduce
from .witten import WittenModel, WittenRow, supersymmetric_pairing, witten_build, witten_spectrum

__all__ = [
    'OperatorKind', 'OperatorSpec', 'RitzResult', 'FormAssembler',
    'get_assembler', 'assemble_U', 'assemble_V', 'indicial_exponent',
    'eigen_sym', 'solve', 'ritz_spectrum',
    'SandwichReport', 'sandwich_check', 'sandwich_check_V', 'gap_slope',
    'IndicialRoot', 'halfline_reduce', 'assemble_halfline_direct',
    'WittenModel', 'WittenRow', 'witten_build', 'witten_spectrum', 'supersymmetric_pairing',
]
