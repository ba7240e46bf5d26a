from .params import MAX_INDEX, BasisParams
from .hermite import (
    HermiteValue,
    LadderDirection,
    apply_ladder,
    dunkl_derivative,
    evaluate,
    hermite_derivative,
    hermite_derivative_table,
    hermite_p,
    hermite_table,
    ladder_coeff,
    phi,
    xinv_coeffs,
)

__all__ = [
    'MAX_INDEX', 'BasisParams', 'HermiteValue', 'LadderDirection',
    'hermite_p', 'phi', 'evaluate', 'hermite_table', 'hermite_derivative', 'hermite_derivative_table',
    'dunkl_derivative', 'ladder_coeff', 'apply_ladder', 'xinv_coeffs',
]
