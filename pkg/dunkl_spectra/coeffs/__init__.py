from .params import MixedCase, MixedParams, TParams
from .matrix import SCHEMA_VERSION, CoeffFamily, CoeffMatrix, Method
from .tform import (
    c00,
    d_table_closed,
    d_table_recursive,
    pi_factor,
    sigma_bounds_report,
    sigma_row0_alternative,
    sigma_table,
    t_coeff_closed,
    t_matrix_closed,
    t_matrix_quadrature,
    t_matrix_recursive,
)
from .mixed import (
    chat_coeff,
    chat_matrix,
    cprime_by_expansion,
    cprime_coeff,
    cprime_matrix,
    telescope_check,
)

__all__ = [
    'TParams', 'MixedParams', 'MixedCase',
    'CoeffFamily', 'CoeffMatrix', 'Method', 'SCHEMA_VERSION',
    'c00', 'pi_factor', 'sigma_table', 'sigma_row0_alternative', 'sigma_bounds_report',
    'd_table_closed', 'd_table_recursive',
    't_coeff_closed', 't_matrix_closed', 't_matrix_recursive', 't_matrix_quadrature',
    'chat_coeff', 'chat_matrix', 'cprime_coeff', 'cprime_by_expansion', 'cprime_matrix',
    'telescope_check',
]
