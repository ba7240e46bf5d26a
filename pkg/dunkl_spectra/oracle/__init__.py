from .quadrature import (
    QuadratureSpec,
    gaussian_moment,
    gaussian_radius,
    gram_matrix,
    inner_weighted,
    integrate,
    integrate_table,
    refinement_sequence,
    unit_nodes,
)

__all__ = [
    'QuadratureSpec',
    'gaussian_moment',
    'gaussian_radius',
    'inner_weighted',
    'integrate',
    'integrate_table',
    'gram_matrix',
    'refinement_sequence',
    'unit_nodes',
]
