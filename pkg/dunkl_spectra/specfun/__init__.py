from .gamma import (
    ProductForm,
    gamma_ratio,
    gautschi_sweep,
    log_abs_gamma,
    log_gamma,
    partial_product,
    signed_log_gamma_ratio,
    weierstrass_sweep,
)

__all__ = [
    'ProductForm',
    'log_gamma',
    'log_abs_gamma',
    'signed_log_gamma_ratio',
    'gamma_ratio',
    'partial_product',
    'weierstrass_sweep',
    'gautschi_sweep',
]
