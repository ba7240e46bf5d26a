from dataclasses import dataclass


@dataclass
class QuadratureConfig:
    """Tanh-sinh quadrature defaults"""
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_level: int = 8
    t_max: float = 6.0


@dataclass
class CoeffConfig:
    """Coefficient table defaults"""
    default_order: int = 128
    degeneracy_tol: float = 1e-9
    max_index: int = 10_000


@dataclass
class SpectraConfig:
    """Rayleigh-Ritz defaults"""
    default_order: int = 256
    convergence_rtol: float = 1e-8
    sandwich_rtol: float = 1e-3
    window_fraction: float = 0.25
    parity_tie_tol: float = 1e-6
    symmetry_tol: float = 1e-12
    slope_tol: float = 0.15
    slope_window: tuple = (16, 64)


@dataclass
class FitConfig:
    """Constant fitting defaults (pure data, no persistence)"""
    seed: int = 20151104
    trials: int = 64
    epsilon: float = 0.1
    min_decay_index: int = 8


QUADRATURE = QuadratureConfig()
COEFFS = CoeffConfig()
SPECTRA = SpectraConfig()
FITS = FitConfig()
