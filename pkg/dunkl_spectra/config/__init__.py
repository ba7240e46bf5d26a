from .output_paths import OUTPUT_PATHS, OutputPaths
from .settings import (
    COEFFS,
    FITS,
    QUADRATURE,
    SPECTRA,
    CoeffConfig,
    FitConfig,
    QuadratureConfig,
    SpectraConfig,
)

__all__ = [
    'OUTPUT_PATHS', 'OutputPaths',
    'QuadratureConfig', 'CoeffConfig', 'SpectraConfig', 'FitConfig',
    'QUADRATURE', 'COEFFS', 'SPECTRA', 'FITS',
]
