import logging
from typing import Dict, Iterable, List, Tuple

import numpy as np
from scipy import linalg

from ..config import SPECTRA
from ..errors import ConvergenceError, DomainError
from .assemblers import get_assembler
from .base import OperatorSpec, RitzResult

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-10


def eigen_sym(matrix: np.ndarray, symmetry_tol: float = SPECTRA.symmetry_tol) -> Tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix.

    Raises:
        DomainError: When the matrix is not square or not symmetric within symmetry_tol relative
        ConvergenceError: When an eigenpair residual exceeds 1e-10 ||A||
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError(f"Expected a square matrix, got shape {matrix.shape}")
    norm = float(np.max(np.abs(matrix))) if matrix.size else 0.0
    asymmetry = float(np.max(np.abs(matrix - matrix.T))) if matrix.size else 0.0
    if asymmetry > symmetry_tol * max(norm, 1.0):
        raise DomainError(f"Matrix is not symmetric: max |A - A^T| = {asymmetry:.3e}")
    if not np.all(np.isfinite(matrix)):
        raise DomainError("Matrix has non-finite entries")

    values, vectors = linalg.eigh(0.5 * (matrix + matrix.T))
    residual = np.linalg.norm(matrix @ vectors - vectors * values, axis=0)
    scale = np.linalg.norm(matrix, 2)
    worst = float(np.max(residual)) if residual.size else 0.0
    if worst > RESIDUAL_TOL * max(scale, 1.0):
        raise ConvergenceError(f"Eigenpair residual {worst:.3e} exceeds {RESIDUAL_TOL} ||A|| = {scale:.3e}")
    return values, vectors


def _parity(vectors: np.ndarray, indices: np.ndarray, tie_tol: float):
    """Dominant parity of each eigenvector and the positions that are ties."""
    even_share = np.sum(vectors[indices % 2 == 0, :] ** 2, axis=0)
    labels = tuple("even" if share >= 0.5 else "odd" for share in even_share)
    ties = tuple(int(j) for j in np.nonzero(np.abs(even_share - 0.5) <= tie_tol)[0])
    return labels, ties


def solve(spec: OperatorSpec, keep_vectors: bool = False) -> RitzResult:
    """Rayleigh-Ritz values of one truncation without a convergence column."""
    assembler = get_assembler(spec.kind)
    matrix = assembler.assemble(spec)
    values, vectors = eigen_sym(matrix)
    indices = assembler.indices(spec)
    labels, ties = _parity(vectors, indices, SPECTRA.parity_tie_tol)
    if ties:
        logger.warning("%d eigenvectors of %s have no dominant parity: %s", len(ties), spec.kind.value, ties)
    return RitzResult(
        kind=spec.kind.value,
        N=spec.N,
        eigenvalues=values,
        indices=indices,
        baseline=np.sort(assembler.baseline(spec)),
        parity_labels=labels,
        ties=ties,
        scale=spec.s,
        eigenvectors=vectors if keep_vectors else None,
    )


def with_convergence(result: RitzResult, coarse: RitzResult) -> RitzResult:
    """Attach |lambda_k(N) - lambda_k(N')| for the k both truncations share."""
    change = np.full(result.eigenvalues.shape, np.nan)
    shared = min(len(result.eigenvalues), len(coarse.eigenvalues))
    change[:shared] = np.abs(result.eigenvalues[:shared] - coarse.eigenvalues[:shared])
    return RitzResult(
        kind=result.kind, N=result.N, eigenvalues=result.eigenvalues, indices=result.indices,
        baseline=result.baseline, parity_labels=result.parity_labels, ties=result.ties,
        convergence=change, scale=result.scale, rtol=result.rtol, eigenvectors=result.eigenvectors,
    )


def ritz_spectrum(spec: OperatorSpec, N_list: Iterable[int]) -> List[RitzResult]:
    """Ritz values for every order in N_list, each compared with the order N/2.

    Raises:
        DomainError: For an empty or invalid order list
    """
    orders = [int(N) for N in N_list]
    if not orders:
        raise DomainError("ritz_spectrum needs at least one truncation order")
    cache: Dict[int, RitzResult] = {}

    def at(N: int) -> RitzResult:
        if N not in cache:
            cache[N] = solve(spec.with_order(N))
        return cache[N]

    results = []
    for N in orders:
        result = at(N)
        if N // 2 >= 2:
            result = with_convergence(result, at(N // 2))
        converged = int(np.sum(result.converged))
        logger.info("%s at N=%d: lambda_0=%.10g, %d of %d values converged",
                    spec.kind.value, N, result.eigenvalues[0], converged, len(result.eigenvalues))
        results.append(result)
    return results
