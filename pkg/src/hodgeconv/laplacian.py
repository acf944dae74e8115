"""Hodge-Laplacian assembly and the dense spectral oracle.

The k-th Hodge-Laplacian combines the boundary operators on both sides
of dimension k: L_k = B_{k+1} B_{k+1}^T + B_k^T B_k.  For k = 0 this is
the graph Laplacian D - A; for k = 1 it acts on edge signals and the
triangle term vanishes on complexes without 2-simplices.

The dense eigendecomposition here is a validation oracle, never the
production filtering path (module ``filters`` applies the polynomial
recurrence instead).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.sparse as sp

from .complexes import SimplicialComplex, boundary_1, boundary_2
from .errors import OracleLimitError, UnsupportedDimensionError

DEFAULT_ORACLE_LIMIT = 2000
EIGENVALUE_CLAMP = 1e-12


@dataclass(frozen=True)
class HodgeLaplacian:
    """Sparse symmetric PSD operator on k-simplices.

    Keeps a reference to the complex it was assembled from so that
    structural queries (filter support) can reach the topology; the
    reference is None for operators built from a raw matrix.
    """

    k: int
    dim: int
    matrix: sp.csr_matrix
    source_complex: Optional[SimplicialComplex] = None

    @classmethod
    def from_matrix(cls, matrix, k: int = 0) -> "HodgeLaplacian":
        m = sp.csr_matrix(matrix, dtype=np.float64)
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"Laplacian must be square, got {m.shape}")
        return cls(k=k, dim=m.shape[0], matrix=m)


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray   # ascending, clamped at 0
    eigenvectors: np.ndarray  # orthonormal columns, column j pairs with value j


def hodge_laplacian(complex: SimplicialComplex, k: int) -> HodgeLaplacian:
    if k == 0:
        b1 = boundary_1(complex).to_sparse()
        mat = (b1 @ b1.T).tocsr()
        dim = complex.n_nodes
    elif k == 1:
        b1 = boundary_1(complex).to_sparse()
        mat = (b1.T @ b1).tocsr()
        if complex.triangles:
            b2 = boundary_2(complex).to_sparse()
            mat = (mat + b2 @ b2.T).tocsr()
        dim = complex.n_edges
    else:
        raise UnsupportedDimensionError(f"k must be 0 or 1, got {k}")
    mat.sum_duplicates()
    return HodgeLaplacian(k=k, dim=dim, matrix=mat, source_complex=complex)


def spectral_decompose(
    L: HodgeLaplacian, oracle_limit: int = DEFAULT_ORACLE_LIMIT
) -> SpectralDecomposition:
    """Dense eigendecomposition, ascending eigenvalues.

    Values in (-1e-12, 0) are rounding leakage from an exactly PSD
    operator and are clamped to 0 so spectrum functions like sqrt stay
    defined.
    """
    if L.dim > oracle_limit:
        raise OracleLimitError(f"dimension {L.dim} exceeds oracle limit {oracle_limit}")
    if L.dim == 0:
        return SpectralDecomposition(np.zeros(0), np.zeros((0, 0)))
    evals, evecs = np.linalg.eigh(L.matrix.toarray())
    evals = np.where((evals < 0) & (evals > -EIGENVALUE_CLAMP), 0.0, evals)
    return SpectralDecomposition(eigenvalues=evals, eigenvectors=evecs)


def spectral_filter_reference(
    L: HodgeLaplacian,
    spectrum: Callable[[float], float],
    f: np.ndarray,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> np.ndarray:
    """Ground-truth filtering Psi diag(h(lambda)) Psi^T f.

    ``spectrum`` is evaluated once per eigenvalue; ``f`` may be a vector
    or a (dim, channels) matrix.
    """
    dec = spectral_decompose(L, oracle_limit=oracle_limit)
    h = np.array([float(spectrum(lam)) for lam in dec.eigenvalues])
    f = np.asarray(f, dtype=np.float64)
    coeffs = dec.eigenvectors.T @ f
    return dec.eigenvectors @ (h[:, None] * coeffs if f.ndim == 2 else h * coeffs)


def power_iteration_lambda_max(L: HodgeLaplacian, n_steps: int = 50, seed: int = 0) -> float:
    """Largest-eigenvalue estimate by plain power iteration."""
    if L.dim == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(L.dim)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(n_steps):
        w = L.matrix @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        lam = float(v @ w)
        v = w / norm
    return lam


def laplacian_to_coo_text(L: HodgeLaplacian) -> str:
    """Debug export: one "row col value" line per nonzero, row-major order."""
    coo = L.matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    return "\n".join(f"{coo.row[i]} {coo.col[i]} {coo.data[i]:.17g}" for i in order)
