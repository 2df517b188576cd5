"""Hermitian eigendecomposition with ascending ordering, classification of
eigenvalue-coincidence patterns into strata, and spectral-gap quantities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermitian import frobenius_norm

__all__ = [
    "Spectrum",
    "StratumPartition",
    "eigh",
    "classify_stratum",
    "is_in_sigma_k",
    "is_on_boundary",
    "stratum_codimension",
    "half_gap",
]

#: Default relative tolerance for declaring adjacent eigenvalues coincident.
#: The underlying geometry has no numerical tolerance; this one is the
#: artifact's configurable choice.
DEGENERACY_RTOL = 1e-8

#: Residual bound accepted from the eigensolver, relative to max(1, ||H||_F).
RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition H = U diag(eigenvalues) U^dagger.

    eigenvalues are ascending; column a of vectors is the eigenvector of
    eigenvalue a; residual is ||H U - U diag(eigenvalues)||_F.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    residual: float

    @property
    def n(self):
        return len(self.eigenvalues)

    def operator_2_norm(self):
        return float(np.max(np.abs(self.eigenvalues))) if self.n else 0.0


@dataclass(frozen=True)
class StratumPartition:
    """Ordered partition (k_1, ..., k_l) of n recording which consecutive
    eigenvalues coincide, together with the grouping tolerance used."""

    parts: tuple
    tolerance: float

    @property
    def n(self):
        return sum(self.parts)


def eigh(h):
    """Full eigendecomposition of a Hermitian matrix.

    Eigenvalues come out ascending. Each eigenvector's phase is fixed by
    making its largest-modulus component real and positive, purely so that
    repeated runs print identically; no algorithm downstream depends on the
    phase. The reconstruction residual is checked against
    RESIDUAL_RTOL * max(1, ||H||_F).
    """
    h = np.asarray(h)
    vals, vecs = np.linalg.eigh(h)
    vecs = vecs.copy()
    for j in range(vecs.shape[1]):
        i = int(np.argmax(np.abs(vecs[:, j])))
        pivot = vecs[i, j]
        if abs(pivot) > 0.0:
            vecs[:, j] *= np.conj(pivot) / abs(pivot)
    residual = float(np.linalg.norm(h @ vecs - vecs * vals, "fro"))
    bound = RESIDUAL_RTOL * max(1.0, frobenius_norm(h))
    if residual > bound:
        raise np.linalg.LinAlgError(
            f"eigendecomposition residual {residual:.3e} exceeds {bound:.3e}"
        )
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return Spectrum(eigenvalues=vals, vectors=vecs, residual=residual)


def classify_stratum(spec, rel_tol=DEGENERACY_RTOL):
    """Group consecutive eigenvalues whose gap is at most
    rel_tol * max(1, ||H||_2); grouping is chained (transitive).

    Near-threshold spectra may classify unstably; that is inherent in
    cutting a continuum with a tolerance.
    """
    if rel_tol <= 0.0:
        raise ValueError("rel_tol must be positive")
    vals = np.asarray(spec.eigenvalues)
    tol = rel_tol * max(1.0, spec.operator_2_norm())
    parts = []
    run = 1
    for gap in np.diff(vals):
        if gap <= tol:
            run += 1
        else:
            parts.append(run)
            run = 1
    parts.append(run)
    return StratumPartition(parts=tuple(parts), tolerance=tol)


def is_in_sigma_k(partition, k):
    """True when the lowest k eigenvalues coincide and are strictly separated
    from the (k+1)-th, i.e. k_1 = k with at least two parts."""
    parts = partition.parts
    return parts[0] == k and len(parts) >= 2


def is_on_boundary(partition, k):
    """True when eigenvalues k and k+1 fall into one part (lambda_k equals
    lambda_{k+1}), where the projection onto the k-fold manifold loses
    uniqueness."""
    upper = 0
    for p in partition.parts:
        lower = upper + 1
        upper += p
        if lower <= k and k + 1 <= upper:
            return True
    return False


def stratum_codimension(partition):
    """Codimension sum_i (k_i^2 - 1) of the stratum labeled by the partition."""
    return int(sum(p * p - 1 for p in partition.parts))


def half_gap(h0, k):
    """Half the spectral gap (lambda_{k+1} - lambda_k)/2 of a matrix; zero on
    the boundary stratum. This is the operator-2-norm ball radius within
    which the block decomposition is unique."""
    h0 = np.asarray(h0)
    n = h0.shape[0]
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    vals = np.linalg.eigvalsh(h0)
    return float(vals[k] - vals[k - 1]) / 2.0
