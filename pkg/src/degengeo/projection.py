"""Closest-point projection onto the manifold of k-fold degenerate Hermitian
matrices, the distance formula, alternate eigenvalue-merging projections, and
orthogonality diagnostics.

The distance from H to the manifold of matrices whose k lowest eigenvalues
coincide (and stay strictly below the rest) is sqrt(k) times the population
standard deviation of those k eigenvalues, and the unique closest point is
obtained by replacing them with their mean in any eigenbasis of H. The same
holds for a k-fold window anywhere in the spectrum via the `offset` argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBoundary, NotInSigmaK
from .hermitian import frobenius_norm
from .spectra import DEGENERACY_RTOL, eigh

__all__ = [
    "ProjectionResult",
    "collapse_projection",
    "distance_to_sigma",
    "project_with_index_set",
    "orthogonality_check",
    "sample_sigma_k",
]


@dataclass(frozen=True)
class ProjectionResult:
    """Closest point of the degeneracy manifold together with the distance
    data: distance = sqrt(k) * std_dev, std_dev the population standard
    deviation of the window eigenvalues, mean_lambda their mean. `unique` is
    False when the window is not strictly separated (the projection then
    depends on the eigenbasis choice, but the distance does not)."""

    h_sigma: np.ndarray
    distance: float
    std_dev: float
    mean_lambda: float
    unique: bool
    k: int
    offset: int = 0


def _window_edges_separated(vals, k, offset, tol):
    lo, hi = offset, offset + k
    if lo > 0 and vals[lo] - vals[lo - 1] <= tol:
        return False
    if hi < len(vals) and vals[hi] - vals[hi - 1] <= tol:
        return False
    return True


def collapse_projection(h, k, offset=0, rel_tol=DEGENERACY_RTOL):
    """Project H to the k-fold degeneracy manifold by collapsing the window
    eigenvalues (offset+1 .. offset+k, ascending) to their mean.

    Always returns a result; on the boundary (window not separated from its
    neighbours) the projection uses the eigenbasis as computed and is marked
    `unique=False`, while the distance value remains correct.
    """
    h = np.asarray(h)
    n = h.shape[0]
    if not (0 <= offset and 1 <= k and offset + k <= n):
        raise ValueError(f"invalid window: n={n}, k={k}, offset={offset}")
    spec = eigh(h)
    vals = spec.eigenvalues
    win = vals[offset : offset + k]
    mean = float(np.mean(win))
    std = float(np.sqrt(np.mean((win - mean) ** 2)))
    collapsed = vals.copy()
    collapsed[offset : offset + k] = mean
    u = spec.vectors
    h_sigma = (u * collapsed) @ u.conj().T
    h_sigma = (h_sigma + h_sigma.conj().T) / 2.0
    h_sigma.setflags(write=False)
    tol = rel_tol * max(1.0, spec.operator_2_norm())
    return ProjectionResult(
        h_sigma=h_sigma,
        distance=frobenius_norm(h - h_sigma),
        std_dev=std,
        mean_lambda=mean,
        unique=_window_edges_separated(vals, k, offset, tol),
        k=k,
        offset=offset,
    )


def distance_to_sigma(h, k, offset=0):
    """sqrt(k) times the standard deviation of the window eigenvalues; equal
    to the Frobenius distance from the k-fold degeneracy manifold, and to
    ||H_eff|| from any valid decomposition of H."""
    h = np.asarray(h)
    vals = np.linalg.eigvalsh(h)
    win = vals[offset : offset + k]
    return float(np.sqrt(np.sum((win - np.mean(win)) ** 2)))


def project_with_index_set(h, indices, gauge=None):
    """Merge an arbitrary set of k eigenvalues (1-based indices) to their
    mean in the eigenbasis of H.

    The result lies on the k-fold ground-degeneracy manifold only when the
    mean stays strictly below the lowest omitted eigenvalue; otherwise
    NotInSigmaK is raised. If eigenvalues of H inside and outside the index
    set coincide, the outcome depends on the eigenbasis; pass a precomputed
    spectrum as `gauge` to pin it down.
    """
    h = np.asarray(h)
    n = h.shape[0]
    idx = sorted(set(int(i) for i in indices))
    if not idx or idx[0] < 1 or idx[-1] > n:
        raise ValueError(f"indices must be within 1..{n}")
    if len(idx) == n:
        raise ValueError("index set must omit at least one eigenvalue")
    spec = gauge if gauge is not None else eigh(h)
    vals = spec.eigenvalues.copy()
    sel = np.array([i - 1 for i in idx])
    mean = float(np.mean(vals[sel]))
    omitted = np.setdiff1d(np.arange(n), sel)
    lowest_omitted = float(vals[omitted[0]])
    if mean >= lowest_omitted:
        raise NotInSigmaK(
            f"mean {mean:.6g} of the selected eigenvalues is not below the "
            f"lowest omitted eigenvalue {lowest_omitted:.6g}"
        )
    vals[sel] = mean
    u = spec.vectors
    g = (u * vals) @ u.conj().T
    g = (g + g.conj().T) / 2.0
    g.setflags(write=False)
    return g


def orthogonality_check(h, k, offset=0, rel_tol=DEGENERACY_RTOL):
    """Largest normalized overlap of H - H_Sigma with the tangent space of
    the degeneracy manifold at H_Sigma.

    The tangent space at a diagonal point consists of the matrices whose
    window block is scalar; its basis is conjugated into the eigenframe of
    H_Sigma. Returns max |<H - H_Sigma, tangent>| / ||H - H_Sigma||, which is
    zero up to rounding; by convention 0 when H is already on the manifold.
    """
    h = np.asarray(h)
    n = h.shape[0]
    pr = collapse_projection(h, k, offset=offset, rel_tol=rel_tol)
    if not pr.unique:
        raise DegenerateBoundary(
            "window is not strictly separated; tangent space is ambiguous"
        )
    diff = h - pr.h_sigma
    dn = frobenius_norm(diff)
    if dn <= 1e-12 * max(1.0, frobenius_norm(h)):
        return 0.0
    spec = eigh(h)
    u = spec.vectors
    c = u.conj().T @ diff @ u
    win = range(offset, offset + k)
    in_win = np.zeros(n, dtype=bool)
    in_win[list(win)] = True
    worst = 0.0
    for b in range(n):
        for a in range(b):
            if in_win[a] and in_win[b]:
                continue
            worst = max(worst, np.sqrt(2.0) * abs(c[a, b].real))
            worst = max(worst, np.sqrt(2.0) * abs(c[a, b].imag))
    for a in range(n):
        if not in_win[a]:
            worst = max(worst, abs(c[a, a].real))
    scalar_dir = abs(np.sum(c.diagonal()[list(win)]).real) / np.sqrt(k)
    worst = max(worst, scalar_dir)
    return worst / dn


def sample_sigma_k(n, k, rng, gap=1e-3, spread=2.0):
    """Draw a random member of the k-fold ground-degeneracy manifold:
    a Haar-like eigenbasis (QR of a complex Gaussian matrix) applied to a
    spectrum whose lowest k values coincide and sit at least `gap` below the
    rest. Used as a brute-force sampling oracle for the minimization claim."""
    from .hermitian import random_unitary

    deg = float(rng.standard_normal())
    rest = deg + gap + np.sort(rng.uniform(0.0, spread, size=n - k))
    vals = np.concatenate([np.full(k, deg), rest])
    u = random_unitary(n, rng)
    g = (u * vals) @ u.conj().T
    return (g + g.conj().T) / 2.0
