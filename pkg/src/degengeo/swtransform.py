"""Exact block diagonalization of a Hermitian matrix relative to a degenerate
base point, via the direct rotation between eigenspaces.

Given a diagonal base point H0 whose eigenvalue window of size k is exactly
degenerate and strictly separated from the rest, every nearby H factors
uniquely as

    H = e^{iS} (H0 + B + T + H_eff) e^{-iS}

with S off-block (zero inside both diagonal blocks), B supported on the
complementary block, T a scalar shift c on the degenerate block, and H_eff a
traceless matrix on the degenerate block. The exponent satisfies
e^{iS} = sqrt((I - 2P)(I - 2P0)) where P and P0 are the eigenprojectors of H
and H0 for the window: the square root whose eigenvalues are closest to 1.

Uniqueness with ||S||_2 < pi/2 is guaranteed inside the operator-2-norm ball
of radius r0 = half the spectral gap of H0; outside it the decomposition is
still attempted whenever the projectors satisfy ||P - P0||_2 < 1, and the
flags on the result tell the caller which regime they are in.

The default window is the lowest k eigenvalues. An `offset` shifts the window
upward (eigenvalues offset+1 .. offset+k in ascending order), which is how
mid-spectrum degeneracies such as zero modes of bipartite hopping chains are
handled; all block structure then refers to coordinate index sets instead of
contiguous leading blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BasePointNotCanonical, DegenerateBoundary, SubspacesTooFar
from .hermitian import frobenius_norm, operator_2_norm, traceless_coordinates
from .spectra import DEGENERACY_RTOL, Spectrum, eigh

__all__ = [
    "SWDecomposition",
    "ChartCoordinates",
    "projector_lowest_k",
    "direct_rotation",
    "unitary_exp",
    "sw_decompose",
    "sw_decompose_general",
    "chart_coordinates",
]

#: Base points must be diagonal/degenerate to this relative precision.
CANONICAL_RTOL = 1e-12


def unitary_exp(s):
    """e^{iS} for Hermitian S, through the eigendecomposition of S, so the
    result is unitary to machine precision."""
    s = np.asarray(s)
    vals, vecs = np.linalg.eigh(s)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def _window_members(n, k, offset):
    if not (0 <= offset and 1 <= k and offset + k <= n):
        raise ValueError(f"invalid window: n={n}, k={k}, offset={offset}")
    members = np.zeros(n, dtype=bool)
    members[offset : offset + k] = True
    return members


def _check_window_gaps(vals, k, offset, rtol, exc):
    """Require strict separation of the window from its neighbours."""
    tol = rtol * max(1.0, float(np.max(np.abs(vals)))) if len(vals) else 0.0
    lo, hi = offset, offset + k
    if lo > 0 and vals[lo] - vals[lo - 1] <= tol:
        raise exc(
            f"eigenvalues {lo} and {lo + 1} coincide within tolerance {tol:.3e}"
        )
    if hi < len(vals) and vals[hi] - vals[hi - 1] <= tol:
        raise exc(
            f"eigenvalues {hi} and {hi + 1} coincide within tolerance {tol:.3e}"
        )


def _window_projector(spec, k, offset):
    v = spec.vectors[:, offset : offset + k]
    p = v @ v.conj().T
    return (p + p.conj().T) / 2.0


def projector_lowest_k(spec, k, rel_tol=DEGENERACY_RTOL):
    """Rank-k orthogonal projector onto the span of the lowest k eigenvectors.

    Requires lambda_k < lambda_{k+1} strictly (beyond the grouping
    tolerance); on the boundary the projector is not unique and
    DegenerateBoundary is raised.
    """
    if not 1 <= k <= spec.n:
        raise ValueError(f"need 1 <= k <= n, got k={k}")
    if k < spec.n:
        _check_window_gaps(spec.eigenvalues, k, 0, rel_tol, DegenerateBoundary)
    return _window_projector(spec, k, 0)


def _rotation_and_log(p, p0):
    """Direct rotation W between ran(P0) and ran(P) plus its principal
    logarithm S = -i Log W, from one Schur decomposition of the unitary
    (I - 2P)(I - 2P0); eigenphases are halved inside (-pi, pi)."""
    p = np.asarray(p)
    p0 = np.asarray(p0)
    if p.shape != p0.shape:
        raise ValueError(f"dimension mismatch: {p.shape} vs {p0.shape}")
    n = p.shape[0]
    sep = float(np.max(np.abs(np.linalg.eigvalsh(p - p0)))) if n else 0.0
    if sep >= 1.0 - 1e-12:
        raise SubspacesTooFar(
            f"||P - P0||_2 = {sep:.12f} >= 1; no direct rotation exists"
        )
    m = (np.eye(n) - 2.0 * p) @ (np.eye(n) - 2.0 * p0)
    t, z = scipy.linalg.schur(m, output="complex")
    phases = np.angle(np.diag(t))
    if np.any(np.abs(phases) >= np.pi * (1.0 - 1e-9)):
        raise SubspacesTooFar(
            "reflection product has an eigenphase at -pi; the branch of the "
            "square root is undefined there"
        )
    w = (z * np.exp(0.5j * phases)) @ z.conj().T
    s = (z * (0.5 * phases)) @ z.conj().T
    return w, (s + s.conj().T) / 2.0


def direct_rotation(p, p0):
    """Unitary W = sqrt((I - 2P)(I - 2P0)), principal branch, satisfying
    W P0 W^dagger = P. Requires ||P - P0||_2 < 1."""
    w, _ = _rotation_and_log(p, p0)
    return w


@dataclass(frozen=True)
class SWDecomposition:
    """The tuple (S, B, T = c on the window, H_eff) of the exact block
    decomposition, plus validity flags and residuals.

    All matrix parts live in the frame the input was given in. For a
    non-diagonal base point, `gauge` holds the unitary whose columns
    diagonalize the base with ascending eigenvalues, and `h0` is the base
    point with its window collapsed exactly.
    """

    k: int
    offset: int
    h0: np.ndarray
    s: np.ndarray
    b: np.ndarray
    c: float
    h_eff: np.ndarray
    residual: float
    within_r0: bool
    s_norm_ok: bool
    s_projection_residual: float
    gauge: np.ndarray | None = None

    @property
    def n(self):
        return self.h0.shape[0]

    def window_projector(self):
        """Projector P0 onto the base point's degenerate window."""
        members = _window_members(self.n, self.k, self.offset)
        p0 = np.diag(members.astype(complex))
        if self.gauge is not None:
            p0 = self.gauge @ p0 @ self.gauge.conj().T
        return (p0 + p0.conj().T) / 2.0

    def t_matrix(self):
        """The scalar part T = c P0."""
        return self.c * self.window_projector()

    def block_diagonal(self):
        """H0 + B + T + H_eff."""
        return self.h0 + self.b + self.t_matrix() + self.h_eff

    def rotation(self):
        """e^{iS}."""
        return unitary_exp(self.s)

    def reconstruct(self):
        """e^{iS} (H0 + B + T + H_eff) e^{-iS}."""
        e = self.rotation()
        h = e @ self.block_diagonal() @ e.conj().T
        return (h + h.conj().T) / 2.0

    def heff_block(self):
        """The effective Hamiltonian as a dense traceless k x k matrix, in
        the eigenbasis of the base point."""
        h_eff = self.h_eff
        if self.gauge is not None:
            h_eff = self.gauge.conj().T @ h_eff @ self.gauge
            h_eff = (h_eff + h_eff.conj().T) / 2.0
        return h_eff[self.offset : self.offset + self.k,
                     self.offset : self.offset + self.k]

    def s_2norm(self):
        return operator_2_norm(self.s)


def _validate_canonical_base(h0, k, offset, rel_tol):
    h0 = np.asarray(h0)
    n = h0.shape[0]
    _window_members(n, k, offset)
    if k == n:
        raise BasePointNotCanonical("window covers the whole spectrum")
    scale = max(1.0, float(np.max(np.abs(h0))))
    diag = np.diag(h0).real.copy()
    if np.max(np.abs(h0 - np.diag(diag))) > CANONICAL_RTOL * scale:
        raise BasePointNotCanonical("base point must be diagonal")
    if np.any(np.diff(diag) < -CANONICAL_RTOL * scale):
        raise BasePointNotCanonical("base diagonal must be ascending")
    win = diag[offset : offset + k]
    if np.max(win) - np.min(win) > CANONICAL_RTOL * scale:
        raise BasePointNotCanonical(
            "base window eigenvalues must be exactly degenerate"
        )
    _check_window_gaps(diag, k, offset, rel_tol, BasePointNotCanonical)
    return diag


def _window_half_gap(diag, k, offset):
    gaps = []
    if offset > 0:
        gaps.append(diag[offset] - diag[offset - 1])
    if offset + k < len(diag):
        gaps.append(diag[offset + k] - diag[offset + k - 1])
    return min(gaps) / 2.0 if gaps else np.inf


def sw_decompose(h, h0, k, *, offset=0, rel_tol=DEGENERACY_RTOL):
    """Decompose H relative to a diagonal degenerate base point H0.

    The window is the k eigenvalues starting after `offset` in ascending
    order (offset 0: ground-state window). H must have that window strictly
    separated; H0 must be diagonal, ascending, exactly degenerate on the
    window. Raises DegenerateBoundary, SubspacesTooFar, or
    BasePointNotCanonical accordingly.

    The result's flags report the theory's regimes: `within_r0` marks
    ||H - H0||_2 < r0 where the decomposition with ||S||_2 < pi/2 is provably
    unique, `s_norm_ok` marks ||S||_2 < pi/2 itself. Outside the ball the
    decomposition is still returned whenever the direct rotation exists.
    """
    h = np.asarray(h)
    h0 = np.asarray(h0)
    if h.shape != h0.shape:
        raise ValueError(f"dimension mismatch: {h.shape} vs {h0.shape}")
    n = h.shape[0]
    diag0 = _validate_canonical_base(h0, k, offset, rel_tol)
    members = _window_members(n, k, offset)

    spec = eigh(h)
    _check_window_gaps(spec.eigenvalues, k, offset, rel_tol, DegenerateBoundary)
    p = _window_projector(spec, k, offset)
    p0 = np.diag(members.astype(complex))

    _, s_raw = _rotation_and_log(p, p0)
    s = s_raw.copy()
    s[np.ix_(members, members)] = 0.0
    s[np.ix_(~members, ~members)] = 0.0
    s = (s + s.conj().T) / 2.0
    s_proj_residual = frobenius_norm(s_raw - s)

    e = unitary_exp(s)
    bd = e.conj().T @ h @ e
    bd = (bd + bd.conj().T) / 2.0

    win_block = bd[np.ix_(members, members)]
    mean = float(np.trace(win_block).real) / k
    c = mean - float(diag0[offset])
    h_eff = np.zeros((n, n), dtype=complex)
    h_eff[np.ix_(members, members)] = win_block - mean * np.eye(k)
    b = np.zeros((n, n), dtype=complex)
    b[np.ix_(~members, ~members)] = (
        bd[np.ix_(~members, ~members)] - np.diag(diag0[~members])
    )

    t = c * np.diag(members.astype(complex))
    recon = e @ (h0 + b + t + h_eff) @ e.conj().T
    residual = frobenius_norm((recon + recon.conj().T) / 2.0 - h)

    return SWDecomposition(
        k=k,
        offset=offset,
        h0=h0,
        s=s,
        b=b,
        c=c,
        h_eff=h_eff,
        residual=residual,
        within_r0=bool(
            operator_2_norm(h - h0) < _window_half_gap(diag0, k, offset)
        ),
        s_norm_ok=bool(operator_2_norm(s) < np.pi / 2.0),
        s_projection_residual=s_proj_residual,
    )


def sw_decompose_general(h, g0, k, *, offset=0, rel_tol=DEGENERACY_RTOL):
    """Decompose H relative to an arbitrary (non-diagonal) degenerate base.

    The base is diagonalized with ascending eigenvalues, the window is
    collapsed exactly, the diagonal-frame decomposition is computed, and all
    parts are conjugated back. The returned parts satisfy the projector-form
    block conditions with respect to the base's window eigenprojector; the
    diagonalizing gauge is recorded on the result (the base's degenerate
    block leaves a unitary freedom in it, under which the spectrum and norm
    of H_eff are invariant).
    """
    h = np.asarray(h)
    g0 = np.asarray(g0)
    if h.shape != g0.shape:
        raise ValueError(f"dimension mismatch: {h.shape} vs {g0.shape}")
    spec0 = eigh(g0)
    vals0 = spec0.eigenvalues.copy()
    win = vals0[offset : offset + k]
    tol = rel_tol * max(1.0, spec0.operator_2_norm())
    if np.max(win) - np.min(win) > tol:
        raise BasePointNotCanonical(
            "base point's window is not degenerate within tolerance"
        )
    _check_window_gaps(vals0, k, offset, rel_tol, BasePointNotCanonical)
    vals0[offset : offset + k] = np.mean(win)

    u0 = spec0.vectors
    h_prime = u0.conj().T @ h @ u0
    h_prime = (h_prime + h_prime.conj().T) / 2.0
    dec = sw_decompose(
        h_prime, np.diag(vals0).astype(complex), k, offset=offset,
        rel_tol=rel_tol,
    )

    def back(m):
        g = u0 @ m @ u0.conj().T
        return (g + g.conj().T) / 2.0

    return SWDecomposition(
        k=k,
        offset=offset,
        h0=back(np.diag(vals0).astype(complex)),
        s=back(dec.s),
        b=back(dec.b),
        c=dec.c,
        h_eff=back(dec.h_eff),
        residual=dec.residual,
        within_r0=dec.within_r0,
        s_norm_ok=dec.s_norm_ok,
        s_projection_residual=dec.s_projection_residual,
        gauge=u0,
    )


@dataclass(frozen=True)
class ChartCoordinates:
    """Local coordinates induced by the decomposition around the base point.

    x collects the in-manifold coordinates of (S, B, T): 2k(n-k) canonical
    coordinates of S over the off-block index pairs, then (n-k)^2 canonical
    coordinates of B over the complementary block, then the single scalar
    coordinate c*sqrt(k) of T along the normalized window identity. y holds
    the k^2 - 1 coordinates of H_eff in the traceless window basis: the
    degeneracy manifold is exactly the zero locus of y.
    """

    x: np.ndarray
    y: np.ndarray


def chart_coordinates(dec):
    """Chart coordinates (x, y) of a decomposition, in the documented order."""
    n, k = dec.n, dec.k
    members = _window_members(n, k, dec.offset)
    s = dec.s
    b = dec.b
    if dec.gauge is not None:
        u0 = dec.gauge
        s = u0.conj().T @ s @ u0
        b = u0.conj().T @ b @ u0
    x = []
    # Canonical enumeration order, restricted to the off-block pairs.
    for m in range(n):
        for a in range(m):
            if members[a] != members[m]:
                x.append(np.sqrt(2.0) * s[a, m].real)
                x.append(-np.sqrt(2.0) * s[a, m].imag)
    # Complementary block of B, same enumeration, diagonals included.
    for m in range(n):
        if members[m]:
            continue
        for a in range(m):
            if not members[a]:
                x.append(np.sqrt(2.0) * b[a, m].real)
                x.append(-np.sqrt(2.0) * b[a, m].imag)
        x.append(b[m, m].real)
    x.append(dec.c * np.sqrt(k))
    y = traceless_coordinates(dec.heff_block())
    x = np.asarray(x)
    assert len(x) + len(y) == n * n
    return ChartCoordinates(x=x, y=y)
