"""Degeneracy analysis of parameter-dependent Hamiltonians: the effective
map into the transverse coordinates of the degeneracy manifold, its Jacobian
rank, Weyl-point classification with topological charge, and grid scanning
with Newton refinement.

A smooth map p -> H(p) meeting the twofold-degeneracy manifold at an
isolated point is a Weyl point exactly when the induced map h (the
effective-Hamiltonian coordinates relative to a fixed gauge) has full-rank
Jacobian there; its topological charge is the sign of the determinant. The
first-order effective map (traceless window block, no rotation) has the same
Jacobian rank at the degeneracy, so either map decides the classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NewtonDiverged, StepTooSmall
from .hermitian import traceless_coordinates
from .projection import collapse_projection
from .spectra import eigh
from .swtransform import sw_decompose

__all__ = [
    "ParamFamily",
    "param_family",
    "WeylReport",
    "effective_map",
    "first_order_effective_map",
    "jacobian",
    "jacobian_with_check",
    "classify_point",
    "scan_grid",
]

#: Newton declares a root of the effective map at this norm.
ROOT_TOL = 1e-10

#: Relative tolerance of the SVD rank decision.
RANK_RTOL = 1e-7

#: Converged roots closer than this are considered the same point.
DEDUP_TOL = 1e-6


@dataclass(frozen=True)
class ParamFamily:
    """Pure map from an m-dimensional parameter space to Hermitian matrices,
    analyzed around windows of k eigenvalues (ground window by default)."""

    evaluator: Callable[[np.ndarray], np.ndarray]
    m: int
    n: int
    k: int = 2
    offset: int = 0

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        if p.shape != (self.m,):
            raise ValueError(f"expected a parameter point of shape ({self.m},)")
        return np.asarray(self.evaluator(p))


def param_family(evaluator, m, k=2, offset=0):
    """Wrap an evaluator, inferring the matrix dimension at the origin."""
    h = np.asarray(evaluator(np.zeros(m)))
    return ParamFamily(evaluator=evaluator, m=m, n=h.shape[0], k=k,
                       offset=offset)


def _anchor(fam, p0):
    """Gauge and base point at an anchor: the eigenbasis of H(p0) and its
    spectrum with the window collapsed exactly."""
    spec = eigh(fam(p0))
    vals = spec.eigenvalues.copy()
    a, k = fam.offset, fam.k
    vals[a : a + k] = np.mean(vals[a : a + k])
    return spec.vectors, np.diag(vals).astype(complex)


def effective_map(fam, p0):
    """The exact effective map h at the anchor p0: coordinates of the
    decomposition's effective Hamiltonian of H(p) in the traceless window
    basis, with the gauge fixed once from the eigenbasis of H(p0).

    h(p0) = 0 exactly when H(p0) is on the degeneracy manifold. Evaluations
    too far from the anchor propagate the decomposition's validity errors.
    """
    p0 = np.asarray(p0, dtype=float)
    u0, base = _anchor(fam, p0)
    a, k = fam.offset, fam.k

    def h(p):
        hp = u0.conj().T @ fam(p) @ u0
        hp = (hp + hp.conj().T) / 2.0
        dec = sw_decompose(hp, base, k, offset=a)
        return traceless_coordinates(dec.h_eff[a : a + k, a : a + k])

    return h


def first_order_effective_map(fam, p0):
    """The first-order effective map: coordinates of the traceless window
    block of H(p) in the anchor gauge, with no rotation applied. Its
    Jacobian rank at a degeneracy point equals that of the exact map, so it
    suffices for Weyl classification."""
    p0 = np.asarray(p0, dtype=float)
    u0, _ = _anchor(fam, p0)
    a, k = fam.offset, fam.k

    def h1(p):
        hp = u0.conj().T @ fam(p) @ u0
        block = hp[a : a + k, a : a + k]
        block = (block + block.conj().T) / 2.0
        block = block - (np.trace(block).real / k) * np.eye(k)
        return traceless_coordinates(block)

    return h1


def _central_difference(h, p, step):
    p = np.asarray(p, dtype=float)
    cols = []
    for i in range(len(p)):
        e = np.zeros_like(p)
        e[i] = step
        cols.append((h(p + e) - h(p - e)) / (2.0 * step))
    return np.column_stack(cols)


def default_step(p):
    return 1e-5 * max(1.0, float(np.max(np.abs(p))))


def jacobian(h, p, step=None):
    """Central-difference Jacobian of a vector map at p."""
    p = np.asarray(p, dtype=float)
    if step is None:
        step = default_step(p)
    if step <= 0.0:
        raise StepTooSmall(f"step must be positive, got {step}")
    return _central_difference(h, p, step)


def jacobian_with_check(h, p, step=None):
    """Jacobian plus a step-halving (Richardson) noise estimate: the largest
    relative entry change when the step is halved. Values above 1e-5 flag a
    noisy derivative."""
    p = np.asarray(p, dtype=float)
    if step is None:
        step = default_step(p)
    j1 = jacobian(h, p, step)
    j2 = jacobian(h, p, step / 2.0)
    scale = max(float(np.max(np.abs(j1))), 1e-300)
    return j2, float(np.max(np.abs(j2 - j1))) / scale


def _rank(jac, rtol=RANK_RTOL):
    sv = np.linalg.svd(jac, compute_uv=False)
    if len(sv) == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


@dataclass(frozen=True)
class WeylReport:
    """Classification of one parameter point: the distance of H(p) from the
    degeneracy manifold, the effective map's Jacobian with its SVD rank, the
    topological charge (determinant sign for a full-rank square Jacobian,
    else 0), and the verdict."""

    p: np.ndarray
    distance: float
    jacobian: np.ndarray
    rank: int
    charge: int
    classification: str
    diagnostics: dict = field(default_factory=dict)


def classify_point(fam, p0, point_tol=None, step=None, use_first_order=False):
    """Classify a parameter point as `weyl`, `non-generic-degeneracy`, or
    `no-degeneracy`.

    A point is degenerate when the distance of H(p0) from the manifold is at
    most point_tol (default 1e-8 times ||H(p0)||_2). A degenerate point is a
    Weyl point when the parameter space is 3-dimensional, the window is
    twofold, and the effective map's Jacobian has rank 3; the charge is then
    the sign of its determinant. For other (m, k) the rank is reported and
    the degenerate verdict stays `non-generic-degeneracy` (no Weyl
    semantics). `use_first_order` classifies through the first-order map."""
    p0 = np.asarray(p0, dtype=float)
    h_of_p = fam(p0)
    pr = collapse_projection(h_of_p, fam.k, offset=fam.offset)
    if point_tol is None:
        vals = np.linalg.eigvalsh(h_of_p)
        point_tol = 1e-8 * float(np.max(np.abs(vals))) if len(vals) else 0.0
    maker = first_order_effective_map if use_first_order else effective_map
    h = maker(fam, p0)
    jac, noise = jacobian_with_check(h, p0, step)
    rank = _rank(jac)
    diagnostics = {"jacobian_noise": noise, "h_norm": float(
        np.linalg.norm(h(p0)))}
    if pr.distance > point_tol:
        verdict, charge = "no-degeneracy", 0
    elif fam.m == 3 and fam.k == 2 and rank == 3:
        verdict = "weyl"
        charge = int(np.sign(np.linalg.det(jac)))
    else:
        verdict, charge = "non-generic-degeneracy", 0
    return WeylReport(
        p=p0,
        distance=pr.distance,
        jacobian=jac,
        rank=rank,
        charge=charge,
        classification=verdict,
        diagnostics=diagnostics,
    )


def _newton_refine(fam, seed, max_iter=60):
    """Damped Newton iteration on the effective map, re-anchoring the gauge
    at the current iterate each step (the map is only defined near its
    anchor). Returns the root and the number of re-anchorings."""
    p = np.asarray(seed, dtype=float)
    anchors = 0
    for _ in range(max_iter):
        h = effective_map(fam, p)
        anchors += 1
        val = h(p)
        norm = float(np.linalg.norm(val))
        if norm <= ROOT_TOL:
            return p, anchors
        jac = jacobian(h, p)
        try:
            full_step = np.linalg.lstsq(jac, -val, rcond=None)[0]
        except np.linalg.LinAlgError as exc:
            raise NewtonDiverged(f"Jacobian solve failed at {p}") from exc
        alpha = 1.0
        while alpha >= 1.0 / 64.0:
            candidate = p + alpha * full_step
            try:
                new_norm = float(np.linalg.norm(h(candidate)))
            except Exception:
                new_norm = np.inf
            if new_norm < norm:
                p = candidate
                break
            alpha /= 2.0
        else:
            raise NewtonDiverged(
                f"no descent step found at {p} (|h| = {norm:.3e})"
            )
    raise NewtonDiverged(f"no convergence after {max_iter} iterations")


def _grid_axes(box, resolution):
    return [np.linspace(lo, hi, resolution) for lo, hi in box]


def _local_minima(values):
    """Indices of 2m-neighbourhood local minima of a gridded scalar field."""
    shape = values.shape
    minima = []
    for idx in np.ndindex(shape):
        v = values[idx]
        best = True
        for axis in range(len(shape)):
            for delta in (-1, 1):
                nb = list(idx)
                nb[axis] += delta
                if 0 <= nb[axis] < shape[axis] and values[tuple(nb)] < v:
                    best = False
                    break
            if not best:
                break
        if best:
            minima.append(idx)
    return minima


def scan_grid(fam, box, resolution, refine=True, seed_threshold=None,
              point_tol=None):
    """Locate and classify degeneracy points of a 3-parameter family.

    The distance of H(p) from the twofold-degeneracy manifold is evaluated
    on a box grid; local minima (below `seed_threshold`, when given) seed a
    damped Newton refinement of the effective map's zero. Converged roots
    inside the box are deduplicated and classified; diverged seeds are
    skipped and reported. Reports come back sorted lexicographically by
    position.
    """
    if fam.m != 3:
        raise ValueError("grid scanning expects a 3-parameter family")
    box = [(float(lo), float(hi)) for lo, hi in box]
    if resolution < 2:
        raise ValueError("resolution must be at least 2 per axis")
    axes = _grid_axes(box, resolution)
    dist = np.empty((resolution,) * 3)
    for i, x in enumerate(axes[0]):
        for j, y in enumerate(axes[1]):
            for l, z in enumerate(axes[2]):
                pr = collapse_projection(
                    fam(np.array([x, y, z])), fam.k, offset=fam.offset
                )
                dist[i, j, l] = pr.distance

    seeds = []
    for idx in _local_minima(dist):
        if seed_threshold is not None and dist[idx] > seed_threshold:
            continue
        seeds.append(np.array([axes[a][idx[a]] for a in range(3)]))

    roots = []
    skipped = []
    margin = 1e-9 + DEDUP_TOL
    for seed in seeds:
        if not refine:
            roots.append((seed, 0))
            continue
        try:
            root, anchors = _newton_refine(fam, seed)
        except NewtonDiverged as exc:
            skipped.append((seed, str(exc)))
            continue
        inside = all(
            lo - margin <= root[a] <= hi + margin
            for a, (lo, hi) in enumerate(box)
        )
        if not inside:
            continue
        if any(np.linalg.norm(root - r) <= DEDUP_TOL for r, _ in roots):
            continue
        roots.append((root, anchors))

    reports = []
    for root, anchors in sorted(roots, key=lambda ra: tuple(ra[0])):
        report = classify_point(fam, root, point_tol=point_tol)
        report.diagnostics["newton_anchors"] = anchors
        if skipped:
            report.diagnostics["skipped_seeds"] = len(skipped)
        reports.append(report)
    return reports
