"""One-parameter family analysis: energy-splitting functions, order-of-
vanishing estimation on geometric ladders, and the cascade that resolves
degenerate eigenvalue branches level by level.

A family is a map t -> H(t) with H(0) exactly degenerate on a k-fold window.
Five splitting measures (standard deviation of the window eigenvalues, all
pairwise differences, neighbouring differences, the extreme difference, and
deviations from the mean) vanish at t = 0 with one common integer order,
which also equals the order of the distance from the degeneracy manifold and
of the effective-Hamiltonian norm. The estimators here recover that integer
from log-log slopes; the cascade recovers it per eigenvalue pair together
with the index permutation that makes the eigenvalue branches analytic
through t = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.optimize

from .errors import InconclusiveFit
from .hermitian import frobenius_norm
from .spectra import DEGENERACY_RTOL, eigh
from .swtransform import sw_decompose

__all__ = [
    "FamilyHandle",
    "family",
    "linear_family",
    "SplittingSample",
    "splitting_samples",
    "OrderEstimate",
    "estimate_order",
    "estimate_all_orders",
    "FIVE_METHODS",
    "signed_stddev",
    "signed_stddev_fit_residual",
    "CascadeResult",
    "cascade",
    "default_ladder",
]

#: The five equivalent splitting measures whose orders provably agree.
FIVE_METHODS = ("stddev", "pairwise", "neighbor", "extreme", "mean")

#: Relative floor below which sampled values count as identically zero.
ZERO_FLOOR_RTOL = 1e-12

#: Accepted deviation of a fitted log-log slope from the nearest integer.
SLOPE_TOL = 0.2


def default_ladder(start=3, stop=16):
    """Geometric ladder t = 2^-start .. 2^-stop."""
    return np.array([2.0 ** -e for e in range(start, stop + 1)])


@dataclass(frozen=True)
class FamilyHandle:
    """One-parameter family of Hermitian matrices, degenerate at t = 0 on
    the window of k eigenvalues starting after `offset` (ascending order)."""

    evaluator: Callable[[float], np.ndarray]
    n: int
    k: int
    offset: int = 0

    def __call__(self, t):
        return np.asarray(self.evaluator(float(t)))


def family(evaluator, k, offset=0, rel_tol=DEGENERACY_RTOL):
    """Wrap an evaluator after checking that H(0) is degenerate on the window.

    The window eigenvalues of H(0) must coincide within the grouping
    tolerance and be strictly separated from their neighbours.
    """
    h0 = np.asarray(evaluator(0.0))
    n = h0.shape[0]
    spec = eigh(h0)
    vals = spec.eigenvalues
    tol = rel_tol * max(1.0, spec.operator_2_norm())
    win = vals[offset : offset + k]
    if np.max(win) - np.min(win) > tol:
        raise ValueError(
            f"H(0) window eigenvalues spread {np.max(win) - np.min(win):.3e} "
            f"exceeds tolerance {tol:.3e}; the family must start degenerate"
        )
    lo, hi = offset, offset + k
    if (lo > 0 and vals[lo] - vals[lo - 1] <= tol) or (
        hi < n and vals[hi] - vals[hi - 1] <= tol
    ):
        raise ValueError("H(0) window is not strictly separated")
    return FamilyHandle(evaluator=evaluator, n=n, k=k, offset=offset)


def linear_family(h0, h1, k, offset=0):
    """The straight line t -> H0 + t H1."""
    h0 = np.asarray(h0)
    h1 = np.asarray(h1)
    return family(lambda t: h0 + t * h1, k, offset=offset)


@dataclass(frozen=True)
class SplittingSample:
    """Window splitting measures of one family sample H(t).

    pairwise maps 1-based window index pairs (i, j), i < j, to
    lambda_i - lambda_j; mean_dev holds lambda_i minus the window mean;
    heff_norm is ||H_eff(t)|| from the decomposition against the collapsed
    start point (None with a note when the decomposition fails there)."""

    t: float
    std_dev: float
    pairwise: dict
    mean_dev: np.ndarray
    heff_norm: float | None
    note: str | None = None


def _collapsed_start(fam):
    """Diagonal base point from H(0): its spectrum with the window collapsed
    exactly, plus the diagonalizing gauge."""
    spec = eigh(fam(0.0))
    vals = spec.eigenvalues.copy()
    a, k = fam.offset, fam.k
    vals[a : a + k] = np.mean(vals[a : a + k])
    return np.diag(vals).astype(complex), spec.vectors


def splitting_samples(fam, ts, with_heff=True):
    """Evaluate all splitting measures of the family on the given nonzero,
    sorted parameter values."""
    ts = np.asarray(ts, dtype=float)
    if np.any(ts == 0.0):
        raise ValueError("sample points must be nonzero")
    if np.any(np.diff(ts) <= 0.0):
        raise ValueError("sample points must be strictly increasing")
    base, u0 = _collapsed_start(fam) if with_heff else (None, None)
    a, k = fam.offset, fam.k
    out = []
    for t in ts:
        h = fam(t)
        vals = np.linalg.eigvalsh(h)
        win = vals[a : a + k]
        mean = float(np.mean(win))
        std = float(np.sqrt(np.mean((win - mean) ** 2)))
        pairwise = {
            (i + 1, j + 1): float(win[i] - win[j])
            for i in range(k)
            for j in range(i + 1, k)
        }
        heff_norm = None
        note = None
        if with_heff:
            try:
                hp = u0.conj().T @ h @ u0
                dec = sw_decompose(
                    (hp + hp.conj().T) / 2.0, base, k, offset=a
                )
                heff_norm = frobenius_norm(dec.h_eff)
                if not dec.within_r0:
                    note = "outside the uniqueness ball of the start point"
            except Exception as exc:  # noqa: BLE001 - reported per sample
                note = f"decomposition failed: {exc}"
        out.append(
            SplittingSample(
                t=float(t),
                std_dev=std,
                pairwise=pairwise,
                mean_dev=win - mean,
                heff_norm=heff_norm,
                note=note,
            )
        )
    return out


@dataclass(frozen=True)
class OrderEstimate:
    """Order of vanishing at t = 0: integer r (or math.inf when the sampled
    values sit at the zero floor), the fitted log-log slope, its deviation
    from r, and the (t, value) pairs used."""

    r: float
    slope: float
    slope_dev: float
    samples: tuple
    method: str


def _family_scale(fam, t1):
    """max(1, ||H(0)||, ||H'(0)||), the reference scale for the zero floor.
    Falls back to a one-sided difference for evaluators defined only on the
    sampled side (tabulated families)."""
    h0 = fam(0.0)
    try:
        d = (fam(t1) - fam(-t1)) / (2.0 * t1)
    except Exception:  # noqa: BLE001
        d = (fam(t1) - h0) / t1
    return max(1.0, frobenius_norm(h0), frobenius_norm(d))


def _fit_order(ts, vals, floor, method):
    pts = [(t, v) for t, v in zip(ts, vals) if v is not None]
    if not pts:
        raise InconclusiveFit(f"{method}: no usable samples")
    above = [(t, v) for t, v in pts if abs(v) > floor]
    if not above:
        return OrderEstimate(
            r=math.inf, slope=math.nan, slope_dev=0.0,
            samples=tuple(pts), method=method,
        )
    if len(above) < 4:
        raise InconclusiveFit(
            f"{method}: only {len(above)} samples above the zero floor"
        )
    log_t = np.log(np.abs([t for t, _ in above]))
    log_v = np.log(np.abs([v for _, v in above]))
    slope, _ = np.polyfit(log_t, log_v, 1)
    r = int(round(slope))
    dev = abs(slope - r)
    est = OrderEstimate(
        r=r, slope=float(slope), slope_dev=float(dev),
        samples=tuple(above), method=method,
    )
    if dev > SLOPE_TOL or r < 1:
        raise InconclusiveFit(
            f"{method}: slope {slope:.3f} is not near a positive integer",
            estimate=est,
        )
    return est


def estimate_order(fam, method="stddev", ladder=None, samples=None,
                   pair=None, index=None):
    """Least-squares log-log slope of one splitting measure on a geometric
    ladder, rounded to the nearest integer.

    method is one of "stddev", "pairwise", "neighbor", "extreme", "mean",
    "heff", "distance". The aggregate methods ("pairwise", "neighbor",
    "mean") fit each component function and return the smallest finite
    order, which is the measure's order of vanishing; pass `pair=(i, j)` or
    `index=i` to fit a single component instead. Samples whose value sits at
    the zero floor are censored from the fit; if everything is censored the
    order is infinite. Raises InconclusiveFit when the slope is not within
    0.2 of a positive integer.

    Precomputed `samples` (from `splitting_samples`) are reused when given.
    """
    if ladder is None:
        ladder = default_ladder()
    if samples is None:
        samples = splitting_samples(fam, np.sort(ladder),
                                    with_heff=(method == "heff"))
    ts = [s.t for s in samples]
    floor = ZERO_FLOOR_RTOL * _family_scale(fam, min(abs(t) for t in ts))
    k = fam.k

    def single(vals, label):
        return _fit_order(ts, vals, floor, label)

    if method == "stddev":
        return single([s.std_dev for s in samples], "stddev")
    if method == "distance":
        return single([np.sqrt(k) * s.std_dev for s in samples], "distance")
    if method == "extreme":
        return single([s.pairwise[(1, k)] for s in samples], "extreme")
    if method == "heff":
        return single([s.heff_norm for s in samples], "heff")
    if method == "pairwise" and pair is not None:
        return single([s.pairwise[tuple(pair)] for s in samples],
                      f"pairwise{tuple(pair)}")
    if method == "mean" and index is not None:
        return single([s.mean_dev[index - 1] for s in samples],
                      f"mean({index})")
    if method == "pairwise":
        series = {
            f"pairwise{key}": [s.pairwise[key] for s in samples]
            for key in (
                (i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)
            )
        }
    elif method == "neighbor":
        series = {
            f"pairwise({i}, {i + 1})": [s.pairwise[(i, i + 1)]
                                        for s in samples]
            for i in range(1, k)
        }
    elif method == "mean":
        series = {
            f"mean({i + 1})": [s.mean_dev[i] for s in samples]
            for i in range(k)
        }
    else:
        raise ValueError(f"unknown method {method!r}")
    comps = []
    failures = []
    for label, vals in series.items():
        # A component that cannot be fitted (censored by the zero floor)
        # cannot be the minimum-order one; skip it unless nothing fits.
        try:
            comps.append(single(vals, label))
        except InconclusiveFit as exc:
            failures.append(exc)
    if not comps:
        raise InconclusiveFit(
            f"{method}: no component produced a usable fit "
            f"({'; '.join(str(f) for f in failures)})"
        )
    best = min(comps, key=lambda e: e.r)
    return OrderEstimate(
        r=best.r, slope=best.slope, slope_dev=best.slope_dev,
        samples=best.samples, method=f"{method}:min via {best.method}",
    )


def estimate_all_orders(fam, ladder=None):
    """All five splitting-measure orders, as a dict, plus their agreement."""
    if ladder is None:
        ladder = default_ladder()
    samples = splitting_samples(fam, np.sort(ladder), with_heff=False)
    estimates = {
        m: estimate_order(fam, method=m, samples=samples)
        for m in FIVE_METHODS
    }
    orders = {e.r for e in estimates.values()}
    return estimates, len(orders) == 1


def signed_stddev(fam, r, ts):
    """sgn(t)^r times the standard deviation of the window eigenvalues: the
    analytic extension of the splitting function through t = 0."""
    a, k = fam.offset, fam.k
    out = []
    for t in np.asarray(ts, dtype=float):
        vals = np.linalg.eigvalsh(fam(t))
        win = vals[a : a + k]
        std = float(np.sqrt(np.mean((win - np.mean(win)) ** 2)))
        out.append(float(np.sign(t)) ** r * std)
    return np.array(out)


def signed_stddev_fit_residual(fam, r, ts, degree=None):
    """Numerical analyticity check: residual of a polynomial fit (default
    degree r + 3) through signed standard-deviation samples straddling 0.
    Small residual relative to the sample scale indicates a smooth function."""
    ts = np.asarray(ts, dtype=float)
    vals = signed_stddev(fam, r, ts)
    if degree is None:
        degree = r + 3
    coeffs = np.polynomial.polynomial.polyfit(ts, vals, degree)
    fit = np.polynomial.polynomial.polyval(ts, coeffs)
    return float(np.max(np.abs(fit - vals)))


# ---------------------------------------------------------------------------
# Cascade
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CascadeResult:
    """Per-pair separation levels and the negative-side index permutation.

    pair_levels maps 1-based window index pairs (i, j), i < j, to the level
    at which the pair's eigenvalue branches separate; that level equals the
    order of vanishing of their difference. negative_permutation maps the
    branch through the i-th ascending window eigenvalue at t > 0 to the
    position it occupies for t < 0. Pairs still unresolved at the depth cap
    are listed in `capped` (their order exceeds the cap)."""

    pair_levels: dict
    negative_permutation: tuple
    capped: tuple = ()
    depth_cap: int = 0
    notes: tuple = field(default_factory=tuple)


def _extrapolate_zero(f, t):
    """Even-part Richardson extrapolation of f to 0, O(t^4) accurate."""
    a1 = (f(t) + f(-t)) / 2.0
    a2 = (f(t / 2.0) + f(-t / 2.0)) / 2.0
    return (4.0 * a2 - a1) / 3.0


def _cluster(vals, rtol):
    """Chained grouping of ascending values; returns [(start, stop), ...)."""
    tol = rtol * max(1.0, float(np.max(np.abs(vals))) if len(vals) else 0.0)
    bounds = []
    start = 0
    for i in range(1, len(vals)):
        if vals[i] - vals[i - 1] > tol:
            bounds.append((start, i))
            start = i
    bounds.append((start, len(vals)))
    return bounds


def _window_heff_block(h, base_diag, k, offset):
    """Dense k x k effective block of h against a diagonal base; when the
    window covers the whole space this is just the traceless part."""
    n = h.shape[0]
    if k == n:
        return h - (np.trace(h).real / n) * np.eye(n)
    dec = sw_decompose(h, base_diag, k, offset=offset)
    return dec.h_eff[offset : offset + k, offset : offset + k]


def _next_level_family(g, g0, lo, hi):
    """From a family g with extrapolated start g0 whose ascending eigenvalues
    cluster on [lo, hi), build the deeper family: the effective block of g
    against the collapsed start, divided by t."""
    vals0, v0 = np.linalg.eigh(g0)
    size = hi - lo
    base = vals0.copy()
    base[lo:hi] = np.mean(base[lo:hi])
    base_diag = np.diag(base).astype(complex)

    def deeper(t):
        gp = v0.conj().T @ g(t) @ v0
        gp = (gp + gp.conj().T) / 2.0
        return _window_heff_block(gp, base_diag, size, lo) / t

    return deeper


def _negative_permutation(fam, t_probe, notes):
    """Match ascending window eigenvalue branches across t = 0 by polynomial
    extrapolation from the positive side and optimal assignment on the
    negative side."""
    a, k = fam.offset, fam.k
    ts_pos = t_probe * 0.5 ** np.arange(7)

    def window_vals(t):
        return np.linalg.eigvalsh(fam(t))[a : a + k]

    pos = np.array([window_vals(t) for t in ts_pos])
    neg = np.array([window_vals(-t) for t in ts_pos])
    degree = min(4, len(ts_pos) - 1)
    cost = np.zeros((k, k))
    for i in range(k):
        coeffs = np.polynomial.polynomial.polyfit(ts_pos, pos[:, i], degree)
        pred = np.polynomial.polynomial.polyval(-ts_pos, coeffs)
        for j in range(k):
            cost[i, j] = np.sum(np.abs(pred - neg[:, j]))
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    scale = max(1.0, float(np.max(np.abs(pos))))
    worst = float(np.max(cost[rows, cols]))
    if worst > 1e-3 * scale * len(ts_pos):
        notes.append(
            f"branch matching residual {worst:.2e} is large; the "
            "permutation may be ambiguous"
        )
    perm = [0] * k
    for i, j in zip(rows, cols):
        perm[int(i)] = int(j) + 1
    return tuple(perm)


def cascade(fam, t_probe=2.0 ** -6, depth_cap=8, cluster_rtol=1e-4):
    """Resolve the window's eigenvalue branches level by level.

    The first-level family is the effective block of H(t) against the
    collapsed start point, divided by t; each level's start value is
    extrapolated to t = 0, its eigenvalues are clustered, pairs falling in
    distinct clusters separate at the current level, and every surviving
    cluster spawns a deeper family the same way. Eigenvalue branches get
    strictly less degenerate at each level, so the recursion terminates
    unless branches coincide beyond the depth cap.

    t_probe must be small enough that the decompositions along the cascade
    stay valid; errors from invalid probes propagate.
    """
    a, k = fam.offset, fam.k
    notes = []
    base, u0 = _collapsed_start(fam)

    def level_one(t):
        hp = u0.conj().T @ fam(t) @ u0
        hp = (hp + hp.conj().T) / 2.0
        return _window_heff_block(hp, base, k, a) / t

    pair_levels = {}
    capped = []
    queue = [(tuple(range(1, k + 1)), level_one, 1)]
    deepest = 0
    while queue:
        idx, g, level = queue.pop()
        deepest = max(deepest, level)
        g0 = _extrapolate_zero(g, t_probe)
        g0 = (g0 + g0.conj().T) / 2.0
        vals0 = np.linalg.eigvalsh(g0)
        clusters = _cluster(vals0, cluster_rtol)
        for ci, (lo, hi) in enumerate(clusters):
            for lo2, hi2 in clusters[ci + 1 :]:
                for p in range(lo, hi):
                    for q in range(lo2, hi2):
                        i, j = sorted((idx[p], idx[q]))
                        pair_levels[(i, j)] = level
        for lo, hi in clusters:
            if hi - lo < 2:
                continue
            sub_idx = idx[lo:hi]
            if level >= depth_cap:
                capped.extend(
                    (sub_idx[p], sub_idx[q])
                    for p in range(hi - lo)
                    for q in range(p + 1, hi - lo)
                )
                continue
            queue.append((sub_idx, _next_level_family(g, g0, lo, hi),
                          level + 1))
    if capped:
        notes.append(
            f"{len(capped)} pair(s) still degenerate at depth {depth_cap}"
        )
    perm = _negative_permutation(fam, t_probe, notes)
    return CascadeResult(
        pair_levels=pair_levels,
        negative_permutation=perm,
        capped=tuple(sorted(capped)),
        depth_cap=depth_cap,
        notes=tuple(notes),
    )
