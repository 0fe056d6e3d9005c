"""Eigensolvers, interval-union targets, spectral sweeps, the infinite
dihedral reduction, Kesten bounds, and spectral-measure moments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .actions import generator_action
from .config import DEFAULT_CONFIG, ResourceLimitError, RunConfig
from .graphs import (
    LinearOperator,
    Multigraph,
    NotSelfAdjointError,
    laplace_type_operator,
    markov_weights,
)
from .omega import OmegaWord
from .schreier import path_canonical_form, schreier_graph


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted union of disjoint closed intervals."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("interval union must be nonempty")
        prev_hi = -math.inf
        for lo, hi in self.intervals:
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")
            if lo <= prev_hi:
                raise ValueError("intervals must be sorted and disjoint")
            prev_hi = hi

    @staticmethod
    def parse(text: str) -> "IntervalUnion":
        """Parse the compact grammar '[a,b]u[c,d]...'."""
        parts = text.replace(" ", "").split("u")
        intervals = []
        for p in parts:
            if not (p.startswith("[") and p.endswith("]")):
                raise ValueError(f"bad interval {p!r}")
            lo, hi = p[1:-1].split(",")
            intervals.append((float(lo), float(hi)))
        return IntervalUnion(tuple(sorted(intervals)))

    def __str__(self) -> str:
        return "u".join(f"[{lo:g},{hi:g}]" for lo, hi in self.intervals)

    def distance(self, x: float) -> float:
        best = math.inf
        for lo, hi in self.intervals:
            if lo <= x <= hi:
                return 0.0
            best = min(best, abs(x - lo), abs(x - hi))
        return best

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.distance(x) <= tol

    def affine(self, scale: float, shift: float) -> "IntervalUnion":
        """Image under x -> scale * x + shift (merging touching intervals)."""
        mapped = sorted(
            tuple(sorted((scale * lo + shift, scale * hi + shift)))
            for lo, hi in self.intervals
        )
        merged = [list(mapped[0])]
        for lo, hi in mapped[1:]:
            if lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return IntervalUnion(tuple((lo, hi) for lo, hi in merged))

    def hausdorff_to_points(self, points: Sequence[float]) -> float:
        """sup over the union of the distance to the nearest point (exact)."""
        pts = sorted(points)
        if not pts:
            return math.inf

        def dist(x: float) -> float:
            import bisect

            i = bisect.bisect_left(pts, x)
            best = math.inf
            if i < len(pts):
                best = min(best, pts[i] - x)
            if i > 0:
                best = min(best, x - pts[i - 1])
            return best

        worst = 0.0
        for lo, hi in self.intervals:
            candidates = [lo, hi]
            for p, q in zip(pts, pts[1:]):
                mid = (p + q) / 2
                if lo <= mid <= hi:
                    candidates.append(mid)
            worst = max(worst, max(dist(x) for x in candidates))
        return worst


GRIG_TARGET = IntervalUnion(((-0.5, 0.0), (0.5, 1.0)))


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[float, ...]
    residuals: tuple[float, ...]
    target: Optional[IntervalUnion]
    in_target: tuple[bool, ...]
    hausdorff: Optional[float]

    @property
    def contained(self) -> bool:
        return all(self.in_target)


def eigenvalues_selfadjoint(
    h: LinearOperator, config: RunConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """All eigenvalues (dense mode) or the extremal pair (apply-only mode)."""
    if not h.self_adjoint:
        raise NotSelfAdjointError("operator is not flagged self-adjoint")
    if h.matrix is not None and h.dimension <= config.max_vertices:
        return np.linalg.eigvalsh(h.as_matrix())
    from scipy.sparse.linalg import LinearOperator as SpOp, eigsh

    op = SpOp((h.dimension, h.dimension), matvec=h.apply, dtype=float)
    low = eigsh(op, k=1, which="SA", return_eigenvectors=False)
    high = eigsh(op, k=1, which="LA", return_eigenvectors=False)
    return np.sort(np.concatenate([low, high]))


def _report(
    eigenvalues: np.ndarray,
    target: Optional[IntervalUnion],
    cumulative: Optional[Sequence[float]],
    tol: float,
) -> SpectrumReport:
    vals = tuple(float(x) for x in np.sort(eigenvalues))
    if target is None:
        return SpectrumReport(vals, (0.0,) * len(vals), None, (True,) * len(vals), None)
    flags = tuple(target.contains(v, tol) for v in vals)
    hd = target.hausdorff_to_points(cumulative if cumulative is not None else vals)
    return SpectrumReport(vals, (0.0,) * len(vals), target, flags, hd)


def markov_eigenvalues_banded(
    g: Multigraph, config: RunConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """Markov spectrum of a path-with-loops graph via its tridiagonal form.

    After canonical path ordering the Markov matrix has bandwidth 1: the
    diagonal holds loopcount/degree and the off-diagonal multiplicity/degree.
    Degrees must be constant (they are, for the level graphs).
    """
    form = path_canonical_form(g)
    deg = [
        form.loops[i]
        + (form.multiplicities[i - 1] if i > 0 else 0)
        + (form.multiplicities[i] if i < g.n - 1 else 0)
        for i in range(g.n)
    ]
    diag = np.array([form.loops[i] / deg[i] for i in range(g.n)], dtype=float)
    if g.n == 1:
        return diag
    off = np.array(
        [form.multiplicities[i] / deg[i] for i in range(g.n - 1)], dtype=float
    )
    # symmetric only when consecutive degrees agree; true for 4-regular paths
    return eigh_tridiagonal(diag, off, eigvals_only=True)


@dataclass(frozen=True)
class SweepResult:
    omega: str
    reports: dict[int, SpectrumReport]
    cumulative: tuple[float, ...]
    hausdorff_by_level: dict[int, float]

    @property
    def all_contained(self) -> bool:
        return all(r.contained for r in self.reports.values())


def spectrum_sweep(
    w: OmegaWord,
    n_max: int,
    target: IntervalUnion = GRIG_TARGET,
    config: RunConfig = DEFAULT_CONFIG,
) -> SweepResult:
    """Markov spectra of all levels up to n_max against a target set.

    Every eigenvalue is checked for membership (tolerance from the config);
    the one-sided Hausdorff distance from the target to the cumulative
    eigenvalue union is reported per level.
    """
    reports = {}
    hausdorff = {}
    cumulative: list[float] = []
    for n in range(1, n_max + 1):
        g = schreier_graph(w, n, config)
        vals = markov_eigenvalues_banded(g, config)
        cumulative.extend(float(v) for v in vals)
        rep = _report(vals, target, cumulative, config.membership_tol)
        reports[n] = rep
        hausdorff[n] = rep.hausdorff
    return SweepResult(str(w), reports, tuple(sorted(cumulative)), hausdorff)


# ---------------------------------------------------------------------------
# infinite dihedral reduction


@dataclass(frozen=True)
class DihedralSpectrum:
    exact: IntervalUnion
    oracle_exact: IntervalUnion  # from the Fourier sampling oracle
    truncation_lengths: tuple[int, ...]
    truncation_eigenvalues: dict[int, tuple[float, ...]]
    boundary_errors: dict[int, float]  # max distance of truncation into exact


def _dihedral_exact(x: float, y: float) -> IntervalUnion:
    lo, hi = abs(x - y), x + y
    if lo == 0:
        return IntervalUnion(((-hi, hi),))
    return IntervalUnion(((-hi, -lo), (lo, hi)))


def _dihedral_fourier_oracle(x: float, y: float, samples: int = 20001) -> IntervalUnion:
    """Band endpoints from the dispersion |x + y e^(i theta)|, sampled."""
    theta = np.linspace(0.0, math.pi, samples)
    vals = np.abs(x + y * np.exp(1j * theta))
    lo, hi = float(vals.min()), float(vals.max())
    if lo < 1e-12:
        return IntervalUnion(((-hi, hi),))
    return IntervalUnion(((-hi, -lo), (lo, hi)))


def dihedral_weighted_spectrum(
    x: float, y: float, lengths: Sequence[int] = (50, 100, 200, 400)
) -> DihedralSpectrum:
    """Spectrum of the alternating-weight doubly infinite line operator.

    The operator x s + y t on the regular representation of the infinite
    dihedral group is the adjacency operator of a line with edge weights
    alternating x, y; its spectrum is +-[|x - y|, x + y].  The closed form
    is cross-computed by a Fourier sampling oracle, and Dirichlet
    truncations of the line are reported with their measured distance into
    the exact set.
    """
    if x <= 0 or y <= 0:
        raise ValueError("weights must be positive")
    exact = _dihedral_exact(x, y)
    oracle = _dihedral_fourier_oracle(x, y)
    trunc_vals = {}
    errors = {}
    for length in lengths:
        off = np.array([x if i % 2 == 0 else y for i in range(length - 1)])
        vals = eigh_tridiagonal(np.zeros(length), off, eigvals_only=True)
        trunc_vals[length] = tuple(float(v) for v in vals)
        errors[length] = max(exact.distance(float(v)) for v in vals)
    return DihedralSpectrum(exact, oracle, tuple(lengths), trunc_vals, errors)


@dataclass(frozen=True)
class DihedralReductionReport:
    depth: int
    t_squared_is_identity: bool
    markov_identity_holds: bool


def _perm_matrix(perm: Sequence[int]) -> np.ndarray:
    n = len(perm)
    m = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(perm):
        m[j, i] = 1
    return m


def dihedral_reduction_check(
    w: OmegaWord, depth: int
) -> DihedralReductionReport:
    """Exact integer check of the dihedral involution identity on a level.

    With the level permutation matrices A, B, C, D of the generators and
    T = (B + C + D - I)/2, verifies T^2 = I and 4 M = A + 2 T + I where
    M = (A + B + C + D)/4, all in integer arithmetic (via 2T).
    """
    mats = {
        g: _perm_matrix(generator_action(g, w, depth).leaf_perm)
        for g in ("a", "b", "c", "d")
    }
    n = 1 << depth
    eye = np.eye(n, dtype=np.int64)
    two_t = mats["b"] + mats["c"] + mats["d"] - eye
    t_sq = bool(np.array_equal(two_t @ two_t, 4 * eye))
    four_m = mats["a"] + mats["b"] + mats["c"] + mats["d"]
    markov = bool(np.array_equal(four_m, mats["a"] + two_t + eye))
    return DihedralReductionReport(depth, t_sq, markov)


# ---------------------------------------------------------------------------
# Kesten bounds


@dataclass(frozen=True)
class KestenVerdict:
    spectral_radius: float
    lower_bound: float
    within_bounds: bool
    radius_is_one: bool


def kesten_check(
    eigenvalues: Sequence[float], half_size: int, tol: float = 1e-10
) -> KestenVerdict:
    """Check sqrt(2n-1)/n <= r(M) <= 1 for a degree-2n Markov spectrum.

    For finite graphs the constant vector forces r(M) = 1 exactly; that is
    reported as a separate flag.
    """
    if half_size < 1:
        raise ValueError("half_size must be >= 1")
    r = max(abs(v) for v in eigenvalues)
    lower = math.sqrt(2 * half_size - 1) / half_size
    within = lower - tol <= r <= 1 + tol
    return KestenVerdict(r, lower, within, abs(r - 1) <= tol)


# ---------------------------------------------------------------------------
# spectral-measure moments


@dataclass(frozen=True)
class MomentSequence:
    vertex: object
    moments: tuple[float, ...]

    def hankel_min_eigenvalue(self) -> float:
        p = len(self.moments) - 1
        size = p // 2 + 1
        h = np.array(
            [[self.moments[i + j] for j in range(size)] for i in range(size)]
        )
        return float(np.linalg.eigvalsh(h).min())


def spectral_moments(
    g: Multigraph, v, count: int, config: RunConfig = DEFAULT_CONFIG
) -> MomentSequence:
    """Return quantities (M^p delta_v, delta_v) for p = 0..count."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if g.n > config.max_vertices:
        raise ResourceLimitError("graph exceeds dense cap")
    m = laplace_type_operator(markov_weights(g)).as_matrix().real
    i = g.index(v)
    delta = np.zeros(g.n)
    delta[i] = 1.0
    vec = delta
    moments = []
    for _p in range(count + 1):
        moments.append(float(vec[i]))
        vec = m @ vec
    return MomentSequence(v, tuple(moments))


def moments_via_eigendecomposition(g: Multigraph, v, count: int) -> MomentSequence:
    """Independent route: sum of w_i lambda_i^p from the eigendecomposition."""
    m = laplace_type_operator(markov_weights(g)).as_matrix().real
    vals, vecs = np.linalg.eigh(m)
    i = g.index(v)
    weights = vecs[i, :] ** 2
    moments = tuple(float(np.sum(weights * vals**p)) for p in range(count + 1))
    return MomentSequence(v, moments)
