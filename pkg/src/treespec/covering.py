"""Graph coverings: verification, lifting, Folner data, and the residual
harness that certifies spectral inclusion numerically.

A covering is a pair of surjections (vertices, edges) restricting to a
bijection on every edge star.  Sources may be finite windows onto infinite
graphs; every certificate is then stamped with the window and the set of
interior vertices whose stars are complete.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .graphs import Edge, Multigraph, WeightedGraph, laplace_type_operator, markov_weights


class WindowTooSmallError(RuntimeError):
    pass


class BadStartError(ValueError):
    pass


class NotAnEigenpairError(ValueError):
    pass


@dataclass
class CoveringMap:
    """Vertex and edge surjections from source onto target.

    ``interior`` is the set of source vertices whose full edge star is
    present; None means the whole source is exact (finite covering).
    """

    source: Multigraph
    target: Multigraph
    vertex_map: dict
    edge_map: dict[int, int]
    interior: Optional[set] = None

    def phi(self, v):
        return self.vertex_map[v]

    def interior_vertices(self) -> list:
        if self.interior is None:
            return list(self.source.vertices)
        return [v for v in self.source.vertices if v in self.interior]


@dataclass(frozen=True)
class CoveringReport:
    ok: bool
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_covering(c: CoveringMap) -> CoveringReport:
    """Check surjectivity, endpoint compatibility and local bijectivity.

    On windowed sources local bijectivity is checked at interior vertices
    only; if the window image misses part of the target the window cannot
    certify surjectivity and :class:`WindowTooSmallError` is raised.
    """
    src, tgt = c.source, c.target
    # endpoint compatibility (as multisets, so a non-loop may cover a loop)
    for ei, ti in c.edge_map.items():
        e, t = src.edges[ei], tgt.edges[ti]
        if sorted(map(str, (c.phi(e.u), c.phi(e.v)))) != sorted(map(str, (t.u, t.v))):
            return CoveringReport(False, f"edge {ei} endpoints do not cover edge {ti}")
    interior = set(c.interior_vertices())
    for v in interior:
        star = src.incident(v)
        images = []
        for ei in star:
            if ei not in c.edge_map:
                return CoveringReport(False, f"edge {ei} at vertex {v!r} unmapped")
            images.append(c.edge_map[ei])
        tv = c.phi(v)
        if sorted(images) != sorted(tgt.incident(tv)):
            return CoveringReport(
                False, f"star at {v!r} is not bijective onto star at {tv!r}"
            )
    # surjectivity onto the target, witnessed by interior vertices
    hit_v = {c.phi(v) for v in interior}
    hit_e = {c.edge_map[ei] for v in interior for ei in src.incident(v)}
    missing_v = [v for v in tgt.vertices if v not in hit_v]
    missing_e = [i for i in range(len(tgt.edges)) if i not in hit_e]
    if missing_v or missing_e:
        if c.interior is not None:
            raise WindowTooSmallError(
                f"window image misses target vertices {missing_v[:3]} "
                f"or edges {missing_e[:3]}"
            )
        return CoveringReport(
            False, f"not surjective: missing vertices {missing_v[:3]}"
        )
    return CoveringReport(True)


def lift_weights(c: CoveringMap, weighted_target: WeightedGraph) -> WeightedGraph:
    """Pull back per-endpoint weights along the covering.

    ``weighted_target`` must have the same vertices and edge order as the
    covering's target.
    """
    edges = []
    for ei, e in enumerate(c.source.edges):
        te = weighted_target.edges[c.edge_map[ei]]
        pu, pv = c.phi(e.u), c.phi(e.v)
        if te.is_loop:
            wu = wv = te.wu
        else:
            wu = te.wu if pu == te.u else te.wv
            wv = te.wu if pv == te.u else te.wv
        edges.append(Edge(e.u, e.v, wu, wv, e.label))
    return WeightedGraph(c.source.vertices, edges)


def lift_path(
    c: CoveringMap, origin, edge_indices: Sequence[int], start
) -> list:
    """Unique lift of a target path; returns the source vertex sequence."""
    if c.phi(start) != origin:
        raise BadStartError(f"{start!r} is not in the fiber of {origin!r}")
    path = [start]
    cur_t, cur_s = origin, start
    for ti in edge_indices:
        te = c.target.edges[ti]
        if cur_t not in (te.u, te.v):
            raise ValueError(f"target edge {ti} not incident to {cur_t!r}")
        lifted = [
            ei for ei in c.source.incident(cur_s) if c.edge_map.get(ei) == ti
        ]
        if len(lifted) != 1:
            raise ValueError(
                f"lift not unique at {cur_s!r}: {len(lifted)} candidate edges"
            )
        e = c.source.edges[lifted[0]]
        cur_s = e.v if e.u == cur_s else e.u
        cur_t = te.v if te.u == cur_t else te.u
        path.append(cur_s)
    return path


# ---------------------------------------------------------------------------
# lazy sources


class LazyGraphOracle:
    """Deterministic neighborhood oracle for an infinite bounded-degree graph.

    ``neighbors(v)`` returns the full incident edge list of v as tuples
    (label, neighbor, multiplicity); loops have neighbor == v.
    """

    def __init__(self, root, neighbors: Callable, degree_bound: int):
        self.root = root
        self.neighbors = neighbors
        self.degree_bound = degree_bound

    def window(self, radius: int) -> tuple[Multigraph, set]:
        """Materialize the radius ball; interior = vertices of depth < radius."""
        dist = {self.root: 0}
        order = [self.root]
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            if dist[v] >= radius:
                continue
            for _label, u, _mult in self.neighbors(v):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    order.append(u)
                    queue.append(u)
        edges = []
        seen = set()
        for v in order:
            if dist[v] >= radius:
                continue
            for label, u, mult in self.neighbors(v):
                if u not in dist:
                    continue
                key = (min(str(v), str(u)), max(str(v), str(u)), label)
                if key in seen:
                    continue
                seen.add(key)
                for _ in range(mult):
                    edges.append(Edge(v, u, label=label))
        interior = {v for v in order if dist[v] < radius}
        return Multigraph(order, edges), interior


def upsilon_ray_oracle() -> LazyGraphOracle:
    """The one-ended path-with-loops model graph as a lazy oracle."""

    def nbrs(i: int):
        out = []
        if i == 0:
            out += [("loop", 0, 3), ("right", 1, 1)]
            return out
        out.append(("loop", i, 1))
        left_mult = 2 if (i - 1) % 2 == 1 else 1
        right_mult = 2 if i % 2 == 1 else 1
        out.append(("left", i - 1, left_mult))
        out.append(("right", i + 1, right_mult))
        return out

    return LazyGraphOracle(0, nbrs, 4)


def binary_tree_oracle() -> LazyGraphOracle:
    """Exponential-growth control case: the rooted binary tree."""

    def nbrs(v: str):
        out = [("child", v + "0", 1), ("child", v + "1", 1)]
        if v:
            out.append(("parent", v[:-1], 1))
        return out

    return LazyGraphOracle("", nbrs, 3)


# ---------------------------------------------------------------------------
# Folner data


@dataclass(frozen=True)
class FolnerReport:
    sizes: tuple[int, ...]  # |B_k| for k = 0..k_max
    boundary_ratios: tuple[float, ...]  # |B_1(F_k) \ F_k| / |F_k|
    subexp_evidence: bool
    growth_rates: tuple[float, ...]  # |B_k|^(1/k)


def _bfs_distances(g: Multigraph, v) -> dict:
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for x in g.neighbors(u):
            if x not in dist:
                dist[x] = dist[u] + 1
                queue.append(x)
    return dist


def folner_balls(src, v, k_max: int) -> FolnerReport:
    """Ball sizes and boundary ratios of F_k = B_k(v).

    ``src`` is a finite Multigraph or a LazyGraphOracle; oracles are
    materialized to radius k_max + 1 so the outer boundary is exact.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    if isinstance(src, LazyGraphOracle):
        graph, _interior = src.window(k_max + 1)
    else:
        graph = src
    dist = _bfs_distances(graph, v)
    sizes = [sum(1 for d in dist.values() if d <= k) for k in range(k_max + 2)]
    ratios = tuple(
        (sizes[k + 1] - sizes[k]) / sizes[k] for k in range(1, k_max + 1)
    )
    rates = tuple(sizes[k] ** (1.0 / k) for k in range(1, k_max + 1))
    # evidence only: growth rate fitted over the top half of the range close
    # to 1 and the per-k rates still falling
    half = max(1, k_max // 2)
    fitted = (sizes[k_max] / sizes[half]) ** (1.0 / (k_max - half)) if k_max > half else rates[-1]
    evidence = fitted < 1.3 and rates[-1] <= rates[half - 1]
    return FolnerReport(tuple(sizes[: k_max + 1]), ratios, evidence, rates)


# ---------------------------------------------------------------------------
# residual harness


def fiber_count(c: CoveringMap, v, k: int) -> int:
    """Number of fiber points of phi(v) within the radius-k source ball."""
    if k < 0:
        return 0
    dist = _bfs_distances(c.source, v)
    target = c.phi(v)
    # the ball must be exact: every vertex at distance <= k must be interior
    # or at the window boundary with all closer vertices present
    if c.interior is not None:
        max_interior = max(
            (dist[x] for x in c.interior_vertices() if x in dist), default=-1
        )
        # the radius-(interior+1) ball is still exact: its vertices all exist
        if k > max_interior + 1:
            raise WindowTooSmallError(f"radius {k} exceeds interior radius")
    return sum(1 for x, d in dist.items() if d <= k and c.phi(x) == target)


@dataclass(frozen=True)
class HulanickiRecord:
    mode: str
    k: int
    n_support: int
    residual: float
    theoretical_bound: Optional[float]
    folner_ratio: Optional[float]
    alphas: dict[int, int] = field(default_factory=dict)


def hulanicki_residual(
    c: CoveringMap,
    lam: float,
    f: np.ndarray,
    mode: str,
    k: int,
    base=None,
    eigen_tol: float = 1e-9,
) -> HulanickiRecord:
    """Residual of the truncated pullback of f against the lifted operator.

    mode "finite-target": f must be an exact eigenpair of the target Markov
    operator; the pullback is truncated to B_{N+1}(B_k(base)) with N the
    target size, and the Folner ratio of B_k(base) is reported alongside.

    mode "subexp": f may be an eps-approximate eigenvector; the pullback is
    truncated to B_k(base) and the residual is compared against the bound
    eps^2 a_k / a_{k-N} + 2 |supp f| (a_{k+N} - a_{k-2N}) / a_{k-N}
    computed from the measured fiber counts a_j.
    """
    if mode not in ("finite-target", "subexp"):
        raise ValueError(f"unknown mode {mode!r}")
    tgt = c.target
    f = np.asarray(f, dtype=float)
    if f.shape != (tgt.n,):
        raise ValueError("f must be a vector on the target vertices")
    norm_f = float(np.linalg.norm(f))
    if norm_f == 0:
        raise ValueError("f must be nonzero")
    f = f / norm_f

    h2 = laplace_type_operator(markov_weights(tgt)).as_matrix().real
    eps = float(np.linalg.norm(h2 @ f - lam * f))
    if mode == "finite-target" and eps > eigen_tol:
        raise NotAnEigenpairError(f"target residual {eps:.3e} > {eigen_tol}")

    if base is None:
        base = c.source.vertices[0]
    dist = _bfs_distances(c.source, base)
    tindex = {v: i for i, v in enumerate(tgt.vertices)}

    support = [tgt.vertices[i] for i in np.nonzero(np.abs(f) > 0)[0]]
    tdist = _bfs_distances(tgt, c.phi(base))
    if mode == "finite-target":
        n_ctrl = tgt.n
        trunc = k + n_ctrl + 1
    else:
        n_ctrl = max(tdist[s] for s in support)
        trunc = k

    # the window must contain B_{trunc+1}(base) exactly
    if c.interior is not None:
        interior_radius = max(
            (dist[x] for x in c.interior_vertices() if x in dist), default=-1
        )
        if trunc + 1 > interior_radius + 1:
            raise WindowTooSmallError(
                f"truncation radius {trunc} needs interior radius >= {trunc}"
            )

    lifted = lift_weights(c, markov_weights(tgt))
    h1 = laplace_type_operator(lifted).as_matrix().real
    sindex = {v: i for i, v in enumerate(c.source.vertices)}

    fk = np.zeros(c.source.n)
    for v, d in dist.items():
        if d <= trunc:
            fk[sindex[v]] = f[tindex[c.phi(v)]]
    norm_fk = float(np.linalg.norm(fk))
    if norm_fk == 0:
        raise ValueError("truncated pullback vanishes; enlarge k")
    residual = float(np.linalg.norm(h1 @ fk - lam * fk)) / norm_fk

    if mode == "subexp":
        needed = [k, k - n_ctrl, k + n_ctrl, k - 2 * n_ctrl]
        alphas = {j: fiber_count(c, base, j) for j in sorted(set(needed))}
        denom = alphas[k - n_ctrl]
        if denom == 0:
            raise ValueError(f"alpha_(k-N) = 0 at k={k}, N={n_ctrl}; enlarge k")
        bound = (
            eps**2 * alphas[k] / denom
            + 2 * len(support) * (alphas[k + n_ctrl] - alphas[k - 2 * n_ctrl]) / denom
        )
        return HulanickiRecord("subexp", k, len(support), residual, bound, None, alphas)

    ball = sum(1 for d in dist.values() if d <= k)
    boundary = sum(1 for d in dist.values() if d == k + 1)
    return HulanickiRecord(
        "finite-target", k, len(support), residual, None, boundary / ball, {}
    )


def window_pullback_residual(c: CoveringMap, lam: float, f: np.ndarray) -> HulanickiRecord:
    """Residual of the full pullback of f on a finite (possibly windowed) source.

    The pullback f(phi(x)) is taken on every source vertex, so the cutoff is
    the window itself: rows at rim vertices (incomplete stars) carry the
    truncation defect, interior rows vanish exactly when f is an eigenvector.
    For an exact finite covering the residual is therefore 0.  The reported
    ``folner_ratio`` is the fraction of non-interior vertices.
    """
    tgt = c.target
    f = np.asarray(f, dtype=float)
    if f.shape != (tgt.n,):
        raise ValueError("f must be a vector on the target vertices")
    norm_f = float(np.linalg.norm(f))
    if norm_f == 0:
        raise ValueError("f must be nonzero")
    f = f / norm_f
    lifted = lift_weights(c, markov_weights(tgt))
    h1 = laplace_type_operator(lifted).as_matrix().real
    tindex = {v: i for i, v in enumerate(tgt.vertices)}
    fk = np.array([f[tindex[c.phi(v)]] for v in c.source.vertices])
    residual = float(np.linalg.norm(h1 @ fk - lam * fk)) / float(np.linalg.norm(fk))
    rim = c.source.n - len(c.interior_vertices())
    return HulanickiRecord(
        "window", c.source.n, int(np.count_nonzero(np.abs(f) > 0)),
        residual, None, rim / c.source.n, {},
    )


@dataclass(frozen=True)
class InclusionReport:
    eigenvalues: tuple[float, ...]
    best_residuals: tuple[float, ...]
    records: tuple[HulanickiRecord, ...]


def spectral_inclusion_report(
    c: CoveringMap,
    k_schedule: Sequence[int],
    mode: str = "subexp",
    base=None,
) -> InclusionReport:
    """Best residual per target eigenvalue over a schedule of radii.

    The target must be finite; its Markov operator is fully diagonalized and
    each eigenpair is pushed through :func:`hulanicki_residual`.
    """
    h2 = laplace_type_operator(markov_weights(c.target)).as_matrix().real
    vals, vecs = np.linalg.eigh(h2)
    records = []
    best = []
    for i in range(len(vals)):
        best_res = math.inf
        for k in k_schedule:
            rec = hulanicki_residual(c, float(vals[i]), vecs[:, i], mode, k, base)
            records.append(rec)
            best_res = min(best_res, rec.residual)
        best.append(best_res)
    return InclusionReport(tuple(map(float, vals)), tuple(best), tuple(records))
