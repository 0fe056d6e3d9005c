"""Schreier graphs of the level actions, their path-with-loops models, and
the coverings between levels and from Cayley balls.

Level-n vertices are binary strings of length n in lexicographic order
(0 < 1).  Each generator contributes exactly one edge (possibly a loop) per
vertex, so every level graph is 4-regular under the loops-count-once
convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .actions import GENERATORS, generator_action
from .config import DEFAULT_CONFIG, ResourceLimitError, RunConfig
from .covering import CoveringMap
from .graphs import Edge, Multigraph
from .growth import BallEnumeration, enumerate_ball
from .omega import OmegaWord


class NotAPathError(ValueError):
    pass


def _bits(i: int, n: int) -> str:
    return format(i, f"0{n}b")


def schreier_graph(
    w: OmegaWord, n: int, config: RunConfig = DEFAULT_CONFIG
) -> Multigraph:
    """Level-n Schreier graph: one labeled edge {v, g v} per generator."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if 1 << n > config.max_vertices:
        raise ResourceLimitError(f"2^{n} vertices exceed cap {config.max_vertices}")
    vertices = [_bits(i, n) for i in range(1 << n)]
    edges = []
    for g in GENERATORS:
        perm = generator_action(g, w, n).leaf_perm
        for i, j in enumerate(perm):
            if i <= j:
                edges.append(Edge(vertices[i], vertices[j], label=g))
    return Multigraph(vertices, edges)


@dataclass(frozen=True)
class UpsilonSpec:
    """Model-graph descriptor: a finite level, a one-ended ray, or a
    two-sided line segment.

    ``middle_exception`` reproduces the variant with a single edge at
    position 2^(n-1) - 1 instead of a double one; it is off by default
    because directly computed level graphs contradict it (the discrepancy is
    surfaced, not hidden).
    """

    kind: str  # "finite" | "ray" | "line"
    size: int  # level n for finite; segment length for ray/line
    middle_exception: bool = False

    def __post_init__(self):
        if self.kind not in ("finite", "ray", "line"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.size < 1:
            raise ValueError("size must be >= 1")


def _mult(i: int) -> int:
    """Connecting-edge multiplicity between positions i and i+1."""
    return 2 if i % 2 == 1 else 1


def upsilon_graph(spec: UpsilonSpec) -> Multigraph:
    """Materialize a model graph or a finite segment of an infinite one.

    Segment boundary vertices keep their interior degree deficit; no
    wrap-around edges are added.
    """
    edges: list[Edge] = []
    if spec.kind == "finite":
        m = 1 << spec.size
        vertices = list(range(m))
        for v in (0, m - 1):
            edges += [Edge(v, v)] * 3
        for v in range(1, m - 1):
            edges.append(Edge(v, v))
        exception_at = (1 << (spec.size - 1)) - 1
        for i in range(m - 1):
            mult = _mult(i)
            if spec.middle_exception and i == exception_at and i % 2 == 1:
                mult = 1
            edges += [Edge(i, i + 1)] * mult
        return Multigraph(vertices, edges)
    if spec.kind == "ray":
        vertices = list(range(spec.size + 1))
        edges += [Edge(0, 0)] * 3
        for v in range(1, spec.size + 1):
            edges.append(Edge(v, v))
        for i in range(spec.size):
            edges += [Edge(i, i + 1)] * _mult(i)
        return Multigraph(vertices, edges)
    vertices = list(range(-spec.size, spec.size + 1))
    for v in vertices:
        edges.append(Edge(v, v))
    for i in range(-spec.size, spec.size):
        edges += [Edge(i, i + 1)] * _mult(i)
    return Multigraph(vertices, edges)


@dataclass(frozen=True)
class PathForm:
    """Canonical form of a path-with-loops multigraph: vertices in path
    order from the endpoint with the smaller original label, with per-vertex
    loop counts and multiplicities to the next vertex."""

    order: tuple
    loops: tuple[int, ...]
    multiplicities: tuple[int, ...]


def path_canonical_form(g: Multigraph) -> PathForm:
    loops = {v: 0 for v in g.vertices}
    simple = {v: set() for v in g.vertices}
    mult = {}
    for e in g.edges:
        if e.is_loop:
            loops[e.u] += 1
        else:
            simple[e.u].add(e.v)
            simple[e.v].add(e.u)
            key = frozenset((e.u, e.v))
            mult[key] = mult.get(key, 0) + 1
    if g.n == 1:
        v = g.vertices[0]
        return PathForm((v,), (loops[v],), ())
    ends = [v for v in g.vertices if len(simple[v]) == 1]
    if len(ends) != 2 or any(len(simple[v]) > 2 for v in g.vertices):
        raise NotAPathError("non-loop edges do not form a simple path")
    start = min(ends, key=lambda v: str(v))
    order = [start]
    prev = None
    while len(order) < g.n:
        nxt = [u for u in simple[order[-1]] if u != prev]
        if len(nxt) != 1:
            raise NotAPathError("non-loop edges do not form a simple path")
        prev = order[-1]
        order.append(nxt[0])
    if len(set(order)) != g.n:
        raise NotAPathError("non-loop edges are disconnected or cyclic")
    return PathForm(
        tuple(order),
        tuple(loops[v] for v in order),
        tuple(mult[frozenset((order[i], order[i + 1]))] for i in range(g.n - 1)),
    )


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    mapping: Optional[dict] = None
    witness: Optional[str] = None

    def __bool__(self) -> bool:
        return self.isomorphic


def check_isomorphic(g: Multigraph, u: Multigraph) -> IsomorphismResult:
    """Compare two path-with-loops multigraphs position by position.

    Both canonical forms are compared in both path orientations; on success
    the vertex bijection is returned, otherwise the first mismatch.
    """
    if g.n != u.n:
        return IsomorphismResult(False, witness=f"vertex counts {g.n} != {u.n}")
    fg, fu = path_canonical_form(g), path_canonical_form(u)
    for flip in (False, True):
        loops = fu.loops[::-1] if flip else fu.loops
        mults = fu.multiplicities[::-1] if flip else fu.multiplicities
        order = fu.order[::-1] if flip else fu.order
        if fg.loops == loops and fg.multiplicities == mults:
            return IsomorphismResult(True, dict(zip(fg.order, order)))
    # report the first mismatch against the unflipped orientation
    for i in range(g.n):
        if fg.loops[i] != fu.loops[i]:
            return IsomorphismResult(
                False, witness=f"loop count mismatch at path position {i}: "
                f"{fg.loops[i]} != {fu.loops[i]}"
            )
        if i < g.n - 1 and fg.multiplicities[i] != fu.multiplicities[i]:
            return IsomorphismResult(
                False, witness=f"edge multiplicity mismatch at position {i}: "
                f"{fg.multiplicities[i]} != {fu.multiplicities[i]}"
            )
    return IsomorphismResult(False, witness="orientation mismatch")


def _edge_lookup(g: Multigraph) -> dict:
    """(vertex, label) -> edge index, for graphs with one edge per label."""
    table = {}
    for i, e in enumerate(g.edges):
        table[(e.u, e.label)] = i
        table[(e.v, e.label)] = i
    return table


def level_projection_covering(
    w: OmegaWord, m: int, n: int, config: RunConfig = DEFAULT_CONFIG
) -> CoveringMap:
    """Prefix covering from the level-m graph onto the level-n graph."""
    if not m > n >= 1:
        raise ValueError("need m > n >= 1")
    src = schreier_graph(w, m, config)
    tgt = schreier_graph(w, n, config)
    lookup = _edge_lookup(tgt)
    vertex_map = {v: v[:n] for v in src.vertices}
    edge_map = {
        i: lookup[(e.u[:n], e.label)] for i, e in enumerate(src.edges)
    }
    return CoveringMap(src, tgt, vertex_map, edge_map)


@dataclass
class CayleyBall:
    """Radius-r ball of the group's Cayley graph with its natural map onto a
    level graph (evaluate every element at the rightmost level-n vertex)."""

    graph: Multigraph
    covering: CoveringMap
    enumeration: BallEnumeration
    radius: int
    level: int


def cayley_ball(
    w: OmegaWord, radius: int, level: int, config: RunConfig = DEFAULT_CONFIG
) -> CayleyBall:
    """Build the Cayley ball and its covering map onto the level graph.

    Interior vertices (word length < radius) carry their full degree-4 star;
    the covering map is a local isomorphism there.
    """
    if radius < 1 or level < 1:
        raise ValueError("radius and level must be >= 1")
    enum = enumerate_ball(w, radius, config)
    tgt = schreier_graph(w, level, config)
    lookup = _edge_lookup(tgt)
    m = len(enum.perms)
    vertices = list(range(m))
    shift = enum.depth - level
    top_leaf = (1 << enum.depth) - 1

    def phi(i: int) -> str:
        return _bits(int(enum.perms[i][top_leaf]) >> shift, level)

    edges = []
    edge_map = {}
    for i in vertices:
        for gi, g in enumerate(GENERATORS):
            j = enum.neighbors[i][gi]
            if j == -1 or j < i:
                continue
            edge_map[len(edges)] = lookup[(phi(i), g)]
            edges.append(Edge(i, j, label=g))
    graph = Multigraph(vertices, edges)
    interior = {i for i in vertices if enum.radius_of[i] < radius}
    vertex_map = {i: phi(i) for i in vertices}
    covering = CoveringMap(graph, tgt, vertex_map, edge_map, interior=interior)
    return CayleyBall(graph, covering, enum, radius, level)
