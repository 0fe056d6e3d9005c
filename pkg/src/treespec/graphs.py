"""Finite multigraphs, per-endpoint edge weights, and neighbor-sum operators.

Loops count once toward the degree throughout; the convention is recorded in
:class:`treespec.config.RunConfig` and embedded in serialized artifacts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Optional, Sequence

import numpy as np

VertexId = Hashable


class IsolatedVertexError(ValueError):
    pass


class NotRegularError(ValueError):
    pass


class NotSelfAdjointError(ValueError):
    pass


class RadiusTooSmallError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    """Undirected edge; a loop has u == v and a single weight wu (= wv)."""

    u: VertexId
    v: VertexId
    wu: complex = 1.0
    wv: complex = 1.0
    label: Optional[str] = None

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


class Multigraph:
    """Unweighted multigraph with loops; edges may carry labels."""

    def __init__(self, vertices: Sequence[VertexId], edges: Sequence[tuple]):
        self.vertices = list(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self.edges: list[Edge] = []
        for e in edges:
            if isinstance(e, Edge):
                self.edges.append(e)
            else:
                u, v, *rest = e
                label = rest[0] if rest else None
                self.edges.append(Edge(u, v, label=label))
        for e in self.edges:
            if e.u not in self._index or e.v not in self._index:
                raise ValueError(f"edge {e} references unknown vertex")

    def index(self, v: VertexId) -> int:
        return self._index[v]

    def degree(self, v: VertexId) -> int:
        """Loops contribute 1."""
        return sum(1 for e in self.edges if v in (e.u, e.v))

    def incident(self, v: VertexId) -> list[int]:
        """Indices of edges adjacent to v (a loop appears once)."""
        return [i for i, e in enumerate(self.edges) if v in (e.u, e.v)]

    def neighbors(self, v: VertexId) -> list[VertexId]:
        out = []
        for e in self.edges:
            if e.u == v:
                out.append(e.v)
            elif e.v == v:
                out.append(e.u)
        return out

    @property
    def n(self) -> int:
        return len(self.vertices)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n


class WeightedGraph(Multigraph):
    """Multigraph carrying a weight per (vertex, incident edge) pair."""

    def __init__(self, vertices: Sequence[VertexId], edges: Sequence[Edge]):
        super().__init__(vertices, list(edges))

    @property
    def max_abs_weight(self) -> float:
        if not self.edges:
            return 0.0
        return max(max(abs(e.wu), abs(e.wv)) for e in self.edges)

    @property
    def is_self_adjoint(self) -> bool:
        """True iff every edge weight pair is mutually conjugate."""
        for e in self.edges:
            if e.is_loop:
                if abs(complex(e.wu).imag) > 0:
                    return False
            elif complex(e.wu) != np.conj(complex(e.wv)):
                return False
        return True


def markov_weights(g: Multigraph) -> WeightedGraph:
    """Weight every (vertex, edge) pair by 1/degree(vertex)."""
    deg = {v: g.degree(v) for v in g.vertices}
    for v, d in deg.items():
        if d == 0:
            raise IsolatedVertexError(f"vertex {v!r} is isolated")
    edges = [
        Edge(e.u, e.v, 1.0 / deg[e.u], 1.0 / deg[e.v], e.label) for e in g.edges
    ]
    return WeightedGraph(g.vertices, edges)


@dataclass
class LinearOperator:
    """Finite-dimensional operator with an apply contract.

    ``matrix`` is the dense materialization when the dimension is within the
    dense cap; otherwise only ``apply`` is available.
    """

    dimension: int
    apply: Callable[[np.ndarray], np.ndarray]
    matrix: Optional[np.ndarray] = None
    self_adjoint: bool = False
    norm_bound: float = field(default=0.0)

    def as_matrix(self) -> np.ndarray:
        if self.matrix is None:
            raise ValueError("operator has no dense materialization")
        return self.matrix


def _operator_from_matrix(m: np.ndarray, self_adjoint: bool) -> LinearOperator:
    norm = min(
        float(np.abs(m).sum(axis=1).max()), float(np.linalg.norm(m, "fro"))
    )
    return LinearOperator(
        dimension=m.shape[0],
        apply=lambda x, _m=m: _m @ x,
        matrix=m,
        self_adjoint=self_adjoint,
        norm_bound=norm,
    )


def laplace_type_operator(g: WeightedGraph) -> LinearOperator:
    """Neighbor-sum operator: entry (v, w) sums the weights at v of v-w edges.

    Loops contribute their weight to the diagonal once per loop.
    """
    n = g.n
    dtype = complex if any(
        complex(e.wu).imag or complex(e.wv).imag for e in g.edges
    ) else float
    m = np.zeros((n, n), dtype=dtype)
    for e in g.edges:
        iu, iv = g.index(e.u), g.index(e.v)
        if e.is_loop:
            m[iu, iu] += e.wu if dtype is complex else complex(e.wu).real
        else:
            m[iu, iv] += e.wu if dtype is complex else complex(e.wu).real
            m[iv, iu] += e.wv if dtype is complex else complex(e.wv).real
    return _operator_from_matrix(m, g.is_self_adjoint)


def markov_operator(g: Multigraph) -> LinearOperator:
    """Averaging operator of the simple random walk (loops count once)."""
    return laplace_type_operator(markov_weights(g))


def cayley_laplacian(g: Multigraph) -> LinearOperator:
    """|S| (I - M) on a regular graph of degree |S|."""
    degrees = {g.degree(v) for v in g.vertices}
    if len(degrees) != 1:
        raise NotRegularError(f"graph is not regular: degrees {sorted(degrees)}")
    k = degrees.pop()
    m = markov_operator(g)
    mat = k * (np.eye(g.n) - m.as_matrix())
    return _operator_from_matrix(mat, m.self_adjoint)


def shift_square_transform(
    h: LinearOperator, lam: complex, radius: float
) -> tuple[LinearOperator, WeightedGraph]:
    """Positive transform I - (A - lam)(A - lam)^* / R^2 and its graph.

    The transform has 1 in its spectrum exactly when lam is in the spectrum
    of A.  The realizing weighted graph lives on the same vertex set; its
    edges are the nonzero entries (paths of length <= 2 in the original).
    """
    if radius < 2 * h.norm_bound:
        raise RadiusTooSmallError(
            f"radius {radius} below 2*norm estimate {2 * h.norm_bound}"
        )
    a = h.as_matrix()
    shifted = a - lam * np.eye(h.dimension)
    t = np.eye(h.dimension) - (shifted @ shifted.conj().T) / radius**2
    edges = []
    n = h.dimension
    for i in range(n):
        if t[i, i] != 0:
            edges.append(Edge(i, i, t[i, i], t[i, i]))
        for j in range(i + 1, n):
            if t[i, j] != 0 or t[j, i] != 0:
                edges.append(Edge(i, j, t[i, j], t[j, i]))
    graph = WeightedGraph(list(range(n)), edges)
    return _operator_from_matrix(t, graph.is_self_adjoint), graph
