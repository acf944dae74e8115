"""Simplicial complexes (nodes, oriented edges, oriented triangles) and
their boundary operators.

A complex stores only realized simplices, each as an ascending vertex
tuple.  The orientation convention is fixed by that ordering: column
e = (i, j) of the edge boundary carries -1 at row i and +1 at row j, and
column t = (i, j, k) of the triangle boundary carries +1 on edge (j, k),
-1 on edge (i, k) and +1 on edge (i, j).  Under this convention the
0-th Hodge-Laplacian equals the ordinary graph Laplacian D - A.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import InputFormatError, TopologyError

SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class SimplicialComplex:
    """Immutable complex with 0-, 1- and 2-simplices.

    edges are (i, j) pairs with i < j; triangles are (i, j, k) triples
    with i < j < k whose three edges must all be present.
    """

    n_nodes: int
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...] = ()
    edge_index: dict[tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n_nodes < 0:
            raise TopologyError("node count must be nonnegative")
        object.__setattr__(self, "edges", tuple(tuple(int(v) for v in e) for e in self.edges))
        object.__setattr__(
            self, "triangles", tuple(tuple(int(v) for v in t) for t in self.triangles)
        )
        index: dict[tuple[int, int], int] = {}
        for pos, (i, j) in enumerate(self.edges):
            if not (0 <= i < j < self.n_nodes):
                raise TopologyError(f"edge ({i}, {j}) is not an ascending pair of valid nodes")
            if (i, j) in index:
                raise TopologyError(f"duplicate edge ({i}, {j})")
            index[(i, j)] = pos
        for (i, j, k) in self.triangles:
            if not (0 <= i < j < k < self.n_nodes):
                raise TopologyError(f"triangle ({i}, {j}, {k}) is not ascending and valid")
            for face in ((i, j), (i, k), (j, k)):
                if face not in index:
                    raise TopologyError(f"triangle ({i}, {j}, {k}) needs missing edge {face}")
        object.__setattr__(self, "edge_index", index)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def simplex_count(self, k: int) -> int:
        return (self.n_nodes, self.n_edges, self.n_triangles)[k]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n_nodes": self.n_nodes,
                "edges": [list(e) for e in self.edges],
                "triangles": [list(t) for t in self.triangles],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        try:
            doc = json.loads(text)
            return cls(
                n_nodes=int(doc["n_nodes"]),
                edges=tuple(tuple(e) for e in doc.get("edges", [])),
                triangles=tuple(tuple(t) for t in doc.get("triangles", [])),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, TopologyError):
                raise
            raise InputFormatError(f"malformed complex JSON: {exc}") from exc


@dataclass(frozen=True)
class BoundaryOperator:
    """Signed incidence of k-simplices onto their (k-1)-faces.

    Stored as a sparse entry list; ``to_sparse``/``to_dense`` materialize
    it for numeric work.
    """

    k: int
    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...]

    def to_sparse(self, dtype=np.float64) -> sp.csr_matrix:
        if not self.entries:
            return sp.csr_matrix((self.rows, self.cols), dtype=dtype)
        r, c, s = zip(*self.entries)
        return sp.csr_matrix((np.asarray(s, dtype=dtype), (r, c)), shape=(self.rows, self.cols))

    def to_dense(self, dtype=np.float64) -> np.ndarray:
        return self.to_sparse(dtype=dtype).toarray()


def build_complex_from_connectivity(matrix, threshold: float) -> SimplicialComplex:
    """Binarize a symmetric connectivity matrix into a 1-skeleton.

    An edge (i, j), i < j, exists iff |matrix[i, j]| > threshold.  The
    diagonal is ignored (self-loops never become edges) and no triangles
    are filled: connectivity graphs carry none.
    """
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputFormatError(f"connectivity matrix must be square, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise InputFormatError("connectivity matrix contains non-finite entries")
    if m.size and np.max(np.abs(m - m.T)) > SYMMETRY_TOL:
        raise InputFormatError("connectivity matrix is not symmetric within 1e-9")
    if threshold < 0:
        raise InputFormatError("threshold must be nonnegative")
    n = m.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    keep = np.abs(m[iu, ju]) > threshold
    edges = tuple(zip(iu[keep].tolist(), ju[keep].tolist()))
    return SimplicialComplex(n_nodes=n, edges=edges)


def boundary_1(complex: SimplicialComplex) -> BoundaryOperator:
    """Node-edge incidence: column (i, j) has -1 at row i, +1 at row j."""
    entries = []
    for col, (i, j) in enumerate(complex.edges):
        entries.append((i, col, -1))
        entries.append((j, col, +1))
    return BoundaryOperator(
        k=1, rows=complex.n_nodes, cols=complex.n_edges, entries=tuple(entries)
    )


def boundary_2(complex: SimplicialComplex) -> BoundaryOperator:
    """Edge-triangle incidence: (i,j,k) -> +(j,k) -(i,k) +(i,j).

    The alternating signs make ``boundary_1 @ boundary_2`` vanish
    identically, the chain-complex identity.
    """
    entries = []
    for col, (i, j, k) in enumerate(complex.triangles):
        for face, sign in (((j, k), +1), ((i, k), -1), ((i, j), +1)):
            row = complex.edge_index.get(face)
            if row is None:
                raise TopologyError(f"triangle ({i}, {j}, {k}) references missing edge {face}")
            entries.append((row, col, sign))
    return BoundaryOperator(
        k=2, rows=complex.n_edges, cols=complex.n_triangles, entries=tuple(entries)
    )


def node_adjacency_lists(complex: SimplicialComplex) -> list[list[int]]:
    """Neighbors of each node through shared edges."""
    adj: list[list[int]] = [[] for _ in range(complex.n_nodes)]
    for (i, j) in complex.edges:
        adj[i].append(j)
        adj[j].append(i)
    return adj


def edge_adjacency_lists(complex: SimplicialComplex) -> list[list[int]]:
    """Line-graph neighbors: two edges are adjacent iff they share a node."""
    incident: list[list[int]] = [[] for _ in range(complex.n_nodes)]
    for pos, (i, j) in enumerate(complex.edges):
        incident[i].append(pos)
        incident[j].append(pos)
    adj: list[list[int]] = [[] for _ in range(complex.n_edges)]
    for edges_at_node in incident:
        for a in edges_at_node:
            for b in edges_at_node:
                if a != b:
                    adj[a].append(b)
    # shared endpoints can repeat a neighbor (multi-shared never happens for
    # simple graphs, but dedupe keeps BFS costs tight)
    return [sorted(set(nbrs)) for nbrs in adj]


def simplex_adjacency_lists(complex: SimplicialComplex, k: int) -> list[list[int]]:
    if k == 0:
        return node_adjacency_lists(complex)
    if k == 1:
        return edge_adjacency_lists(complex)
    raise TopologyError(f"unsupported simplex dimension {k}")


def hop_distances_from(complex: SimplicialComplex, k: int, source: int) -> np.ndarray:
    """BFS distances from one k-simplex to all others; inf when unreachable."""
    adj = simplex_adjacency_lists(complex, k)
    n = len(adj)
    if not (0 <= source < n):
        raise TopologyError(f"source index {source} out of range for {n} {k}-simplices")
    dist = np.full(n, np.inf)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if np.isinf(dist[v]):
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def edge_hop_distance(complex: SimplicialComplex, e1: int, e2: int) -> float:
    """Minimum number of hops between two edges in the line graph.

    0 for the same edge, 1 for edges sharing a node, inf across
    disconnected components.
    """
    for e in (e1, e2):
        if not (0 <= e < complex.n_edges):
            raise TopologyError(f"edge index {e} out of range")
    if e1 == e2:
        return 0
    return float(hop_distances_from(complex, 1, e1)[e2])


def load_connectivity(path) -> np.ndarray:
    """Read a connectivity matrix from CSV (n rows of n reals) or JSON
    {"n": int, "matrix": [[...]]}."""
    text = open(path).read()
    stripped = text.lstrip()
    try:
        if stripped.startswith("{"):
            doc = json.loads(text)
            m = np.asarray(doc["matrix"], dtype=np.float64)
            if m.shape != (int(doc["n"]), int(doc["n"])):
                raise InputFormatError(
                    f"JSON matrix shape {m.shape} disagrees with n={doc['n']}"
                )
        else:
            m = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except InputFormatError:
        raise
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot parse connectivity file {path}: {exc}") from exc
    return m
