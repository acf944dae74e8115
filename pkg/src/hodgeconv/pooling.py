"""Topological pooling of k-simplices.

Three steps, all driven by the boundary description of the complex:
greedy pairing of adjacent k-simplices (a deterministic Graclus-style
matching on the local normalized-cut score), coarsening by deleting the
lower-degree member of each pair together with its incident
(k+1)-simplices, and size-2 pooling of signals over the resulting
binary tree.  Singletons are padded with fake siblings that carry no
signal and never absorb weight.

Matching visits simplices in ascending index order by default so plans
are reproducible; pass an rng for the randomized order of the original
multilevel heuristic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .complexes import SimplicialComplex, simplex_adjacency_lists
from .errors import PlanError, ShapeError
from .laplacian import HodgeLaplacian, hodge_laplacian

PairWeights = dict[tuple[int, int], float]


def _canonical_weights(complex: SimplicialComplex, k: int, weights=None) -> PairWeights:
    """Normalize the weight argument to {adjacent pair -> weight}.

    Accepts None (unit weights), a per-edge array when k=0 (the
    adjacency of two nodes is an edge), or a {(a, b): w} mapping.
    """
    adj = simplex_adjacency_lists(complex, k)
    canon: PairWeights = {}
    if weights is None:
        for u, nbrs in enumerate(adj):
            for v in nbrs:
                if u < v:
                    canon[(u, v)] = 1.0
    elif isinstance(weights, dict):
        for u, nbrs in enumerate(adj):
            for v in nbrs:
                if u < v:
                    canon[(u, v)] = float(weights.get((u, v), weights.get((v, u), 1.0)))
    else:
        if k != 0:
            raise PlanError("array weights are per-edge and only defined for k=0")
        arr = np.asarray(weights, dtype=np.float64)
        if arr.shape != (complex.n_edges,):
            raise ShapeError(f"need {complex.n_edges} edge weights, got shape {arr.shape}")
        for pos, (i, j) in enumerate(complex.edges):
            canon[(i, j)] = float(arr[pos])
    if any(w < 0 for w in canon.values()):
        raise PlanError("adjacency weights must be nonnegative")
    return canon


def _weighted_degrees(n: int, weights: PairWeights) -> np.ndarray:
    deg = np.zeros(n)
    for (u, v), w in weights.items():
        deg[u] += w
        deg[v] += w
    return deg


def graclus_match(
    complex: SimplicialComplex,
    k: int,
    weights=None,
    rng: Optional[np.random.Generator] = None,
) -> list[tuple[int, int]]:
    """Greedy maximal matching on the local normalized-cut score.

    Visits unmatched k-simplices (ascending index, or rng-permuted) and
    pairs each with the unmatched neighbor maximizing
    w_uv * (1/d_u + 1/d_v); zero-weight adjacencies never match, so fake
    or isolated simplices stay singletons.
    """
    adj = simplex_adjacency_lists(complex, k)
    n = len(adj)
    w = _canonical_weights(complex, k, weights)
    deg = _weighted_degrees(n, w)
    inv_deg = np.where(deg > 0, 1.0 / np.where(deg > 0, deg, 1.0), 0.0)

    order = np.arange(n) if rng is None else rng.permutation(n)
    matched = np.zeros(n, dtype=bool)
    pairs: list[tuple[int, int]] = []
    for u in order:
        if matched[u]:
            continue
        matched[u] = True
        best, best_score = -1, 0.0
        for v in adj[u]:
            if matched[v]:
                continue
            score = w[(min(u, v), max(u, v))] * (inv_deg[u] + inv_deg[v])
            if score > best_score:
                best, best_score = v, score
        if best >= 0:
            matched[best] = True
            pairs.append((int(u), int(best)))
    return pairs


@dataclass
class PoolingPlan:
    """Everything needed to pool fine signals and convolve on the
    coarse complex afterwards."""

    k: int
    pairs: list[tuple[int, int]]          # (kept, merged) fine indices
    singletons: list[int]
    fake_indices: list[int]               # leaf slots holding a fake sibling
    leaf_order: np.ndarray = field(repr=False)  # 2*coarse_dim slots, -1 = fake
    coarse_complex: SimplicialComplex = None
    coarse_laplacians: dict[int, HodgeLaplacian] = None
    fine_dim: int = 0
    coarse_edge_weights: Optional[PairWeights] = None  # k=0 inheritance

    @property
    def coarse_dim(self) -> int:
        return len(self.leaf_order) // 2

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "pairs": [list(p) for p in self.pairs],
                "singletons": list(self.singletons),
                "fake_indices": list(self.fake_indices),
                "leaf_order": self.leaf_order.tolist(),
                "coarse_complex": json.loads(self.coarse_complex.to_json()),
            }
        )


def _split_pairs(
    complex: SimplicialComplex, k: int, pairs, weights=None
) -> tuple[list[tuple[int, int]], list[int]]:
    """Orient each matched pair as (kept, merged) by the degree rule:
    the lower-degree simplex is merged away; ties merge the higher
    index."""
    n = complex.simplex_count(k)
    deg = _weighted_degrees(n, _canonical_weights(complex, k, weights))
    seen = np.zeros(n, dtype=bool)
    oriented: list[tuple[int, int]] = []
    for (a, b) in pairs:
        if not (0 <= a < n and 0 <= b < n) or a == b:
            raise PlanError(f"pair ({a}, {b}) is not two distinct valid simplices")
        if seen[a] or seen[b]:
            raise PlanError(f"simplex reused across pairs: ({a}, {b})")
        seen[a] = seen[b] = True
        if deg[a] < deg[b]:
            kept, merged = b, a
        elif deg[b] < deg[a]:
            kept, merged = a, b
        else:
            kept, merged = min(a, b), max(a, b)
        oriented.append((int(kept), int(merged)))
    singletons = [int(u) for u in range(n) if not seen[u]]
    return oriented, singletons


def coarsen(
    complex: SimplicialComplex,
    k: int,
    pairs,
    weights=None,
    strict_deletion: bool = False,
) -> tuple[SimplicialComplex, "PoolingPlan"]:
    """Merge matched pairs into the coarse complex and build the plan.

    Within each pair the lower-degree simplex and its incident
    (k+1)-simplices are removed.  For k=0 the removed node's remaining
    edges are reattached to the kept node (dropped when that would
    self-loop or duplicate); strict_deletion=True drops them instead,
    which is the literal merge-by-deletion reading.
    """
    oriented, singletons = _split_pairs(complex, k, pairs, weights)
    merged_away = {m for _, m in oriented}
    partner = {m: kept for kept, m in oriented}
    coarse_edge_weights: Optional[PairWeights] = None

    if k == 0:
        survivors = [v for v in range(complex.n_nodes) if v not in merged_away]
        renum = {old: new for new, old in enumerate(survivors)}
        fine_w = _canonical_weights(complex, 0, weights)
        new_edges: dict[tuple[int, int], float] = {}
        for (i, j) in complex.edges:
            a = partner.get(i, i) if not strict_deletion else i
            b = partner.get(j, j) if not strict_deletion else j
            if strict_deletion and (i in merged_away or j in merged_away):
                continue
            if a == b:
                continue  # intra-pair edge collapses
            key = (renum[min(a, b)], renum[max(a, b)])
            new_edges[key] = new_edges.get(key, 0.0) + fine_w[(i, j)]
        edges = tuple(sorted(new_edges))
        triangles = tuple(
            tuple(renum[v] for v in t)
            for t in complex.triangles
            if not any(v in merged_away for v in t)
        )
        coarse = SimplicialComplex(n_nodes=len(survivors), edges=edges, triangles=triangles)
        coarse_edge_weights = {e: new_edges[e] for e in edges}
        fine_dim = complex.n_nodes
    elif k == 1:
        survivors = [e for e in range(complex.n_edges) if e not in merged_away]
        renum = {old: new for new, old in enumerate(survivors)}
        edges = tuple(complex.edges[e] for e in survivors)
        kept_pairs = set(edges)
        triangles = tuple(
            t
            for t in complex.triangles
            if all(f in kept_pairs for f in (((t[1], t[2])), (t[0], t[2]), (t[0], t[1])))
        )
        coarse = SimplicialComplex(
            n_nodes=complex.n_nodes, edges=edges, triangles=triangles
        )
        fine_dim = complex.n_edges
    else:
        raise PlanError(f"unsupported pooling dimension {k}")

    # coarse simplex c <- ascending (kept | singleton) fine index; for both
    # k this matches the coarse complex's own numbering of survivors
    children = sorted([(kept, merged) for kept, merged in oriented] + [(s, -1) for s in singletons])
    leaf_order = np.fromiter(
        (idx for pair in children for idx in pair), dtype=np.int64, count=2 * len(children)
    )
    fake_slots = [i for i, v in enumerate(leaf_order) if v < 0]

    plan = PoolingPlan(
        k=k,
        pairs=oriented,
        singletons=singletons,
        fake_indices=fake_slots,
        leaf_order=leaf_order,
        coarse_complex=coarse,
        coarse_laplacians={
            0: hodge_laplacian(coarse, 0),
            1: hodge_laplacian(coarse, 1),
        },
        fine_dim=fine_dim,
        coarse_edge_weights=coarse_edge_weights,
    )
    return coarse, plan


def build_pooling_plan(
    complex: SimplicialComplex,
    k: int,
    weights=None,
    strict_deletion: bool = False,
    rng: Optional[np.random.Generator] = None,
) -> PoolingPlan:
    pairs = graclus_match(complex, k, weights=weights, rng=rng)
    _, plan = coarsen(complex, k, pairs, weights=weights, strict_deletion=strict_deletion)
    return plan


def pool_signal(plan: PoolingPlan, f: np.ndarray, mode: str = "avg") -> np.ndarray:
    """Size-2 reduction over the plan's binary tree.

    Pairs reduce by average or elementwise max; singletons pass through
    untouched because their fake sibling is excluded from the reduction.
    """
    if mode not in ("avg", "max"):
        raise ValueError(f"mode must be 'avg' or 'max', got {mode!r}")
    f = np.asarray(f, dtype=np.float64)
    squeeze = f.ndim == 1
    if squeeze:
        f = f[:, None]
    if f.shape[0] != plan.fine_dim:
        raise ShapeError(f"signal dim {f.shape[0]} != fine simplex count {plan.fine_dim}")
    first = plan.leaf_order[0::2]
    second = plan.leaf_order[1::2]
    out = f[first].copy()
    has_sibling = second >= 0
    if has_sibling.any():
        sib = f[second[has_sibling]]
        if mode == "avg":
            out[has_sibling] = (out[has_sibling] + sib) / 2.0
        else:
            out[has_sibling] = np.maximum(out[has_sibling], sib)
    return out[:, 0] if squeeze else out
