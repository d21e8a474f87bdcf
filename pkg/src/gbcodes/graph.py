"""Tanner graphs, exact girth, girth predicates, and decoding graphs.

The girth predicates evaluate autocorrelation conditions on the two
defining polynomials: checks 0 and i share a data qubit exactly when a
(or b) has two set coefficients at offset i.  A 4-cycle needs two
shared qubits between one check pair; a 6-cycle needs three distinct
checks (offsets i, j, i+j all nonzero) with one shared qubit per pair,
the three witnesses pairwise distinct.  Both predicates are
cross-validated against BFS girth in the tests; no GB code with both
weights >= 2 exceeds girth 8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .code import GBCode
from .errors import MatchingStructureError
from .poly import CyclicPoly

__all__ = [
    "TannerGraph",
    "tanner",
    "girth",
    "girth4_predicate",
    "girth6_predicate",
    "DecodingGraph",
    "decoding_graph",
    "to_dot",
]


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite check/qubit adjacency; no parallel edges."""

    check_count: int
    qubit_count: int
    adjacency: tuple[tuple[int, ...], ...]  # per check, sorted qubit lists

    def qubit_adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.qubit_count)]
        for c, qs in enumerate(self.adjacency):
            for q in qs:
                adj[q].append(c)
        return adj


def tanner(h: np.ndarray) -> TannerGraph:
    """Tanner graph of a binary check matrix: check i adjacent to qubit j
    iff h[i, j] = 1."""
    h = np.asarray(h) & 1
    rows, cols = h.shape
    adjacency = tuple(tuple(int(j) for j in np.flatnonzero(h[i]))
                      for i in range(rows))
    return TannerGraph(check_count=rows, qubit_count=cols, adjacency=adjacency)


def girth(g: TannerGraph) -> int | None:
    """Length of the shortest cycle via BFS from every vertex with
    parent-edge exclusion; None when the graph is acyclic."""
    nv = g.check_count + g.qubit_count
    adj: list[list[int]] = [[] for _ in range(nv)]
    for c, qs in enumerate(g.adjacency):
        for q in qs:
            adj[c].append(g.check_count + q)
            adj[g.check_count + q].append(c)
    best = math.inf
    dist = [-1] * nv
    parent = [-1] * nv
    for s in range(nv):
        for i in range(nv):
            dist[i] = -1
        dist[s] = 0
        parent[s] = -1
        queue = [s]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if 2 * dist[u] >= best - 1:
                break
            du = dist[u]
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and parent[w] != u:
                    cycle = du + dist[w] + 1
                    if cycle < best:
                        best = cycle
    return None if best is math.inf else int(best)


def _autocorr_hits(p: CyclicPoly, offset: int) -> list[int]:
    """Indices j with p_j = p_(j+offset) = 1 (all mod n)."""
    n = p.n
    mask = p.mask
    rot = ((mask >> offset) | (mask << (n - offset))) & ((1 << n) - 1)
    hits = mask & rot
    return [j for j in range(n) if (hits >> j) & 1]


def girth4_predicate(a: CyclicPoly, b: CyclicPoly) -> bool:
    """True iff the Tanner graph of the GB code of (a, b) has a 4-cycle:
    some check offset i != 0 at which a or b autocorrelates twice, or
    both autocorrelate at least once."""
    n = a.n
    for i in range(1, n):
        ca = len(_autocorr_hits(a, i))
        cb = len(_autocorr_hits(b, i))
        if ca >= 2 or cb >= 2 or (ca >= 1 and cb >= 1):
            return True
    return False


def girth6_predicate(a: CyclicPoly, b: CyclicPoly) -> bool:
    """True iff the Tanner graph contains a 6-cycle: three distinct checks
    at offsets (i, j, i+j), one shared data qubit per adjacent pair, the
    three qubits distinct.  Meaningful as "girth equals 6" only when
    girth4_predicate is false."""
    n = a.n

    def witnesses(offset: int) -> list[tuple[int, int]]:
        # (block, qubit index) of every data qubit adjacent to checks at
        # distance `offset`; the qubit shared by checks t and t+offset is
        # hit j+offset shifted by t.
        out = [(0, j) for j in _autocorr_hits(a, offset)]
        out += [(1, j) for j in _autocorr_hits(b, offset)]
        return out

    for i in range(1, n):
        wi = witnesses(i)
        if not wi:
            continue
        for j in range(1, n):
            if j == (n - i) % n:
                continue  # third check would coincide with the first
            wj = witnesses(j)
            if not wj:
                continue
            wij = witnesses((i + j) % n)
            if not wij:
                continue
            # Shared qubits: between checks 0 and i from wi (shift 0),
            # between i and i+j from wj (shift i), between 0 and i+j
            # from wij (shift 0).
            for bl1, q1 in wi:
                v1 = (bl1, (q1 + i) % n)
                for bl2, q2 in wj:
                    v2 = (bl2, (q2 + i + j) % n)
                    if v2 == v1:
                        continue
                    for bl3, q3 in wij:
                        v3 = (bl3, (q3 + i + j) % n)
                        if v3 != v1 and v3 != v2:
                            return True
    return False


# ---------------------------------------------------------------------------
# Decoding graphs for matching decoders

@dataclass(frozen=True)
class DecodingGraphEdge:
    u: int
    v: int  # may be the boundary node index
    weight: float
    qubit: int
    alternatives: tuple[int, ...] = ()


@dataclass(frozen=True)
class DecodingGraph:
    """Matching structure of a check matrix whose columns have weight <= 2.

    One node per check plus an optional boundary node (index
    ``check_count``) that absorbs weight-1 columns.  Parallel edges
    between the same node pair are collapsed to the lightest, the rest
    recorded as alternatives (lowest qubit index wins ties).
    """

    check_count: int
    has_boundary: bool
    edges: tuple[DecodingGraphEdge, ...]
    merged: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def node_count(self) -> int:
        return self.check_count + (1 if self.has_boundary else 0)

    @property
    def boundary(self) -> int | None:
        return self.check_count if self.has_boundary else None


def decoding_graph(h: np.ndarray, priors) -> DecodingGraph:
    """Build the decoding graph of h with log-likelihood edge weights
    ln((1-p)/p); raises MatchingStructureError on any column of weight
    greater than 2.  Zero-weight columns cannot trigger a check and get
    no edge."""
    h = np.asarray(h) & 1
    rows, cols = h.shape
    p = np.broadcast_to(np.asarray(priors, dtype=float), (cols,))
    col_weights = h.sum(axis=0)
    if (col_weights > 2).any():
        bad = int(np.argmax(col_weights > 2))
        raise MatchingStructureError(f"column {bad} has weight {col_weights[bad]}")
    has_boundary = bool((col_weights == 1).any())
    boundary = rows
    raw: dict[tuple[int, int], list[tuple[float, int]]] = {}
    for j in range(cols):
        checks = np.flatnonzero(h[:, j])
        if len(checks) == 0:
            continue
        if len(checks) == 1:
            pair = (int(checks[0]), boundary)
        else:
            pair = (int(checks[0]), int(checks[1]))
        w = math.log((1.0 - p[j]) / p[j])
        raw.setdefault(pair, []).append((w, j))
    edges = []
    for pair in sorted(raw):
        group = sorted(raw[pair], key=lambda t: (t[0], t[1]))
        w, q = group[0]
        edges.append(DecodingGraphEdge(
            u=pair[0], v=pair[1], weight=w, qubit=q,
            alternatives=tuple(j for _, j in group[1:])))
    return DecodingGraph(check_count=rows, has_boundary=has_boundary,
                         edges=tuple(edges))


def to_dot(g: TannerGraph, name: str = "tanner") -> str:
    """DOT rendering with box check nodes and circle qubit nodes."""
    lines = [f"graph {name} {{"]
    for c in range(g.check_count):
        lines.append(f'  c{c} [shape=box, label="c{c}"];')
    for q in range(g.qubit_count):
        lines.append(f'  q{q} [shape=circle, label="q{q}"];')
    for c, qs in enumerate(g.adjacency):
        for q in qs:
            lines.append(f"  c{c} -- q{q};")
    lines.append("}")
    return "\n".join(lines) + "\n"
