"""Syndrome decoders: sum-product BP, BP-OSD, and exact MWPM.

The belief propagation core is vectorized across a batch of syndromes
(the Monte Carlo driver feeds thousands of trials at once); check
updates use padded prefix/suffix tanh products so leave-one-out values
never divide by zero.  OSD post-processing re-solves the syndrome on
the most-error-likely information set, optionally sweeping low-weight
assignments of the least reliable solved positions.  The matching
decoder pairs flagged checks on a precomputed shortest-path metric and
delegates the blossom search to networkx's exact maximum-weight
matching.

Decoder instances hold mutable working state and are single-use-at-a-
time; construction is cheap, so concurrent workers each build their
own.  Identical inputs and configuration always produce identical
corrections (ties broken by index order).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .code import GBCode
from .errors import UnmatchableSyndromeError
from .graph import DecodingGraph, decoding_graph

__all__ = [
    "BPConfig",
    "Correction",
    "bp_decode",
    "bp_decode_batch",
    "osd_postprocess",
    "bposd_decode",
    "MatchingDecoder",
    "mwpm_decode",
    "decode_css",
    "CSSDecoder",
    "parse_decoder_spec",
]


@dataclass(frozen=True)
class BPConfig:
    max_iterations: int = 100
    schedule: str = "flooding"  # or "serial"
    damping: float = 0.0
    clip: float = 30.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.schedule not in ("flooding", "serial"):
            raise ValueError(f"unknown schedule {self.schedule!r}")
        if not 0.0 <= self.damping < 1.0:
            raise ValueError("damping must lie in [0, 1)")


@dataclass(frozen=True)
class Correction:
    support: tuple[int, ...]
    converged: bool
    method: str

    def to_vector(self, length: int) -> np.ndarray:
        v = np.zeros(length, dtype=np.uint8)
        for j in self.support:
            v[j] = 1
        return v


def _llr(p: float) -> float:
    p = min(max(p, 1e-12), 1 - 1e-12)
    return math.log((1 - p) / p)


class _BPGraph:
    """Edge structure of a check matrix, padded per check for vector ops."""

    def __init__(self, h: np.ndarray):
        h = (np.asarray(h) & 1).astype(np.uint8)
        self.h = h
        m, n = h.shape
        ci, vi = np.nonzero(h)
        self.ci = ci
        self.vi = vi
        self.n_edges = len(ci)
        self.n_checks = m
        self.n_vars = n
        deg = h.sum(axis=1).astype(int)
        dmax = int(deg.max()) if m else 0
        # Edge ids per check, padded with the dummy edge index n_edges.
        pad = np.full((m, dmax), self.n_edges, dtype=np.int64)
        pos = np.zeros(m, dtype=int)
        for e, c in enumerate(ci):
            pad[c, pos[c]] = e
            pos[c] += 1
        self.check_edges = pad
        self.check_deg = deg
        # Incidence for summing check->var messages into variables.
        inc = np.zeros((self.n_edges, n), dtype=np.float64)
        inc[np.arange(self.n_edges), vi] = 1.0
        self.inc = inc


def _check_update(graph: _BPGraph, mv2c: np.ndarray, sgn: np.ndarray,
                  clip: float) -> np.ndarray:
    """Sum-product check-to-variable messages for a batch (B, E)."""
    b = mv2c.shape[0]
    t = np.tanh(np.clip(mv2c, -clip, clip) / 2.0)
    t_ext = np.concatenate([t, np.ones((b, 1))], axis=1)
    gathered = t_ext[:, graph.check_edges]            # (B, m, dmax)
    prefix = np.ones_like(gathered)
    np.cumprod(gathered[:, :, :-1], axis=2, out=prefix[:, :, 1:])
    suffix = np.ones_like(gathered)
    np.cumprod(gathered[:, :, :0:-1], axis=2, out=suffix[:, :, -2::-1])
    loo = prefix * suffix * sgn[:, :, None]           # leave-one-out
    loo = np.clip(loo, -1 + 1e-12, 1 - 1e-12)
    msgs = 2.0 * np.arctanh(loo)
    mc2v = np.zeros((b, graph.n_edges + 1))
    np.put_along_axis(
        mc2v, graph.check_edges.reshape(1, -1).repeat(b, axis=0),
        msgs.reshape(b, -1), axis=1)
    return np.clip(mc2v[:, :-1], -clip, clip)


def bp_decode_batch(h: np.ndarray, syndromes: np.ndarray, priors,
                    cfg: BPConfig = BPConfig()):
    """Sum-product BP on a batch of syndromes.

    Returns (soft, hard, converged): posterior LLRs (B, n), hard
    decisions (B, n) uint8, and per-trial convergence flags.  A trial
    converges when its hard decision reproduces the syndrome; converged
    trials stop updating (their recorded outputs are from the first
    convergent iteration).
    """
    graph = h if isinstance(h, _BPGraph) else _BPGraph(h)
    syndromes = (np.atleast_2d(np.asarray(syndromes)) & 1).astype(np.uint8)
    b = syndromes.shape[0]
    n = graph.n_vars
    prior = np.broadcast_to(np.asarray(priors, dtype=float), (n,))
    prior_llr = np.array([_llr(p) for p in prior])

    soft_out = np.tile(prior_llr, (b, 1))
    hard_out = (soft_out < 0).astype(np.uint8)
    conv_out = np.zeros(b, dtype=bool)

    # Zero-syndrome trials converge immediately at the prior.
    active = np.flatnonzero(syndromes.any(axis=1))
    conv_out[syndromes.sum(axis=1) == 0] = True
    if len(active) == 0:
        return soft_out, hard_out, conv_out

    synd = syndromes[active]
    mv2c = np.tile(prior_llr[graph.vi], (len(active), 1))
    sgn = 1.0 - 2.0 * synd.astype(float)
    mc2v = np.zeros_like(mv2c)
    idx = active.copy()
    post = np.tile(prior_llr, (len(active), 1))

    def exclusive_loo(t: np.ndarray) -> np.ndarray:
        """Leave-one-out products along the last axis without division."""
        pre = np.ones_like(t)
        np.cumprod(t[..., :-1], axis=-1, out=pre[..., 1:])
        suf = np.ones_like(t)
        np.cumprod(t[..., :0:-1], axis=-1, out=suf[..., -2::-1])
        return pre * suf

    for _ in range(cfg.max_iterations):
        if cfg.schedule == "flooding":
            new_c2v = _check_update(graph, mv2c, sgn, cfg.clip)
            if cfg.damping > 0:
                new_c2v = (1 - cfg.damping) * new_c2v + cfg.damping * mc2v
            mc2v = new_c2v
            post = prior_llr[None, :] + mc2v @ graph.inc
            mv2c = np.clip(post[:, graph.vi] - mc2v, -cfg.clip, cfg.clip)
        else:  # serial: sweep checks in order, refreshing messages in place
            post = prior_llr[None, :] + mc2v @ graph.inc
            for c in range(graph.n_checks):
                edges = graph.check_edges[c, : graph.check_deg[c]]
                cols = graph.vi[edges]
                mv = np.clip(post[:, cols] - mc2v[:, edges],
                             -cfg.clip, cfg.clip)
                t = np.tanh(mv / 2.0)
                loo = np.clip(exclusive_loo(t) * sgn[:, [c]],
                              -1 + 1e-12, 1 - 1e-12)
                upd = np.clip(2.0 * np.arctanh(loo), -cfg.clip, cfg.clip)
                if cfg.damping > 0:
                    upd = (1 - cfg.damping) * upd + cfg.damping * mc2v[:, edges]
                post[:, cols] += upd - mc2v[:, edges]
                mc2v[:, edges] = upd
            mv2c = np.clip(post[:, graph.vi] - mc2v, -cfg.clip, cfg.clip)

        hard = (post < 0).astype(np.uint8)
        check = (hard.astype(np.int64) @ graph.h.T.astype(np.int64)) % 2
        done = (check == synd).all(axis=1)
        if done.any():
            soft_out[idx[done]] = post[done]
            hard_out[idx[done]] = hard[done]
            conv_out[idx[done]] = True
            keep = ~done
            if not keep.any():
                return soft_out, hard_out, conv_out
            idx, synd, sgn = idx[keep], synd[keep], sgn[keep]
            mv2c, mc2v, post = mv2c[keep], mc2v[keep], post[keep]

    soft_out[idx] = post
    hard_out[idx] = (post < 0).astype(np.uint8)
    return soft_out, hard_out, conv_out


def bp_decode(h: np.ndarray, syndrome, priors, cfg: BPConfig = BPConfig()):
    """Single-syndrome BP; returns (soft, hard, converged)."""
    soft, hard, conv = bp_decode_batch(h, np.asarray(syndrome)[None, :],
                                       priors, cfg)
    return soft[0], hard[0], bool(conv[0])


def osd_postprocess(h: np.ndarray, syndrome, soft, order: int = 0) -> Correction:
    """Ordered-statistics post-processing of BP soft output.

    Columns are ranked most-error-likely first (ascending posterior LLR,
    stable).  Pivot columns are selected greedily in that order to form
    a full-rank system; OSD-0 solves with all non-pivot positions zero,
    and order > 0 additionally sweeps every assignment of the ``order``
    most suspicious non-pivot positions (capped at 2^15 patterns),
    keeping the lowest log-likelihood-cost syndrome-satisfying
    correction.  Rank-deficient rows are consistent by construction when
    the syndrome comes from an actual error pattern.
    """
    h = (np.asarray(h) & 1).astype(np.uint8)
    m, n = h.shape
    soft = np.asarray(soft, dtype=float)
    syndrome = (np.asarray(syndrome) & 1).astype(np.uint8)
    rank_order = np.argsort(soft, kind="stable")
    hp = h[:, rank_order].copy()
    rhs = syndrome.copy()
    pivots: list[int] = []
    r = 0
    for col in range(n):
        rows_with = np.flatnonzero(hp[r:, col])
        if len(rows_with) == 0:
            continue
        pr = int(rows_with[0]) + r
        if pr != r:
            hp[[r, pr]] = hp[[pr, r]]
            rhs[[r, pr]] = rhs[[pr, r]]
        others = np.flatnonzero(hp[:, col])
        others = others[others != r]
        hp[others] ^= hp[r]
        rhs[others] ^= rhs[r]
        pivots.append(col)
        r += 1
        if r == m:
            break
    rank = r
    if rhs[rank:].any():
        raise ValueError("inconsistent syndrome")
    pivot_arr = np.array(pivots, dtype=int)
    free = np.array([c for c in range(n) if c not in set(pivots)], dtype=int)
    costs = soft[rank_order]

    lam = min(order, len(free), 15)
    best_key = None
    best_e = None
    for pattern in range(1 << lam):
        e = np.zeros(n, dtype=np.uint8)
        acc = rhs[:rank].copy()
        for t in range(lam):
            if (pattern >> t) & 1:
                e[free[t]] = 1
                acc ^= hp[:rank, free[t]]
        e[pivot_arr] = acc
        supp = np.flatnonzero(e)
        key = (float(costs[supp].sum()), len(supp), tuple(supp.tolist()))
        if best_key is None or key < best_key:
            best_key = key
            best_e = e
    out = np.zeros(n, dtype=np.uint8)
    out[rank_order] = best_e
    return Correction(support=tuple(int(j) for j in np.flatnonzero(out)),
                      converged=True, method=f"osd:{order}")


def bposd_decode(h: np.ndarray, syndrome, priors,
                 cfg: BPConfig = BPConfig(), order: int = 0) -> Correction:
    """BP followed by OSD when BP does not converge."""
    soft, hard, conv = bp_decode(h, syndrome, priors, cfg)
    if conv:
        return Correction(support=tuple(int(j) for j in np.flatnonzero(hard)),
                          converged=True, method=f"bp-osd:{order}")
    corr = osd_postprocess(h, syndrome, soft, order)
    return Correction(support=corr.support, converged=False,
                      method=f"bp-osd:{order}")


# ---------------------------------------------------------------------------
# Minimum-weight perfect matching

class MatchingDecoder:
    """MWPM decoder over a decoding graph.

    All-pairs shortest paths among check nodes (and the boundary) are
    precomputed with Dijkstra; each decode builds the complete graph on
    flagged checks and finds an exact minimum-weight perfect matching,
    then expands matched pairs back to qubit sets along the stored
    paths.  Edge weights must be nonnegative.
    """

    def __init__(self, graph: DecodingGraph):
        self.graph = graph
        nodes = graph.node_count
        adj: list[list[tuple[int, float, int]]] = [[] for _ in range(nodes)]
        for eid, e in enumerate(graph.edges):
            if e.weight < 0:
                raise ValueError("negative edge weight; priors must be <= 1/2")
            adj[e.u].append((e.v, e.weight, eid))
            adj[e.v].append((e.u, e.weight, eid))
        for lst in adj:
            lst.sort()
        self._dist = np.full((nodes, nodes), np.inf)
        self._pred: list[list[tuple[int, int] | None]] = [
            [None] * nodes for _ in range(nodes)]
        for src in range(nodes):
            dist = self._dist[src]
            dist[src] = 0.0
            pred = self._pred[src]
            heap = [(0.0, src)]
            seen = [False] * nodes
            while heap:
                d, u = heapq.heappop(heap)
                if seen[u]:
                    continue
                seen[u] = True
                for v, w, eid in adj[u]:
                    nd = d + w
                    if nd < dist[v]:
                        dist[v] = nd
                        pred[v] = (u, eid)
                        heapq.heappush(heap, (nd, v))

    def _path_qubits(self, src: int, dst: int) -> set[int]:
        qubits: set[int] = set()
        node = dst
        pred = self._pred[src]
        while node != src:
            prev, eid = pred[node]
            qubits.add(self.graph.edges[eid].qubit)
            node = prev
        return qubits

    def decode(self, syndrome) -> Correction:
        syndrome = (np.asarray(syndrome) & 1).astype(np.uint8)
        flagged = [int(i) for i in np.flatnonzero(syndrome)]
        if not flagged:
            return Correction(support=(), converged=True, method="mwpm")
        boundary = self.graph.boundary
        g = nx.Graph()
        g.add_nodes_from(flagged)
        for i, u in enumerate(flagged):
            for v in flagged[i + 1:]:
                d = self._dist[u, v]
                if np.isfinite(d):
                    g.add_edge(u, v, weight=-d)
        if boundary is not None:
            # One virtual partner per flagged check; virtual-virtual edges
            # are free so unused partners pair among themselves.
            virt = {u: ("virt", u) for u in flagged}
            for u in flagged:
                d = self._dist[u, boundary]
                if np.isfinite(d):
                    g.add_edge(u, virt[u], weight=-d)
            vs = [virt[u] for u in flagged]
            for i, a in enumerate(vs):
                for b in vs[i + 1:]:
                    g.add_edge(a, b, weight=0.0)
        matching = nx.max_weight_matching(g, maxcardinality=True)
        mate: dict = {}
        for u, v in matching:
            mate[u] = v
            mate[v] = u
        support: set[int] = set()
        for u in flagged:
            if u not in mate:
                raise UnmatchableSyndromeError(
                    f"check {u} cannot be paired (odd component, no boundary)")
            v = mate[u]
            if isinstance(v, tuple):  # matched to its boundary partner
                support ^= self._path_qubits(u, boundary)
            elif isinstance(u, int) and u < v:
                support ^= self._path_qubits(u, v)
        return Correction(support=tuple(sorted(support)), converged=True,
                          method="mwpm")


def mwpm_decode(graph: DecodingGraph, syndrome) -> Correction:
    """One-shot MWPM decode; builds the path cache each call, so hold a
    MatchingDecoder when decoding many syndromes."""
    return MatchingDecoder(graph).decode(syndrome)


# ---------------------------------------------------------------------------
# CSS sector glue

def parse_decoder_spec(spec: str) -> tuple[str, int]:
    """Parse "bp-osd:ORDER" (order optional, default 0) or "mwpm"."""
    if spec == "mwpm":
        return ("mwpm", 0)
    if spec == "bp-osd" or spec.startswith("bp-osd:"):
        order = int(spec.split(":", 1)[1]) if ":" in spec else 0
        if order < 0:
            raise ValueError("osd order must be >= 0")
        return ("bp-osd", order)
    raise ValueError(f"unknown decoder {spec!r}")


@dataclass
class CSSDecoder:
    """Two-sector decoder bound to one code and one physical error rate.

    X errors are corrected from the H_z syndrome and Z errors from the
    H_x syndrome, each sector independently at the depolarizing marginal
    prior 2p/3 (X and Y both flip Z checks; X-Z correlations of Y errors
    are ignored, matching common practice).
    """

    code: GBCode
    spec: str
    p_phys: float
    bp_config: BPConfig = field(default_factory=BPConfig)

    def __post_init__(self):
        self.kind, self.order = parse_decoder_spec(self.spec)
        self.sector_prior = min(max(2.0 * self.p_phys / 3.0, 1e-12), 0.499999)
        if self.kind == "bp-osd":
            self._graph_z = _BPGraph(self.code.hz)  # decodes X errors
            self._graph_x = _BPGraph(self.code.hx)  # decodes Z errors
        else:
            self._match_z = MatchingDecoder(
                decoding_graph(self.code.hz, self.sector_prior))
            self._match_x = MatchingDecoder(
                decoding_graph(self.code.hx, self.sector_prior))

    def decode_batch(self, x_syndromes: np.ndarray, z_syndromes: np.ndarray):
        """Corrections for batches of (H_x, H_z) syndromes; returns
        (x_corrections, z_corrections) as uint8 arrays of shape (B, 2n)."""
        n2 = 2 * self.code.n
        b = x_syndromes.shape[0]
        if self.kind == "bp-osd":
            corr_x = self._sector_bposd(self._graph_z, z_syndromes)
            corr_z = self._sector_bposd(self._graph_x, x_syndromes)
        else:
            corr_x = np.zeros((b, n2), dtype=np.uint8)
            corr_z = np.zeros((b, n2), dtype=np.uint8)
            for t in range(b):
                for j in self._match_z.decode(z_syndromes[t]).support:
                    corr_x[t, j] = 1
                for j in self._match_x.decode(x_syndromes[t]).support:
                    corr_z[t, j] = 1
        return corr_x, corr_z

    def _sector_bposd(self, graph: _BPGraph, syndromes: np.ndarray):
        soft, hard, conv = bp_decode_batch(graph, syndromes,
                                           self.sector_prior, self.bp_config)
        out = hard.copy()
        for t in np.flatnonzero(~conv):
            corr = osd_postprocess(graph.h, syndromes[t], soft[t], self.order)
            out[t] = corr.to_vector(graph.n_vars)
        return out

    def decode(self, x_syndrome, z_syndrome):
        cx, cz = self.decode_batch(np.asarray(x_syndrome)[None, :],
                                   np.asarray(z_syndrome)[None, :])
        return cx[0], cz[0]


def decode_css(code: GBCode, x_syndrome, z_syndrome, decoder: str = "bp-osd:0",
               p_phys: float = 0.05, bp_config: BPConfig | None = None):
    """Decode one pair of sector syndromes; returns (x_correction,
    z_correction) as uint8 vectors of length 2n."""
    d = CSSDecoder(code, decoder, p_phys,
                   bp_config=bp_config or BPConfig())
    return d.decode(x_syndrome, z_syndrome)
