"""(3,6)-sparsity certification.

A graph is (3,6)-sparse when every subgraph on at least three vertices
has at most ``3|V'| - 6`` edges.  :func:`find_violation` decides this
exactly with minimum cuts and returns a witness vertex set when it
fails; :func:`brute_force_sparse` does the same by scanning every vertex
subset and is only meant as an independent check on small graphs.

For a forced edge ``uv`` we maximise ``N*|E(S)| - (3N - 1)*|S|`` over
vertex sets ``S`` containing ``u`` and ``v`` (``N = |V| + 1``).  The
``+|S|`` tie-break makes a violating set of size >= 3 strictly beat the
pair ``{u, v}`` itself, whose unweighted score is -5.  The maximisation
is a max-weight closure, solved as a min cut in the network
``source -> edge node (N)``, ``edge node -> endpoints (inf)``,
``vertex -> sink (3N - 1)``, ``source -> u, v (inf)``.

Three reductions keep the networks small.  First, vertices of degree at
most three are peeled from the whole graph: a violating set has at least
five vertices, and dropping such a vertex from it leaves a violating set.
Next, edges are processed in a fixed order and, once edge ``e_i`` has
been checked, it is dropped from the later networks: any violating set
containing it was already found, and dropping edges only undercounts, so
no false witness can appear.  Finally, inside each network the vertices
other than ``u`` and ``v`` with at most three remaining edges are peeled
by the same argument.  All networks for one graph are solved together as
a disjoint union in a single call to
:func:`scipy.sparse.csgraph.maximum_flow`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import TooLarge

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class BlockingSubgraph:
    vertex_set: frozenset
    edge_count: int

    @property
    def excess(self) -> int:
        return self.edge_count - (3 * len(self.vertex_set) - 6)

    def to_dict(self) -> dict:
        return {"vertices": sorted(self.vertex_set), "edges": self.edge_count, "excess": self.excess}


def _vertices_edges(g):
    if hasattr(g, "vertices") and hasattr(g, "edges"):
        vs = list(g.vertices)
        es = [tuple(sorted(e)) for e in g.edges]
    else:
        vs, es = g
        vs = list(vs)
        es = [tuple(sorted(map(str, e))) for e in es]
    return vs, sorted(set(es))


def freedom_number(g) -> int:
    vs, es = _vertices_edges(g)
    return 3 * len(vs) - len(es)


def induced_edge_count(g, subset) -> int:
    s = set(subset)
    _, es = _vertices_edges(g)
    return sum(1 for a, b in es if a in s and b in s)


def _peel(n_vertices, edge_idx, forced):
    """Drop edges at vertices (not forced) of degree <= 3 until none remain."""
    deg = [0] * n_vertices
    inc = [[] for _ in range(n_vertices)]
    for k, (a, b) in enumerate(edge_idx):
        deg[a] += 1
        deg[b] += 1
        inc[a].append(k)
        inc[b].append(k)
    alive = [True] * len(edge_idx)
    gone = [False] * n_vertices
    stack = [v for v in range(n_vertices) if v not in forced and deg[v] <= 3]
    while stack:
        v = stack.pop()
        if gone[v]:
            continue
        gone[v] = True
        for k in inc[v]:
            if alive[k]:
                alive[k] = False
                a, b = edge_idx[k]
                w = b if a == v else a
                deg[w] -= 1
                deg[v] -= 1
                if not gone[w] and w not in forced and deg[w] <= 3:
                    stack.append(w)
    return [edge_idx[k] for k in range(len(edge_idx)) if alive[k]]


def find_violation(g) -> BlockingSubgraph | None:
    """Return ``None`` if ``g`` is (3,6)-sparse, else a violating vertex set.

    Deterministic: the witness comes from the first edge, in sorted
    order, that lies in a violating set of the reduced network.
    """
    vs, es = _vertices_edges(g)
    n = len(vs)
    if n < 3 or not es:
        return None
    index = {v: i for i, v in enumerate(vs)}
    # no forced vertices yet: a violating set never needs a vertex of degree <= 3
    eidx = _peel(n, [(index[a], index[b]) for a, b in es], set())
    if not eidx:
        return None
    N = n + 1
    big = N * len(es) + 1

    blocks = []  # (forced edge position, local edge list)
    for i, (u, v) in enumerate(eidx):
        local = _peel(n, eidx[i:], {u, v})
        if len(local) <= 1:
            continue
        blocks.append((i, local))
    if not blocks:
        return None

    rows, cols, caps = [], [], []
    SRC, SNK = 0, 1
    offset = 2
    layout = []
    for i, local in blocks:
        verts = sorted({x for e in local for x in e})
        vpos = {x: offset + len(local) + j for j, x in enumerate(verts)}
        for k, (a, b) in enumerate(local):
            node = offset + k
            rows += [SRC, node, node]
            cols += [node, vpos[a], vpos[b]]
            caps += [N, big, big]
        for x in verts:
            rows.append(vpos[x])
            cols.append(SNK)
            caps.append(3 * N - 1)
        u, v = eidx[i]
        rows += [SRC, SRC]
        cols += [vpos[u], vpos[v]]
        caps += [big, big]
        layout.append((i, local, verts, vpos, offset))
        offset += len(local) + len(verts)

    cap = csr_matrix(
        (np.asarray(caps, dtype=np.int32), (np.asarray(rows), np.asarray(cols))), shape=(offset, offset)
    )
    res = maximum_flow(cap, SRC, SNK)
    flow = res.flow.tocsr()
    src_row = flow.getrow(SRC).toarray().ravel()

    threshold = -5 * N + 2
    for i, local, verts, vpos, off in layout:
        end = off + len(local) + len(verts)
        block_flow = int(src_row[off:end].sum())
        value = N * len(local) - block_flow
        if value > threshold:
            side = _source_side(cap, flow, SRC, off, end)
            members = frozenset(vs[x] for x in verts if vpos[x] in side)
            w = BlockingSubgraph(members, induced_edge_count((vs, es), members))
            assert len(w.vertex_set) >= 3 and w.excess > 0, w
            return w
    return None


def _source_side(cap, flow, src, lo, hi) -> set:
    """Nodes in [lo, hi) reachable from ``src`` in the residual network."""
    cap = cap.tolil()
    fl = flow.tolil()
    resid = {}

    def add(a, b, r):
        if r > 0:
            resid.setdefault(a, []).append(b)

    for a in [src] + list(range(lo, hi)):
        for b, c in zip(cap.rows[a], cap.data[a]):
            if b == src or lo <= b < hi:
                add(a, b, c - fl[a, b])
        for b, f in zip(fl.rows[a], fl.data[a]):
            if f < 0 and (b == src or lo <= b < hi):
                add(a, b, -f)
    seen, stack = {src}, [src]
    while stack:
        a = stack.pop()
        for b in resid.get(a, ()):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return {x for x in seen if lo <= x < hi}


def is_sparse(g) -> bool:
    return find_violation(g) is None


blocking_subgraph = find_violation


def is_tight(g) -> bool:
    return freedom_number(g) == 6 and find_violation(g) is None


def brute_force_sparse(g) -> BlockingSubgraph | None:
    """Exhaustive oracle: scan all vertex subsets of size >= 3."""
    vs, es = _vertices_edges(g)
    n = len(vs)
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {n}")
    index = {v: i for i, v in enumerate(vs)}
    masks = [(1 << index[a]) | (1 << index[b]) for a, b in es]
    best = None
    for mask in range(1 << n):
        size = bin(mask).count("1")
        if size < 3:
            continue
        m = sum(1 for em in masks if em & mask == em)
        if m > 3 * size - 6:
            exc = m - 3 * size + 6
            if best is None or exc > best[0]:
                best = (exc, mask, m)
    if best is None:
        return None
    _, mask, m = best
    return BlockingSubgraph(frozenset(vs[i] for i in range(n) if mask >> i & 1), m)
