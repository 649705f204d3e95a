"""Graph isomorphism and canonical labelling for small graphs.

Both routines use colour refinement (iterated degree refinement) and
backtracking over individualised vertices.  The canonical form keeps the
lexicographically least adjacency string over all leaves of the search
tree, skipping children that an already discovered automorphism maps
onto an explored sibling.
"""
from __future__ import annotations

from collections import Counter

from .errors import TooLarge

CANONICAL_LIMIT = 16


def _as_adjacency(g) -> tuple[list[str], list[set[int]]]:
    if hasattr(g, "adjacency"):
        vs = list(g.vertices)
        idx = {v: i for i, v in enumerate(vs)}
        return vs, [{idx[w] for w in g.adjacency[v]} for v in vs]
    vs, es = g
    vs = sorted(map(str, vs))
    idx = {v: i for i, v in enumerate(vs)}
    adj = [set() for _ in vs]
    for a, b in es:
        a, b = idx[str(a)], idx[str(b)]
        adj[a].add(b)
        adj[b].add(a)
    return vs, adj


def refine(adj: list[set[int]], colours: list[int]) -> list[int]:
    """Stable colouring; new colour ids depend only on the old ones."""
    cols = list(colours)
    n_classes = len(set(cols))
    while True:
        sigs = [(cols[v], tuple(sorted(cols[w] for w in adj[v]))) for v in range(len(adj))]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        k = len(ranking)
        cols = new
        if k == n_classes:
            return cols
        n_classes = k


def _individualise(cols: list[int], v: int) -> list[int]:
    return [2 * c + (0 if u == v else 1) for u, c in enumerate(cols)]


def _target_cell(cols: list[int]) -> list[int] | None:
    cells = {}
    for v, c in enumerate(cols):
        cells.setdefault(c, []).append(v)
    multi = [(len(m), c, m) for c, m in cells.items() if len(m) > 1]
    if not multi:
        return None
    return min(multi)[2]


def _certificate(adj, cols) -> tuple[tuple, list[int]]:
    order = sorted(range(len(cols)), key=lambda v: cols[v])
    pos = {v: i for i, v in enumerate(order)}
    cert = tuple(sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a in range(len(adj)) for b in adj[a] if a < b))
    return cert, order


def canonical_labelling(g):
    """Return ``(certificate, order)``: ``order[i]`` is the vertex placed at position i."""
    vs, adj = _as_adjacency(g)
    n = len(vs)
    if n > CANONICAL_LIMIT:
        raise TooLarge(f"canonical form limited to {CANONICAL_LIMIT} vertices, got {n}")
    best = [None, None]
    autos: list[list[int]] = []

    def orbits(cell, prefix):
        stab = [a for a in autos if all(a[p] == p for p in prefix)]
        rep = {v: v for v in cell}

        def find(x):
            while rep[x] != x:
                x = rep[x]
            return x

        for a in stab:
            for v in cell:
                w = a[v]
                if w in rep:
                    rv, rw = find(v), find(w)
                    if rv != rw:
                        rep[max(rv, rw)] = min(rv, rw)
        return {v: find(v) for v in cell}

    def search(cols, prefix):
        cell = _target_cell(cols)
        if cell is None:
            cert, order = _certificate(adj, cols)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            elif cert == best[0]:
                # best[1][i] and order[i] occupy the same position: an automorphism
                perm = [0] * n
                for x, y in zip(best[1], order):
                    perm[x] = y
                if perm != list(range(n)):
                    autos.append(perm)
            return
        done = []
        for v in cell:
            if done:
                orb = orbits(cell, prefix)
                if any(orb[v] == orb[d] for d in done):
                    continue
            search(refine(adj, _individualise(cols, v)), prefix + [v])
            done.append(v)

    search(refine(adj, [0] * n), [])
    cert, order = best
    return cert, [vs[i] for i in order]


def canonical_form(g) -> str:
    """A string equal for two graphs exactly when they are isomorphic."""
    cert, order = canonical_labelling(g)
    return f"{len(order)}:" + ",".join(f"{a}-{b}" for a, b in cert)


def is_isomorphic(g, h) -> dict | None:
    """Return an adjacency-preserving bijection ``g -> h`` or ``None``."""
    gv, gadj = _as_adjacency(g)
    hv, hadj = _as_adjacency(h)
    n = len(gv)
    if n != len(hv) or sum(map(len, gadj)) != sum(map(len, hadj)):
        return None
    adj = gadj + [{w + n for w in s} for s in hadj]

    def split_ok(cols):
        return Counter(cols[:n]) == Counter(cols[n:])

    def search(cols):
        if not split_ok(cols):
            return None
        cells = {}
        for v in range(n):
            cells.setdefault(cols[v], []).append(v)
        multi = [(len(m), c) for c, m in cells.items() if len(m) > 1]
        if not multi:
            where = {cols[v]: v for v in range(n, 2 * n)}
            mapping = {v: where[cols[v]] - n for v in range(n)}
            for a in range(n):
                if {mapping[b] for b in gadj[a]} != hadj[mapping[a]]:
                    return None
            return mapping
        _, c = min(multi)
        v = cells[c][0]
        for w in range(n, 2 * n):
            if cols[w] != c:
                continue
            new = [2 * x + (0 if u in (v, w) else 1) for u, x in enumerate(cols)]
            found = search(refine(adj, new))
            if found is not None:
                return found
        return None

    m = search(refine(adj, [0] * (2 * n)))
    if m is None:
        return None
    return {gv[a]: hv[b] for a, b in m.items()}
