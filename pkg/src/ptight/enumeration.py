"""Counting (3,6)-tight graphs on n vertices up to isomorphism.

Instead of scanning every (3n-6)-edge subset of K_n we build the
complements.  For n >= 4 a tight graph has minimum degree >= 3: a vertex
of degree at most 2 could be deleted to leave n-1 >= 3 vertices carrying
at least 3n-8 > 3(n-1)-6 edges.  (For n = 3 the complement is empty and
no pruning happens.)  So its complement has ``C(n,2) - (3n-6)`` edges
and maximum degree <= n-4.  Maximum degree only grows as edges are
added, so the degree bound prunes every intermediate level as well.

Generation is level-wise: every isomorphism class with ``m`` edges is
extended by each non-edge, and the children are deduplicated by
canonical form.  Each final class is complemented and certified with the
min-cut sparsity test.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from pathlib import Path

from .core import Graph
from .errors import TooLarge
from .iso import canonical_labelling
from .sparsity import find_violation

MAX_N = 8
LONG_N = 8


def _canon(n: int, edges) -> tuple:
    """Canonical edge tuple over ``0..n-1``."""
    vs = [str(i) for i in range(n)]
    cert, _ = canonical_labelling((vs, [(str(a), str(b)) for a, b in edges]))
    return cert


def _children(args) -> set:
    n, edges, cap = args
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    present = set(edges)
    out = set()
    for a, b in combinations(range(n), 2):
        if (a, b) in present or deg[a] >= cap or deg[b] >= cap:
            continue
        out.add(_canon(n, edges + ((a, b),)))
    return out


def _certify(args):
    n, comp = args
    missing = set(comp)
    edges = [(a, b) for a, b in combinations(range(n), 2) if (a, b) not in missing]
    g = (list(map(str, range(n))), [(str(a), str(b)) for a, b in edges])
    if find_violation(g) is not None:
        return None
    return _canon(n, edges)


def _map(fn, items, jobs):
    if jobs <= 1 or len(items) < 64:
        return list(map(fn, items))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _check_n(n: int, allow_long: bool) -> None:
    if n < 3:
        raise ValueError("n must be at least 3")
    if n > MAX_N:
        raise TooLarge(f"enumeration is limited to n <= {MAX_N}")
    if n >= LONG_N and not allow_long:
        raise TooLarge(f"n = {n} is a long run; pass allow_long=True (CLI: --long)")


def tight_graphs(n: int, allow_long: bool = False, jobs: int | None = None) -> list[Graph]:
    """One canonically labelled representative per class, sorted by certificate."""
    _check_n(n, allow_long)
    jobs = jobs or os.cpu_count() or 1
    missing = n * (n - 1) // 2 - (3 * n - 6)
    cap = n - 4
    level = {()}
    for _ in range(missing):
        parts = _map(_children, [(n, e, cap) for e in sorted(level)], jobs)
        level = set().union(*parts) if parts else set()
    certs = _map(_certify, [(n, c) for c in sorted(level)], jobs)
    found = sorted({c for c in certs if c is not None})
    vs = [str(i) for i in range(n)]
    return [Graph.from_edges([(str(a), str(b)) for a, b in c], vs) for c in found]


def count_tight_graphs(n: int, emit=None, allow_long: bool = False, jobs: int | None = None) -> int:
    """Number of isomorphism classes; ``emit`` is an optional output directory.

    Each class is written as ``n{n}_{i:04d}.edges`` with one ``u v`` line per edge.
    """
    graphs = tight_graphs(n, allow_long=allow_long, jobs=jobs)
    if emit:
        out = Path(emit)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            lines = [f"{a} {b}" for a, b in sorted(g.edge_list(), key=lambda e: (int(e[0]), int(e[1])))]
            (out / f"n{n}_{i:04d}.edges").write_text("\n".join(lines) + "\n")
    return len(graphs)


def tight_p_graph_members(n: int) -> list[tuple[str, Graph]]:
    """Enumerated classes isomorphic to a catalog member, as ``(name, graph)``."""
    from .reduction import identify_base

    if n > 7:
        raise TooLarge("catalog comparison is limited to n <= 7")
    out = []
    for g in tight_graphs(n):
        name = identify_base(g)
        if name is not None:
            out.append((name, g))
    return out
