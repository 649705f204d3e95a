"""Exact generic rank of 3-dimensional rigidity matrices.

Ranks are exact.  A row-scaled integer copy of the matrix is first
reduced modulo a 31-bit prime with vectorised numpy elimination.  The
rank over a prime field never exceeds the rank over the rationals, so a
modular rank that already meets the trivial upper bound
``min(|E|, 3|V| - 6)`` is the rational rank.  Anything lower is
recomputed with fraction-free (Bareiss) elimination over Python
integers.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from .errors import MissingVertex
from .sparsity import _vertices_edges

PRIME = 2**31 - 1  # Mersenne prime; products of residues fit in int64
WINDOW = 2**20
DEFAULT_TRIALS = 3


def random_placement(vertices, seed: int = 0) -> dict[str, tuple[int, int, int]]:
    rng = random.Random(seed)
    return {v: tuple(rng.randint(-WINDOW, WINDOW) for _ in range(3)) for v in vertices}


def rigidity_matrix(g, p: dict) -> list[list[Fraction]]:
    """|E| x 3|V| matrix; columns are grouped per vertex in ``g.vertices`` order."""
    vs, es = _vertices_edges(g)
    col = {v: 3 * i for i, v in enumerate(vs)}
    for v in vs:
        if v not in p:
            raise MissingVertex(v)
    rows = []
    for a, b in es:
        row = [Fraction(0)] * (3 * len(vs))
        for k in range(3):
            d = Fraction(p[a][k]) - Fraction(p[b][k])
            row[col[a] + k] = d
            row[col[b] + k] = -d
        rows.append(row)
    return rows


def _integer_rows(m) -> list[list[int]]:
    out = []
    for row in m:
        den = 1
        for x in row:
            den = math.lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def rank_mod_p(m: list[list[int]], p: int = PRIME) -> int:
    if not m or not m[0]:
        return 0
    a = np.array([[x % p for x in row] for row in m], dtype=np.int64)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1 :, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            # (x - f*y) mod p with every operand < 2**31
            a[idx] = (a[idx] - (below[mask][:, None] * a[r]) % p) % p
        r += 1
    return r


def rank_exact(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination over the integers."""
    a = [list(map(int, row)) for row in m]
    if not a or not a[0]:
        return 0
    rows, cols = len(a), len(a[0])
    r, prev = 0, 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            ai = a[i]
            ar = a[r]
            for j in range(c, cols):
                ai[j] = (pv * ai[j] - f * ar[j]) // prev
        prev = pv
        r += 1
    return r


def rank_bound(n_vertices: int, n_edges: int) -> int:
    if n_vertices >= 3:
        return min(n_edges, 3 * n_vertices - 6)
    return min(n_edges, 1 if n_vertices == 2 else 0)


def matrix_rank(m) -> int:
    """Exact rank of a rational matrix."""
    return rank_exact(_integer_rows(m))


def placement_rank(g, p: dict) -> int:
    vs, es = _vertices_edges(g)
    ints = _integer_rows(rigidity_matrix(g, p))
    r = rank_mod_p(ints)
    if r < rank_bound(len(vs), len(es)):
        r = rank_exact(ints)
    assert r <= rank_bound(len(vs), len(es))
    return r


def generic_rank(g, seed: int = 0, trials: int = DEFAULT_TRIALS) -> int:
    """Maximum exact rank over up to ``trials`` seeded random placements.

    Stops at the first placement reaching the trivial bound, so a rigid
    framework costs one placement and only deficient graphs pay for the
    retries.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    vs, es = _vertices_edges(g)
    bound = rank_bound(len(vs), len(es))
    best = 0
    for t in range(trials):
        best = max(best, placement_rank(g, random_placement(vs, seed * 1_000_003 + t)))
        if best == bound:
            break
    return best


def is_minimally_3_rigid(g, seed: int = 0, trials: int = DEFAULT_TRIALS) -> bool:
    vs, es = _vertices_edges(g)
    if len(vs) < 3 or len(es) != 3 * len(vs) - 6:
        return False
    return generic_rank(g, seed, trials) == len(es)


def rigidity_report(g, seed: int = 0, trials: int = DEFAULT_TRIALS) -> dict:
    vs, es = _vertices_edges(g)
    rank = generic_rank(g, seed, trials)
    return {
        "vertices": len(vs),
        "edges": len(es),
        "rank": rank,
        "maxwell": len(es) == 3 * len(vs) - 6,
        "minimally_rigid": len(vs) >= 3 and len(es) == 3 * len(vs) - 6 and rank == len(es),
    }
