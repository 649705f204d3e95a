"""Edge contraction and planar vertex splitting on PGraphs.

Contracting an FF edge ``vw`` with face apexes ``a`` and ``b`` deletes
``aw``, ``bw`` and ``vw``, re-hangs every other edge at ``w`` onto ``v``
and drops the two faces on ``vw``.  A planar vertex split is the exact
inverse: a contiguous arc of the link of ``v`` (the corners strictly
between ``a`` and ``b`` on one side) is handed to a fresh vertex ``w``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .core import PGraph, edge, link_cycle
from .errors import NotContractible, NotPlanarSplit, UnknownEdge, UnknownVertex
from .sparsity import is_tight


@dataclass(frozen=True)
class ContractionRecord:
    contracted_edge: tuple[str, str]
    apexes: tuple[str, str]
    neighbor_transfer: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "edge": list(self.contracted_edge),
            "apexes": list(self.apexes),
            "moved": list(self.neighbor_transfer),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ContractionRecord":
        v, w = map(str, d["edge"])
        a, b = map(str, d["apexes"])
        return cls((v, w), (a, b), tuple(sorted(map(str, d.get("moved", ())))))


def _pair(e) -> tuple[str, str]:
    t = tuple(map(str, e))
    if len(t) != 2:
        raise UnknownEdge(e)
    return t


def ff_edges(g: PGraph) -> list[tuple[str, str]]:
    return sorted(tuple(sorted(e)) for e, fs in g.edge_faces.items() if len(fs) == 2)


def face_apexes(g: PGraph, e) -> tuple[str, ...]:
    v, w = _pair(e)
    return tuple(sorted(next(iter(f - {v, w})) for f in g.faces_at(edge(v, w))))


def is_contractible_edge(g: PGraph, e) -> bool:
    v, w = _pair(e)
    if edge(v, w) not in g.edges:
        raise UnknownEdge(f"{v}-{w}")
    apexes = face_apexes(g, (v, w))
    if len(apexes) != 2:
        return False
    common = g.adjacency[v] & g.adjacency[w]
    return common == set(apexes)


def contractible_edges(g: PGraph) -> list[tuple[str, str]]:
    return [e for e in ff_edges(g) if is_contractible_edge(g, e)]


def contract(g: PGraph, e) -> tuple[PGraph, ContractionRecord]:
    """Contract ``e = (v, w)``; the first endpoint ``v`` keeps its label."""
    v, w = _pair(e)
    if not is_contractible_edge(g, (v, w)):
        raise NotContractible(f"{v}-{w} is not a contractible FF edge")
    a, b = face_apexes(g, (v, w))
    moved = tuple(sorted(g.adjacency[w] - {v, a, b}))

    def sub(x):
        return v if x == w else x

    dropped = {edge(v, w), edge(a, w), edge(b, w)}
    edges = {edge(sub(x), sub(y)) for x, y in (tuple(e) for e in g.edges - dropped)}
    dead = {frozenset((v, w, a)), frozenset((v, w, b))}
    faces = [[sub(x) for x in f] for f in g.faces if f not in dead]
    holes = [[sub(x) for x in h] for h in g.holes]
    vertices = [x for x in g.vertices if x != w]
    out = PGraph.build(vertices, [tuple(e) for e in edges], faces, holes)
    return out, ContractionRecord((v, w), (a, b), moved)


def contraction_is_admissible(g: PGraph, e) -> bool:
    return is_tight(contract(g, e)[0])


def admissible_contractions(g: PGraph) -> list[tuple[str, str]]:
    """Contractible edges whose contraction stays (3,6)-tight."""
    return [e for e in contractible_edges(g) if contraction_is_admissible(g, e)]


def first_admissible(g: PGraph):
    """First admissible edge in lexicographic order, or ``None``."""
    for e in contractible_edges(g):
        if contraction_is_admissible(g, e):
            return e
    return None


def fresh_label(g: PGraph) -> str:
    used = set(g.vertices)
    i = len(used)
    while str(i) in used:
        i += 1
    return str(i)


def vertex_split(g: PGraph, v, a, b, moved, new: str | None = None) -> PGraph:
    """Planar split at ``v``: the new vertex takes ``moved`` and meets ``v, a, b``."""
    v, a, b = str(v), str(a), str(b)
    moved = frozenset(map(str, moved))
    if v not in g.adjacency:
        raise UnknownVertex(v)
    nv = g.adjacency[v]
    if a == b or a not in nv or b not in nv:
        raise NotPlanarSplit(f"{a} and {b} must be two distinct neighbours of {v}")
    link = link_cycle(g, v)
    if link is None:
        raise NotPlanarSplit(f"link of {v} is not a single cycle")
    nbrs, cs = link
    d = len(nbrs)
    ia, ib = nbrs.index(a), nbrs.index(b)
    arc = None
    for s, t in ((ia, ib), (ib, ia)):
        span = (t - s) % d
        interior = {nbrs[(s + j) % d] for j in range(1, span)}
        if interior == moved:
            arc = [cs[(s + j) % d] for j in range(span)]
            break
    if arc is None:
        raise NotPlanarSplit(f"{sorted(moved)} is not a contiguous arc of the link of {v} between {a} and {b}")

    w = str(new) if new is not None else fresh_label(g)
    if w in g.adjacency:
        raise NotPlanarSplit(f"label {w} already in use")
    moved_faces = {c.ref for c in arc if c.kind == "face"}
    hole_slots = {c.ref for c in arc if c.kind == "hole"}

    faces = [[w if x == v else x for x in f] if f in moved_faces else list(f) for f in g.faces]
    faces += [[v, w, a], [v, w, b]]
    holes = []
    for hi, h in enumerate(g.holes):
        holes.append([w if (hi, pos) in hole_slots else x for pos, x in enumerate(h)])
    edges = [tuple(e) for e in g.edges if not (v in e and (e - {v}) <= moved)]
    edges += [(w, x) for x in moved] + [(v, w), (w, a), (w, b)]
    return PGraph.build(list(g.vertices) + [w], edges, faces, holes)


def replay_split(g: PGraph, record: ContractionRecord) -> PGraph:
    v, w = record.contracted_edge
    a, b = record.apexes
    return vertex_split(g, v, a, b, record.neighbor_transfer, new=w)


def split_options(g: PGraph) -> list[tuple[str, str, str, frozenset]]:
    """Every planar split ``(v, a, b, moved)`` available in ``g``."""
    out = []
    seen = set()
    for v in g.vertices:
        link = link_cycle(g, v)
        if link is None:
            continue
        nbrs, _ = link
        d = len(nbrs)
        for i in range(d):
            for j in range(i + 1, d):
                for s, t in ((i, j), (j, i)):
                    span = (t - s) % d
                    moved = frozenset(nbrs[(s + x) % d] for x in range(1, span))
                    a, b = sorted((nbrs[i], nbrs[j]))
                    key = (v, a, b, moved)
                    if key not in seen:
                        seen.add(key)
                        out.append(key)
    return out


def random_split(g: PGraph, rng: random.Random) -> tuple[PGraph, tuple]:
    opts = split_options(g)
    opt = opts[rng.randrange(len(opts))]
    v, a, b, moved = opt
    return vertex_split(g, v, a, b, moved), opt


def grow(g: PGraph, steps: int, seed: int = 0, check=None) -> PGraph:
    """Apply ``steps`` uniformly chosen planar splits; ``check`` sees each graph."""
    rng = random.Random(seed)
    for _ in range(steps):
        g, _ = random_split(g, rng)
        if check is not None:
            check(g)
    return g
