"""Embedded surface graphs for the real projective plane.

A :class:`PGraph` is a simple graph together with a set of facial
3-cycles and a list of hole boundary walks.  Gluing a triangle onto
every face and a polygon onto every hole walk gives a closed surface;
for a graph embedded in the projective plane that surface has Euler
characteristic 1, i.e. ``|V| - |E| + |F| + k = 1``.

Graphs are built by identifying face graphs (:func:`from_face_graph`),
taken from the catalog, or produced by moves on existing graphs.  No
general embeddability test is attempted.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import InvalidFaceGraph, MalformedInput, NonSimpleQuotient, NotMoebius, UnknownVertex


def edge(u, v) -> frozenset:
    return frozenset((str(u), str(v)))


def _sorted_pair(e) -> tuple[str, str]:
    a, b = sorted(e)
    return a, b


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple undirected graph with opaque string vertex labels."""

    vertices: tuple[str, ...]
    edges: frozenset

    @classmethod
    def from_edges(cls, edges: Iterable, vertices: Iterable = ()) -> "Graph":
        es = frozenset(edge(u, v) for u, v in edges)
        vs = set(map(str, vertices))
        for e in es:
            if len(e) != 2:
                raise MalformedInput(f"loop edge {sorted(e)}")
            vs |= e
        return cls(tuple(sorted(vs)), es)

    @cached_property
    def adjacency(self) -> dict[str, frozenset]:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(n) for v, n in adj.items()}

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def edge_list(self) -> list[tuple[str, str]]:
        return sorted(_sorted_pair(e) for e in self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph) or isinstance(other, PGraph) != isinstance(self, PGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))


def canonical_walk(walk: Sequence[str]) -> tuple[str, ...]:
    """Lexicographically least rotation of ``walk`` or of its reversal."""
    w = tuple(walk)
    if not w:
        return w
    cands = []
    for seq in (w, w[::-1]):
        for i in range(len(seq)):
            cands.append(seq[i:] + seq[:i])
    return min(cands)


@dataclass(frozen=True, eq=False)
class PGraph(Graph):
    """Simple graph with facial 3-cycles and hole boundary walks.

    Holes are closed walks and may revisit vertices and edges; their
    lengths count multiplicity.  Two PGraphs compare equal when their
    vertices, edges and faces agree and their holes agree up to
    rotation and reversal of each walk.
    """

    faces: frozenset = field(default_factory=frozenset)
    holes: tuple[tuple[str, ...], ...] = ()

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable, faces: Iterable = (), holes: Iterable = ()) -> "PGraph":
        es = set()
        for e in edges:
            e = tuple(e)
            if len(e) != 2:
                raise MalformedInput(f"edge {list(e)} does not have two endpoints")
            if str(e[0]) == str(e[1]):
                raise MalformedInput(f"loop edge at {e[0]}")
            es.add(edge(*e))
        fs = set()
        for f in faces:
            f = frozenset(map(str, f))
            if len(f) != 3:
                raise MalformedInput(f"face {sorted(f)} is not a 3-cycle")
            fs.add(f)
        hs = tuple(tuple(map(str, h)) for h in holes)
        vs = set(map(str, vertices))
        for e in es:
            vs |= e
        return cls(tuple(sorted(vs)), frozenset(es), frozenset(fs), hs)

    @property
    def k(self) -> int:
        return len(self.holes)

    def graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    @cached_property
    def face_count(self) -> dict[str, int]:
        c = Counter()
        for f in self.faces:
            c.update(f)
        return {v: c.get(v, 0) for v in self.vertices}

    @cached_property
    def edge_faces(self) -> dict[frozenset, list[frozenset]]:
        ef = defaultdict(list)
        for f in self.faces:
            a, b, c = sorted(f)
            for e in (edge(a, b), edge(b, c), edge(a, c)):
                ef[e].append(f)
        return dict(ef)

    def faces_at(self, e) -> list[frozenset]:
        return self.edge_faces.get(frozenset(e), [])

    def hole_signature_key(self) -> tuple:
        return tuple(sorted(canonical_walk(h) for h in self.holes))

    def __eq__(self, other):
        if not isinstance(other, PGraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.faces == other.faces
            and self.hole_signature_key() == other.hole_signature_key()
        )

    def __hash__(self):
        return hash((self.vertices, self.edges, self.faces, self.hole_signature_key()))

    def relabel(self, mapping: dict) -> "PGraph":
        m = {str(k): str(v) for k, v in mapping.items()}
        f = lambda x: m.get(x, x)
        return PGraph.build(
            [f(v) for v in self.vertices],
            [(f(a), f(b)) for a, b in self.edge_list()],
            [[f(x) for x in face] for face in self.faces],
            [[f(x) for x in h] for h in self.holes],
        )

    def freedom_number(self) -> int:
        return 3 * len(self.vertices) - len(self.edges)


# --------------------------------------------------------------------------
# vertex links


class Corner(NamedTuple):
    """One angular sector at a vertex: between neighbours ``a`` and ``b``.

    ``ref`` is the face (a frozenset) or ``(hole index, position)`` for a
    hole corner.
    """

    a: str
    b: str
    kind: str  # "face" or "hole"
    ref: object


def corners(g: PGraph, v: str) -> list[Corner]:
    out = []
    for f in sorted(g.faces, key=sorted):
        if v in f:
            a, b = sorted(f - {v})
            out.append(Corner(a, b, "face", f))
    for hi, h in enumerate(g.holes):
        n = len(h)
        for pos, x in enumerate(h):
            if x == v:
                out.append(Corner(h[pos - 1], h[(pos + 1) % n], "hole", (hi, pos)))
    return out


def link_cycle(g: PGraph, v: str):
    """Cyclic order of the neighbours of ``v`` read off the corners.

    Returns ``(nbrs, cs)`` with ``cs[i]`` the corner between ``nbrs[i]``
    and ``nbrs[i+1]`` (indices mod d), or ``None`` when the corners do not
    form one cycle through every neighbour.
    """
    if v not in g.adjacency:
        raise UnknownVertex(v)
    nbrs = g.adjacency[v]
    cs = corners(g, v)
    if not nbrs or len(cs) != len(nbrs):
        return None
    inc = defaultdict(list)
    for i, c in enumerate(cs):
        if c.a not in nbrs or c.b not in nbrs:
            return None
        inc[c.a].append(i)
        inc[c.b].append(i)
    if set(inc) != set(nbrs) or any(len(x) != 2 for x in inc.values()):
        return None
    start = min(nbrs)
    order, used = [start], []
    cur, ci = start, inc[start][0]
    while True:
        used.append(ci)
        c = cs[ci]
        nxt = c.b if c.a == cur else c.a
        if nxt == start and len(used) == len(cs):
            break
        if nxt == start or len(used) > len(cs):
            return None
        order.append(nxt)
        a, b = inc[nxt]
        ci = b if a == ci else a
        cur = nxt
    if len(order) != len(nbrs):
        return None
    return order, [cs[i] for i in used]


# --------------------------------------------------------------------------
# validation and classification


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {"valid": self.ok, "violations": list(self.violations), **self.counts}


def _connected(g: Graph) -> bool:
    if not g.vertices:
        return False
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        for w in g.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


def validate(g: PGraph) -> ValidationReport:
    """Check every structural invariant of a PGraph; never raises."""
    rep = ValidationReport()
    bad = rep.violations
    V, E, F, k = len(g.vertices), len(g.edges), len(g.faces), len(g.holes)
    side_sum = 3 * F + sum(len(h) for h in g.holes)
    rep.counts = {"V": V, "E": E, "F": F, "k": k, "euler": V - E + F + k, "sides": side_sum}

    for f in g.faces:
        a, b, c = sorted(f)
        if not {edge(a, b), edge(b, c), edge(a, c)} <= g.edges:
            bad.append(f"face_not_triangle: {[a, b, c]}")
    for e, fs in g.edge_faces.items():
        if len(fs) > 2:
            bad.append(f"edge_in_3_faces: {sorted(e)}")
    walk_ok = True
    for h in g.holes:
        if len(h) < 2:
            bad.append(f"hole_walk: {list(h)} too short")
            walk_ok = False
            continue
        for i, x in enumerate(h):
            if edge(x, h[(i + 1) % len(h)]) not in g.edges:
                bad.append(f"hole_walk: step {x}-{h[(i + 1) % len(h)]} is not an edge")
                walk_ok = False
                break
    if side_sum != 2 * E:
        bad.append(f"side_count: 3F + sum(holes) = {side_sum} != 2E = {2 * E}")
    if V - E + F + k != 1:
        bad.append(f"euler: V - E + F + k = {V - E + F + k} != 1")
    if not _connected(g):
        bad.append("connected: graph is not connected")
    if walk_ok:
        sides = Counter()
        for f in g.faces:
            a, b, c = sorted(f)
            sides.update((edge(a, b), edge(b, c), edge(a, c)))
        for h in g.holes:
            sides.update(edge(x, h[(i + 1) % len(h)]) for i, x in enumerate(h))
        wrong = sorted(_sorted_pair(e) for e in g.edges if sides[e] != 2)
        if wrong:
            bad.append(f"edge_sides: edges without exactly two sides {wrong[:5]}")
        else:
            for v in g.vertices:
                if g.adjacency[v] and link_cycle(g, v) is None:
                    bad.append(f"vertex_link: corners at {v} do not form a single cycle")
    return rep


@dataclass(frozen=True)
class HoleSignature:
    k: int
    lengths: tuple[int, ...]

    @property
    def maxwell_consistent(self) -> bool:
        return sum(self.lengths) - 3 * self.k == 3

    def to_dict(self) -> dict:
        return {"k": self.k, "lengths": list(self.lengths), "maxwell": self.maxwell_consistent}


def classify(g: PGraph) -> HoleSignature:
    return HoleSignature(len(g.holes), tuple(sorted((len(h) for h in g.holes), reverse=True)))


def hole_incidence_degree(g: PGraph, v) -> int:
    v = str(v)
    if v not in g.adjacency:
        raise UnknownVertex(v)
    return g.degree(v) - g.face_count[v]


def min_hole_incidence_degree(g: PGraph) -> int:
    return min(hole_incidence_degree(g, v) for v in g.vertices)


# --------------------------------------------------------------------------
# face graphs


@dataclass(frozen=True)
class FaceGraph:
    """A triangulated disc with a pairing of directed boundary edges.

    ``boundary`` lists the boundary vertices in cyclic order (edge i runs
    from ``boundary[i]`` to ``boundary[i+1]``).  Each ``pairing`` entry
    ``((u1, v1), (u2, v2))`` glues u1 to u2 and v1 to v2.
    ``removed_discs`` are closed walks bounding holes; triangles enclosed
    by a walk are discarded together with their interior edges.
    """

    triangles: tuple
    boundary: tuple
    pairing: tuple = ()
    removed_discs: tuple = ()
    vertices: tuple = ()

    @classmethod
    def build(cls, triangles, boundary, pairing=(), removed_discs=(), vertices=()) -> "FaceGraph":
        return cls(
            tuple(tuple(map(str, t)) for t in triangles),
            tuple(map(str, boundary)),
            tuple((tuple(map(str, p)), tuple(map(str, q))) for p, q in pairing),
            tuple(tuple(map(str, w)) for w in removed_discs),
            tuple(map(str, vertices)),
        )

    @property
    def all_vertices(self) -> list[str]:
        vs = set(self.vertices) | set(self.boundary)
        for t in self.triangles:
            vs |= set(t)
        return sorted(vs)


def _tri_edges(t):
    a, b, c = t
    return (edge(a, b), edge(b, c), edge(a, c))


def _walk_edges(w):
    return [edge(x, w[(i + 1) % len(w)]) for i, x in enumerate(w)]


def _enclosed_triangles(tris, walk_edges: set, boundary_edges: set) -> set:
    """Indices of triangles on the far side of ``walk_edges`` from the outer boundary."""
    by_edge = defaultdict(list)
    for i, t in enumerate(tris):
        for e in _tri_edges(t):
            by_edge[e].append(i)
    comp = {}
    for i in range(len(tris)):
        if i in comp:
            continue
        comp[i] = i
        stack = [i]
        while stack:
            j = stack.pop()
            for e in _tri_edges(tris[j]):
                if e in walk_edges:
                    continue
                for n in by_edge[e]:
                    if n not in comp:
                        comp[n] = i
                        stack.append(n)
    outside = set()
    for i, t in enumerate(tris):
        if any(e in boundary_edges and e not in walk_edges for e in _tri_edges(t)):
            outside.add(comp[i])
    return {i for i in range(len(tris)) if comp[i] not in outside}


def from_face_graph(fg: FaceGraph) -> PGraph:
    """Identify the paired boundary edges of a face graph."""
    tris = [tuple(t) for t in fg.triangles]
    bd = list(fg.boundary)
    m = len(bd)
    if m < 3 or len(set(bd)) != m:
        raise InvalidFaceGraph("boundary must be a simple closed walk of length >= 3")
    for t in tris:
        if len(set(t)) != 3:
            raise InvalidFaceGraph(f"degenerate triangle {list(t)}")
    if len({frozenset(t) for t in tris}) != len(tris):
        raise InvalidFaceGraph("repeated triangle")
    bedges = [edge(bd[i], bd[(i + 1) % m]) for i in range(m)]
    bset = set(bedges)
    idx_of = {e: i for i, e in enumerate(bedges)}

    tri_side = Counter()
    for t in tris:
        tri_side.update(_tri_edges(t))
    if any(c > 2 for c in tri_side.values()):
        raise InvalidFaceGraph("an edge lies in more than two triangles")

    # holes: drop enclosed triangles
    removed = set()
    disc_walks = [list(w) for w in fg.removed_discs]
    unfilled_edges = set()
    for w in disc_walks:
        if len(w) < 3:
            raise InvalidFaceGraph(f"removed disc walk {w} too short")
        we = set(_walk_edges(w))
        if not we <= set(tri_side) | bset:
            raise InvalidFaceGraph(f"removed disc walk {w} is not made of disc edges")
        inside = _enclosed_triangles(tris, we, bset)
        if inside & removed:
            raise InvalidFaceGraph("removed discs overlap")
        if not inside:
            unfilled_edges |= {e for e in we if tri_side[e] == 1 and e not in bset}
        removed |= inside
    kept = [t for i, t in enumerate(tris) if i not in removed]

    one_sided = {e for e, c in tri_side.items() if c == 1}
    if tris and not one_sided <= bset | unfilled_edges:
        raise InvalidFaceGraph("triangles have a free edge that is neither boundary nor hole")
    if tris and not bset <= one_sided:
        raise InvalidFaceGraph("boundary edge is not on exactly one triangle")
    if tris:
        adj = defaultdict(list)
        for i, t in enumerate(tris):
            for e in _tri_edges(t):
                adj[e].append(i)
        seen, stack = {0}, [0]
        while stack:
            j = stack.pop()
            for e in _tri_edges(tris[j]):
                for n in adj[e]:
                    if n not in seen:
                        seen.add(n)
                        stack.append(n)
        if len(seen) != len(tris):
            raise InvalidFaceGraph("triangles do not form a connected disc")

    # pairing
    partner, corr = {}, {}
    for p, q in fg.pairing:
        (u1, v1), (u2, v2) = p, q
        e1, e2 = edge(u1, v1), edge(u2, v2)
        if e1 not in idx_of or e2 not in idx_of:
            raise InvalidFaceGraph(f"paired edge {p} or {q} is not a boundary edge")
        i, j = idx_of[e1], idx_of[e2]
        if i == j or i in partner or j in partner:
            raise InvalidFaceGraph(f"boundary edge used twice in pairing: {p}, {q}")
        partner[i], partner[j] = j, i
        corr[(i, u1)], corr[(i, v1)] = u2, v2
        corr[(j, u2)], corr[(j, v2)] = u1, v1

    parent = {v: v for v in fg.all_vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, x), y in corr.items():
        rx, ry = find(x), find(y)
        if rx != ry:
            lo, hi = sorted((rx, ry))
            parent[hi] = lo

    def q(x):
        return find(x)

    # quotient edges, checking simplicity
    b_edges = set()
    for t in kept:
        b_edges.update(_tri_edges(t))
    b_edges |= bset
    for w in disc_walks:
        b_edges.update(_walk_edges(w))
    image = defaultdict(set)
    for e in b_edges:
        a, b = tuple(e)
        qa, qb = q(a), q(b)
        if qa == qb:
            raise NonSimpleQuotient(f"edge {sorted(e)} becomes a loop at {qa}")
        image[edge(qa, qb)].add(e)
    for qe, pre in image.items():
        if len(pre) > 1:
            ids = {idx_of.get(e) for e in pre}
            ok = len(pre) == 2 and None not in ids and partner.get(min(ids)) == max(ids)
            if not ok:
                raise NonSimpleQuotient(f"edges {[sorted(e) for e in pre]} become parallel")
    faces = set()
    for t in kept:
        f = frozenset(q(x) for x in t)
        if f in faces:
            raise NonSimpleQuotient(f"two triangles become the same face {sorted(f)}")
        faces.add(f)

    holes = [[q(x) for x in w] for w in disc_walks]
    pos = {x: i for i, x in enumerate(bd)}
    visited = set()
    for s in range(m):
        if s in partner or s in visited:
            continue
        walk = [q(bd[s])]
        visited.add(s)
        y, came = bd[(s + 1) % m], s
        for _ in range(4 * m + 4):
            p = pos[y]
            ex = (p - 1) % m if came == p else p
            if ex in partner:
                j = partner[ex]
                y, came = corr[(ex, y)], j
                continue
            if ex == s:
                break
            walk.append(q(y))
            visited.add(ex)
            a, b = bd[ex], bd[(ex + 1) % m]
            y, came = (b if y == a else a), ex
        else:
            raise InvalidFaceGraph("boundary tracing did not close")
        holes.append(walk)

    vertices = {q(x) for t in kept for x in t} | {q(x) for x in bd}
    for w in disc_walks:
        vertices |= {q(x) for x in w}
    g = PGraph.build(vertices, [tuple(e) for e in image], faces, holes)
    rep = validate(g)
    structural = [v for v in rep.violations if not v.startswith("euler")]
    if structural:
        raise InvalidFaceGraph("; ".join(structural))
    return g


def moebius_completion(g, apex: str = "c") -> PGraph:
    """Cone off the single boundary 6-cycle of a triangulated Möbius strip.

    Accepts a PGraph or a FaceGraph.  The result is a full triangulation
    of the projective plane with one extra vertex.
    """
    if isinstance(g, FaceGraph):
        try:
            g = from_face_graph(g)
        except (InvalidFaceGraph, NonSimpleQuotient) as exc:
            raise NotMoebius(str(exc)) from exc
    if len(g.holes) != 1:
        raise NotMoebius(f"expected exactly one boundary walk, found {len(g.holes)}")
    (h,) = g.holes
    if len(set(h)) != len(h) or len(h) < 3:
        raise NotMoebius("boundary walk is not a simple cycle")
    if any(not g.faces_at(e) for e in g.edges):
        raise NotMoebius("strip has an edge in no triangle")
    rep = validate(g)
    if not rep.ok:
        raise NotMoebius("; ".join(rep.violations))
    apex = str(apex)
    while apex in g.adjacency:
        apex += "'"
    n = len(h)
    edges = list(g.edge_list()) + [(apex, x) for x in h]
    faces = list(g.faces) + [(apex, h[i], h[(i + 1) % n]) for i in range(n)]
    return PGraph.build(list(g.vertices) + [apex], edges, faces, [])


# --------------------------------------------------------------------------
# JSON interchange


def pgraph_to_dict(g: PGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in g.edge_list()],
        "faces": sorted(sorted(f) for f in g.faces),
        "holes": [list(h) for h in g.holes],
    }


def graph_to_dict(g: Graph) -> dict:
    if isinstance(g, PGraph):
        return pgraph_to_dict(g)
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edge_list()]}


def pgraph_from_dict(d: dict) -> PGraph:
    try:
        return PGraph.build(d.get("vertices", ()), d["edges"], d.get("faces", ()), d.get("holes", ()))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"not a PGraph object: {exc}") from exc


def facegraph_from_dict(d: dict) -> FaceGraph:
    try:
        return FaceGraph.build(
            d["triangles"], d["boundary"], d.get("pairing", ()), d.get("removed_discs", ()), d.get("vertices", ())
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"not a FaceGraph object: {exc}") from exc


def facegraph_to_dict(fg: FaceGraph) -> dict:
    return {
        "triangles": [list(t) for t in fg.triangles],
        "boundary": list(fg.boundary),
        "pairing": [[list(p), list(q)] for p, q in fg.pairing],
        "removed_discs": [list(w) for w in fg.removed_discs],
    }


def load_pgraph(d: dict) -> PGraph:
    """Read either interchange format; face graphs are identified first."""
    if not isinstance(d, dict):
        raise MalformedInput("expected a JSON object")
    if "triangles" in d:
        return from_face_graph(facegraph_from_dict(d))
    return pgraph_from_dict(d)
