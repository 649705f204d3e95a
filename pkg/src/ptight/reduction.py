"""The eight uncontractible base graphs and reduction onto them.

Names follow ``G^h_n`` where ``n`` is the vertex count and ``h`` the
minimum hole incidence degree.  The four six-vertex members are the
depletions of K6 by three edges:

=============  ==========================  ====================
name           removed edges               degree sequence
=============  ==========================  ====================
G^2_6,alpha    a triangle                  3 3 3 5 5 5
G^2_6,beta     a perfect matching          4 4 4 4 4 4
G^1_6,alpha    a 2-path plus a disjoint    3 4 4 4 4 5
               edge
G^1_6,beta     a 3-path                    3 3 4 4 5 5
=============  ==========================  ====================
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .core import PGraph, canonical_walk, pgraph_from_dict, pgraph_to_dict, validate
from .errors import MalformedInput, NotTight, TerminalNotInCatalog
from .iso import is_isomorphic
from .moves import ContractionRecord, contract, first_admissible, replay_split
from .sparsity import is_tight

_HEX = [str(i) for i in range(1, 7)]

_CATALOG_DATA = {
    "G^2_3": dict(
        edges=["12", "23", "13"],
        faces=[],
        holes=["123123"],
    ),
    "G^3_4": dict(
        edges=["12", "13", "14", "23", "24", "34"],
        faces=[],
        holes=["1234", "1243", "1324"],
    ),
    "G^1_5": dict(
        edges=["12", "13", "14", "15", "23", "24", "34", "35", "45"],
        faces=["134", "135", "124"],
        holes=["12345", "2354"],
    ),
    "G^1_6,alpha": dict(
        edges=["12", "13", "14", "15", "23", "34", "45", "35", "24", "26", "56", "46"],
        faces=["123", "134", "145", "246"],
        holes=["1265", "2354", "3465"],
    ),
    "G^1_6,beta": dict(
        edges=["12", "13", "14", "15", "16", "23", "34", "45", "56", "35", "24", "46"],
        faces=["123", "134", "145", "156"],
        holes=["1246", "2354", "6534"],
    ),
    "G^2_6,alpha": dict(
        edges=["26", "23", "13", "16", "34", "45", "15", "25", "46", "12", "14", "24"],
        faces=["124", "125", "234", "146"],
        holes=["6231", "1345", "2546"],
    ),
    "G^2_6,beta": dict(
        edges=["12", "23", "13", "16", "56", "15", "26", "46", "24", "34", "45", "35"],
        faces=["123", "156", "246", "345"],
        holes=["1542", "1643", "2653"],
    ),
    "G^0_7": dict(
        edges=[f"7{i}" for i in range(1, 7)] + ["12", "23", "34", "45", "56", "61", "14", "25", "36"],
        faces=[f"7{_HEX[i]}{_HEX[(i + 1) % 6]}" for i in range(6)],
        holes=["1254", "2365", "3416"],
    ),
}

CATALOG_NAMES = tuple(_CATALOG_DATA)


@lru_cache(maxsize=None)
def catalog() -> dict[str, PGraph]:
    out = {}
    for name, d in _CATALOG_DATA.items():
        out[name] = PGraph.build((), [tuple(e) for e in d["edges"]], [tuple(f) for f in d["faces"]], [tuple(h) for h in d["holes"]])
    return out


def embedding_isomorphism(g: PGraph, h: PGraph) -> dict | None:
    """A bijection ``g -> h`` carrying edges, faces and hole walks onto each other.

    Plain backtracking over degree-compatible images; meant for catalog-sized graphs.
    """
    if (len(g.vertices), len(g.edges), len(g.faces)) != (len(h.vertices), len(h.edges), len(h.faces)):
        return None
    gv = sorted(g.vertices, key=lambda v: -g.degree(v))
    holes = sorted(canonical_walk(w) for w in h.holes)
    m: dict = {}
    used: set = set()

    def extend(i):
        if i == len(gv):
            if all(frozenset(m[x] for x in f) in h.faces for f in g.faces):
                if sorted(canonical_walk([m[x] for x in w]) for w in g.holes) == holes:
                    return True
            return False
        v = gv[i]
        for x in h.vertices:
            if x in used or h.degree(x) != g.degree(v):
                continue
            if any((w in m) and (m[w] not in h.adjacency[x]) for w in g.adjacency[v]):
                continue
            m[v] = x
            used.add(x)
            if extend(i + 1):
                return True
            del m[v]
            used.discard(x)
        return False

    return dict(m) if extend(0) else None


def identify_base(g) -> str | None:
    """Name of the catalog member isomorphic to ``g`` as an abstract graph."""
    for name, base in catalog().items():
        if len(base.vertices) == len(g.vertices) and len(base.edges) == len(g.edges):
            if is_isomorphic(g, base) is not None:
                return name
    return None


@dataclass
class ReductionTrace:
    steps: list[ContractionRecord]
    terminal: str
    iso: dict
    reduced: PGraph | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        d = {"steps": [s.to_dict() for s in self.steps], "terminal": self.terminal, "iso": dict(self.iso)}
        if self.reduced is not None:
            d["reduced"] = pgraph_to_dict(self.reduced)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ReductionTrace":
        try:
            steps = [ContractionRecord.from_dict(s) for s in d["steps"]]
            reduced = pgraph_from_dict(d["reduced"]) if "reduced" in d else None
            return cls(steps, str(d["terminal"]), {str(k): str(v) for k, v in d.get("iso", {}).items()}, reduced)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"not a reduction trace: {exc}") from exc


def reduce(g: PGraph, check=None) -> ReductionTrace:
    """Greedily contract admissible edges until none is left.

    ``check`` (optional) is called on every intermediate graph.
    """
    if not validate(g).ok or not is_tight(g):
        raise NotTight("input must be a valid (3,6)-tight PGraph")
    steps = []
    cur = g
    while True:
        e = first_admissible(cur)
        if e is None:
            break
        cur, rec = contract(cur, e)
        steps.append(rec)
        if check is not None:
            check(cur)
    name = identify_base(cur)
    if name is None:
        raise TerminalNotInCatalog(f"reduction stopped at a graph with {len(cur.vertices)} vertices outside the catalog")
    base = catalog()[name]
    # prefer a map that also matches the embedding, so the trace replays on the bare member
    iso = embedding_isomorphism(cur, base) or is_isomorphic(cur, base)
    return ReductionTrace(steps, name, iso, cur)


def replay(trace: ReductionTrace) -> PGraph:
    """Undo a reduction by applying its records as vertex splits in reverse."""
    if trace.reduced is not None:
        g = trace.reduced
    else:
        inverse = {b: a for a, b in trace.iso.items()}
        g = catalog()[trace.terminal].relabel(inverse)
    for rec in reversed(trace.steps):
        g = replay_split(g, rec)
    return g
