"""Fan's incidence graph of the multiple points and the conjugation-free-graph test."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Optional

import networkx as nx

from .errors import NotOneCycle
from .exact import compare
from .geometry import Arrangement, PointXY, singular_points


@dataclass(frozen=True)
class IncidenceGraph:
    """Vertices are multiple points (multiplicity >= 3); edges join x-consecutive
    multiple points on a common line and carry that line's id.

    on_conic[v] tells whether the conic passes through vertex v.  simple_conic_lines
    lists the lines that meet the conic in at least one double point.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (u, v, line id) with u < v in vertex order
    on_conic: tuple[tuple[str, bool], ...] = ()
    vertex_lines: tuple[tuple[str, tuple[str, ...]], ...] = ()
    simple_conic_lines: tuple[str, ...] = ()

    @classmethod
    def make(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]],
             on_conic: Iterable[str] = (), vertex_lines=None, simple_conic_lines: Iterable[str] = ()
             ) -> "IncidenceGraph":
        vs = tuple(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        es = tuple(sorted(((u, v, l) if pos[u] <= pos[v] else (v, u, l) for u, v, l in edges),
                          key=lambda e: (pos[e[0]], pos[e[1]], e[2])))
        oc = set(on_conic)
        vl = vertex_lines or {}
        return cls(vs, es, tuple((v, v in oc) for v in vs),
                   tuple((v, tuple(sorted(vl.get(v, ())))) for v in vs),
                   tuple(sorted(simple_conic_lines)))

    def is_on_conic(self, v: str) -> bool:
        return dict(self.on_conic).get(v, False)

    def nx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for u, v, l in self.edges:
            g.add_edge(u, v, key=l, line=l)
        return g

    def degree(self, v: str) -> int:
        return sum((u == v) + (w == v) for u, w, _ in self.edges)

    def remove(self, xs: Iterable[str]) -> "IncidenceGraph":
        xs = set(xs)
        return IncidenceGraph(
            tuple(v for v in self.vertices if v not in xs),
            tuple(e for e in self.edges if e[0] not in xs and e[1] not in xs),
            tuple(p for p in self.on_conic if p[0] not in xs),
            tuple(p for p in self.vertex_lines if p[0] not in xs),
            self.simple_conic_lines,
        )

    def components(self) -> list["IncidenceGraph"]:
        out = []
        for comp in sorted(nx.connected_components(self.nx()), key=lambda c: min(self.vertices.index(v) for v in c)):
            out.append(self.remove(set(self.vertices) - comp))
        return out

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "on_conic": self.is_on_conic(v), "lines": list(dict(self.vertex_lines).get(v, ()))}
                         for v in self.vertices],
            "edges": [{"u": u, "v": v, "line": l} for u, v, l in self.edges],
        }


def build_graph(arr: Arrangement) -> IncidenceGraph:
    pts = [p for p in singular_points(arr) if not p.is_branch]
    conic_id = arr.conic.id if arr.conic is not None else None
    multi = [p for p in pts if p.multiplicity >= 3]
    names = {id(p): f"v{i + 1}" for i, p in enumerate(multi)}
    edges = []
    for l in arr.lines:
        on = [p for p in multi if l.id in p.components]  # already sorted by (x, y)
        for p, q in zip(on, on[1:]):
            edges.append((names[id(p)], names[id(q)], l.id))
    on_conic = [names[id(p)] for p in multi if conic_id in p.components]
    vlines = {names[id(p)]: [c for c in p.components if c != conic_id] for p in multi}
    simple = sorted({c for p in pts if p.multiplicity == 2 and conic_id in p.components
                     for c in p.components if c != conic_id})
    return IncidenceGraph.make([names[id(p)] for p in multi], edges, on_conic, vlines, simple)


def betti(g: IncidenceGraph) -> int:
    if not g.vertices:
        return 0
    return len(g.edges) - len(g.vertices) + nx.number_connected_components(g.nx())


def betti_whole_segments(arr: Arrangement) -> int:
    """β with each line's multiple points joined as one hyperedge (a star), for cross-checking."""
    g = build_graph(arr)
    h = nx.MultiGraph()
    h.add_nodes_from(g.vertices)
    by_line: dict[str, list[str]] = {}
    for u, v, l in g.edges:
        by_line.setdefault(l, [])
        for w in (u, v):
            if w not in by_line[l]:
                by_line[l].append(w)
    extra = 0
    for l, vs in by_line.items():
        hub = f"line:{l}"
        h.add_node(hub)
        extra += 1
        for v in vs:
            h.add_edge(hub, v)
    if not g.vertices:
        return 0
    return h.number_of_edges() - h.number_of_nodes() + nx.number_connected_components(h)


@dataclass(frozen=True)
class CfgVerdict:
    is_cfg: bool
    trace: tuple[tuple[str, ...], ...]  # removed vertex sets, round by round
    terminal: IncidenceGraph
    rule: str
    witness: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "is_cfg": self.is_cfg,
            "rule": self.rule,
            "witness": self.witness,
            "trace": [list(x) for x in self.trace],
            "terminal": self.terminal.to_json(),
        }


def replay_trace(g: IncidenceGraph, trace) -> IncidenceGraph:
    for xs in trace:
        g = g.remove(xs)
    return g


def cfg_check_line(g: IncidenceGraph) -> CfgVerdict:
    """Line-arrangement CFG test.

    Base case β <= 1; otherwise remove, in one round, every vertex of degree
    <= 2 with its edges and test what is left.  A disconnected graph is CFG
    when each of its components is.
    """
    trace: list[tuple[str, ...]] = []
    removed: set[str] = set()

    def rec(h: IncidenceGraph) -> tuple[bool, str]:
        if betti(h) <= 1:
            return True, "beta<=1"
        comps = h.components()
        if len(comps) > 1:
            results = [rec(c) for c in comps]
            ok = all(r[0] for r in results)
            return ok, "components" if ok else next(r[1] for r in results if not r[0])
        xs = tuple(v for v in h.vertices if h.degree(v) <= 2)
        if not xs:
            return False, "no vertex of degree <= 2"
        trace.append(xs)
        removed.update(xs)
        return rec(h.remove(xs))

    ok, rule = rec(g)
    return CfgVerdict(ok, tuple(trace), g.remove(removed), rule)


def cycle_edges(g: IncidenceGraph) -> list[tuple[str, str, str]]:
    """Edges on the unique cycle of a graph with β = 1 (2-core after leaf removal)."""
    h = g
    while True:
        leaves = [v for v in h.vertices if h.degree(v) <= 1]
        if not leaves:
            break
        h = h.remove(leaves)
    return list(h.edges)


def prscf_condition(g: IncidenceGraph) -> tuple[bool, Optional[str]]:
    """Off-conic cycle vertex whose two cycle edges lie on distinct lines, both of
    which also meet the conic in a double point."""
    if betti(g) != 1:
        raise NotOneCycle(f"β = {betti(g)}")
    edges = cycle_edges(g)
    verts = [v for v in g.vertices if any(v in e[:2] for e in edges)]
    for v in verts:
        if g.is_on_conic(v):
            continue
        lines = [e[2] for e in edges if v in e[:2]]
        if len(lines) == 2 and lines[0] != lines[1] and all(l in g.simple_conic_lines for l in lines):
            return True, v
    return False, None


def cfg_check_cl(g: IncidenceGraph) -> CfgVerdict:
    """CL-arrangement CFG test: base β = 0, or β = 1 with a witness vertex;
    otherwise peel the off-conic vertices of degree <= 2."""
    trace: list[tuple[str, ...]] = []
    h = g
    while True:
        b = betti(h)
        if b == 0:
            return CfgVerdict(True, tuple(trace), h, "beta=0")
        if b == 1:
            ok, w = prscf_condition(h)
            if ok:
                return CfgVerdict(True, tuple(trace), h, "beta=1 with witness", w)
        xs = tuple(v for v in h.vertices if h.degree(v) <= 2 and not h.is_on_conic(v))
        if not xs:
            rule = "beta=1 without witness" if b == 1 else "no off-conic vertex of degree <= 2"
            return CfgVerdict(False, tuple(trace), h, rule)
        trace.append(xs)
        h = h.remove(xs)


def emit_dot(g: IncidenceGraph) -> str:
    if not g.vertices:
        return "graph G {}\n"
    out = ["graph G {"]
    for v in g.vertices:
        attrs = ' [peripheries=2]' if g.is_on_conic(v) else ""
        out.append(f"  {v}{attrs};")
    for u, v, l in g.edges:
        out.append(f'  {u} -- {v} [label="{l}"];')
    out.append("}")
    return "\n".join(out) + "\n"
