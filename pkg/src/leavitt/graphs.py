"""Finite directed multigraphs and the combinatorics the structure theory needs.

Vertex and edge order is document order; all tie-breaking downstream relies
on it, so it is preserved exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = [
    "Graph",
    "Path",
    "Cycle",
    "GraphAnalysis",
    "InfiniteFamily",
    "Infinite",
    "GraphError",
    "NotPolynomialGrowth",
    "load_graph",
    "graph_from_dict",
    "analyze",
    "compute_V0",
    "compute_V1",
    "quotient_graph",
    "entry_paths",
    "count_paths_to_sink",
]


class GraphError(ValueError):
    """Malformed graph document or precondition failure."""


class NotPolynomialGrowth(GraphError):
    """Two distinct cycles intersect; carries a witness pair."""

    def __init__(self, c1, c2):
        self.witness = (c1, c2)
        super().__init__(
            "cycles %s and %s intersect; growth is not polynomial"
            % (c1.edges, c2.edges)
        )


class Infinite:
    """Sentinel for an infinite path count."""

    def __repr__(self):
        return "Infinite"

    def __eq__(self, other):
        return isinstance(other, Infinite)

    def __hash__(self):
        return hash("Infinite")


INFINITE = Infinite()


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple  # of (edge id, source, range)

    def __post_init__(self):
        if not self.vertices:
            raise GraphError("empty vertex set")
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise GraphError("duplicate vertex id %r" % v)
            seen.add(v)
        vset = set(self.vertices)
        eids = set()
        for eid, s, r in self.edges:
            if eid in eids or eid in vset:
                raise GraphError("duplicate id %r" % eid)
            eids.add(eid)
            if s not in vset:
                raise GraphError("edge %r has undeclared source %r" % (eid, s))
            if r not in vset:
                raise GraphError("edge %r has undeclared range %r" % (eid, r))

    def source(self, eid):
        return self._edge_map()[eid][0]

    def range(self, eid):
        return self._edge_map()[eid][1]

    def _edge_map(self):
        m = self.__dict__.get("_emap")
        if m is None:
            m = {eid: (s, r) for eid, s, r in self.edges}
            self.__dict__["_emap"] = m
        return m

    def out_edges(self, v):
        """Edge ids with source v, in document order."""
        return [eid for eid, s, _ in self.edges if s == v]

    def in_edges(self, v):
        return [eid for eid, _, r in self.edges if r == v]

    def is_sink(self, v):
        return not self.out_edges(v)

    def sinks(self):
        return [v for v in self.vertices if self.is_sink(v)]

    def special_edge(self, v):
        """First out-edge of v in document order; None for sinks."""
        out = self.out_edges(v)
        return out[0] if out else None

    def vertex_index(self, v):
        return self.vertices.index(v)

    def to_dict(self):
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"id": eid, "source": s, "range": r} for eid, s, r in self.edges
            ],
        }


@dataclass(frozen=True)
class Path:
    """A path: edge sequence, or the trivial path at `base`."""

    base: str
    edges: tuple = ()

    def __len__(self):
        return len(self.edges)

    def source(self, g):
        return g.source(self.edges[0]) if self.edges else self.base

    def range(self, g):
        return g.range(self.edges[-1]) if self.edges else self.base

    def vertices(self, g):
        """All vertices visited, in order (length + 1 entries)."""
        if not self.edges:
            return [self.base]
        vs = [g.source(self.edges[0])]
        vs.extend(g.range(e) for e in self.edges)
        return vs


@dataclass(frozen=True)
class Cycle:
    """Closed edge sequence with pairwise distinct source vertices."""

    edges: tuple

    def vertices(self, g):
        return [g.source(e) for e in self.edges]

    def __len__(self):
        return len(self.edges)


@dataclass
class GraphAnalysis:
    sinks: list
    cycles: list
    polynomial_growth: bool
    exits: dict = field(default_factory=dict)  # cycle -> edge list
    ne_cycles: list = field(default_factory=list)
    cycle_reachability: set = field(default_factory=set)  # (cycle, cycle) pairs


def graph_from_dict(doc):
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise GraphError("graph document needs 'vertices' and 'edges'")
    edges = []
    for e in doc["edges"]:
        try:
            edges.append((e["id"], e["source"], e["range"]))
        except (TypeError, KeyError) as exc:
            raise GraphError("bad edge record %r" % (e,)) from exc
    return Graph(tuple(doc["vertices"]), tuple(edges))


def load_graph(path_or_file):
    """Load and validate a graph JSON document."""
    if hasattr(path_or_file, "read"):
        doc = json.load(path_or_file)
    else:
        with open(path_or_file) as fh:
            doc = json.load(fh)
    return graph_from_dict(doc)


def _simple_cycles(g):
    """All edge-level simple cycles, each rotated to start at its least vertex.

    Plain DFS from each vertex, forbidding revisits and restricting to
    vertices >= the start (in document order) so each cycle appears once.
    Fine for the small graphs this library targets.
    """
    order = {v: i for i, v in enumerate(g.vertices)}
    cycles = []

    def walk(start, current, path, visited):
        for eid in g.out_edges(current):
            nxt = g.range(eid)
            if nxt == start:
                cycles.append(Cycle(tuple(path + [eid])))
            elif nxt not in visited and order[nxt] > order[start]:
                visited.add(nxt)
                walk(start, nxt, path + [eid], visited)
                visited.remove(nxt)

    for v in g.vertices:
        walk(v, v, [], {v})
    return cycles


def analyze(g):
    """Sinks, cycles, exits, NE cycles, growth verdict, cycle reachability."""
    cycles = _simple_cycles(g)
    vsets = [set(c.vertices(g)) for c in cycles]
    growth = True
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if vsets[i] & vsets[j]:
                growth = False
    exits = {}
    for c, vs in zip(cycles, vsets):
        on_cycle = set(c.edges)
        exits[c] = [
            eid for eid, s, _ in g.edges if s in vs and eid not in on_cycle
        ]
    ne = [c for c in cycles if not exits[c]]
    reach = _reachability(g)
    creach = set()
    for i, c in enumerate(cycles):
        for j, c2 in enumerate(cycles):
            if i == j:
                continue
            if any(w in reach[v] for v in vsets[i] for w in vsets[j]):
                creach.add((c, c2))
    return GraphAnalysis(
        sinks=g.sinks(),
        cycles=cycles,
        polynomial_growth=growth,
        exits=exits,
        ne_cycles=ne,
        cycle_reachability=creach,
    )


def _reachability(g):
    """reach[v] = set of vertices reachable from v (v included)."""
    adj = {v: set() for v in g.vertices}
    for _, s, r in g.edges:
        adj[s].add(r)
    reach = {}
    for v in g.vertices:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        reach[v] = seen
    return reach


def compute_V0(g):
    """Vertices from which no cycle vertex is reachable (self included)."""
    cycle_vertices = set()
    for c in _simple_cycles(g):
        cycle_vertices.update(c.vertices(g))
    reach = _reachability(g)
    return {v for v in g.vertices if not (reach[v] & cycle_vertices)}


def compute_V1(g):
    """Vertices from which every reachable cycle is an NE cycle.

    Requires a sink-free polynomial-growth graph (the setting in which the
    Laurent layer is extracted).
    """
    if g.sinks():
        raise GraphError("graph has sinks: %s" % g.sinks())
    an = analyze(g)
    if not an.polynomial_growth:
        raise NotPolynomialGrowth(*_pick_intersecting(an, g))
    ne_vertices = set()
    for c in an.ne_cycles:
        ne_vertices.update(c.vertices(g))
    other = set()
    for c in an.cycles:
        if c not in an.ne_cycles:
            other.update(c.vertices(g))
    reach = _reachability(g)
    return {v for v in g.vertices if not (reach[v] & other)}


def quotient_graph(g, hereditary):
    """Remove a hereditary vertex set and every edge ranging into it."""
    h = set(hereditary)
    for eid, s, r in g.edges:
        if s in h and r not in h:
            raise GraphError(
                "vertex set not hereditary: edge %r leaves %r" % (eid, s)
            )
    vertices = tuple(v for v in g.vertices if v not in h)
    if not vertices:
        return None
    edges = tuple(e for e in g.edges if e[2] not in h)
    return Graph(vertices, edges)


@dataclass(frozen=True)
class InfiniteFamily:
    """Witness that the idempotent family over an NE cycle is infinite."""

    witness_cycle: Cycle
    connecting_path: Path


def entry_paths(g, cycle, cap=10000):
    """Paths q with r(q) on the NE cycle, meeting the cycle only at r(q).

    These index the distinct minimal idempotents over the cycle.  If some
    other cycle reaches this one the family is infinite and an
    InfiniteFamily witness is returned instead.
    """
    an = analyze(g)
    if cycle not in an.ne_cycles:
        raise GraphError("not an NE cycle: %s" % (cycle.edges,))
    if not an.polynomial_growth:
        raise NotPolynomialGrowth(*_pick_intersecting(an, g))
    cyc_vs = set(cycle.vertices(g))
    # another cycle reaching this one => infinite family
    for other in an.cycles:
        if other == cycle:
            continue
        if (other, cycle) in an.cycle_reachability:
            path = _connecting_path(g, set(other.vertices(g)), cyc_vs)
            return InfiniteFamily(other, path)
    # finite: walk backwards from cycle vertices through off-cycle vertices
    result = [Path(v) for v in cycle.vertices(g)]
    frontier = list(result)
    while frontier:
        if len(result) > cap:
            raise GraphError("entry path enumeration exceeded cap %d" % cap)
        nxt = []
        for p in frontier:
            v = p.source(g)
            for eid, s, r in g.edges:
                if r == v and s not in cyc_vs:
                    q = Path(p.base, (eid,) + p.edges)
                    nxt.append(q)
                    result.append(q)
        frontier = nxt
    return result


def _pick_intersecting(an, g):
    for i in range(len(an.cycles)):
        for j in range(i + 1, len(an.cycles)):
            ci, cj = an.cycles[i], an.cycles[j]
            if set(ci.vertices(g)) & set(cj.vertices(g)):
                return ci, cj
    raise AssertionError


def _connecting_path(g, from_vs, to_vs):
    """Shortest path starting in from_vs and ending in to_vs (BFS)."""
    from collections import deque

    queue = deque(Path(v) for v in sorted(from_vs, key=g.vertex_index))
    seen = set(from_vs)
    while queue:
        p = queue.popleft()
        v = p.range(g)
        if v in to_vs:
            return p
        for eid in g.out_edges(v):
            r = g.range(eid)
            if r not in seen:
                seen.add(r)
                queue.append(Path(p.base, p.edges + (eid,)))
    raise AssertionError("no connecting path despite reachability")


def count_paths_to_sink(g, v):
    """Number of paths ending at sink v (trivial path included), or Infinite."""
    if not g.is_sink(v):
        raise GraphError("%r is not a sink" % v)
    cycle_vertices = set()
    for c in _simple_cycles(g):
        cycle_vertices.update(c.vertices(g))
    # backward reachability from v
    back = {v}
    changed = True
    while changed:
        changed = False
        for eid, s, r in g.edges:
            if r in back and s not in back:
                back.add(s)
                changed = True
    if back & cycle_vertices:
        return INFINITE
    # acyclic feeding region: paths_to[u] = number of paths from u to v
    paths_to = {v: 1}

    def npaths(u):
        if u in paths_to:
            return paths_to[u]
        n = 0
        for eid in g.out_edges(u):
            r = g.range(eid)
            if r in back:
                n += npaths(r)
        paths_to[u] = n
        return n

    return sum(npaths(u) for u in back)


def all_paths_to_sink(g, v):
    """The actual paths ending at sink v; requires a finite count."""
    if count_paths_to_sink(g, v) == INFINITE:
        raise GraphError("infinitely many paths end at %r" % v)
    result = [Path(v)]
    frontier = [Path(v)]
    while frontier:
        nxt = []
        for p in frontier:
            u = p.source(g)
            for eid, s, r in g.edges:
                if r == u:
                    q = Path(p.base, (eid,) + p.edges)
                    nxt.append(q)
                    result.append(q)
        frontier = nxt
    return result
