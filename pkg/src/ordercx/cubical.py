"""Cubical complexes for discrete configuration spaces of graphs.

Cells are sets of pairwise-disjoint closed vertices/edges of a graph: a cell
with k edges is a k-cube whose coordinates slide one token each along one
edge.  This is the standard discretized model of unordered configuration
spaces of graphs.
"""

from __future__ import annotations

from itertools import combinations

from .chain import ChainComplex
from .linalg import RationalMatrix
from .simplicial import SimplicialComplex


class GraphTooSmall(ValueError):
    """The subdivision budget for a reliable discrete model was exceeded."""


class NotAClosedLoop(ValueError):
    """The given configuration path is not a closed edge loop of the model."""


class Graph:
    """A finite simple graph with ordered vertex labels."""

    def __init__(self, vertices, edges):
        self.vertices = list(vertices)
        index = {v: k for k, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise ValueError("duplicate vertices")
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError("loops not allowed")
            a, b = sorted((index[u], index[v]))
            norm.add((a, b))
        self.edges = sorted(norm)
        self.index = index

    @classmethod
    def cycle(cls, n):
        return cls(range(n), [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n_edges):
        return cls(range(n_edges + 1), [(i, i + 1) for i in range(n_edges)])

    def degree(self, i):
        return sum(1 for a, b in self.edges if i == a or i == b)

    def neighbors(self, i):
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def subdivided(self, k):
        """Replace every edge by a path of k edges (k >= 1)."""
        if k == 1:
            return Graph(self.vertices, [(self.vertices[a], self.vertices[b])
                                         for a, b in self.edges])
        vertices = list(self.vertices)
        edges = []
        for a, b in self.edges:
            la, lb = self.vertices[a], self.vertices[b]
            chain = [la]
            for t in range(1, k):
                w = ("sub", la, lb, t)
                vertices.append(w)
                chain.append(w)
            chain.append(lb)
            edges.extend(zip(chain, chain[1:]))
        return Graph(vertices, edges)

    def segment_lengths(self):
        """Cycle lengths of pure-cycle components and lengths of maximal paths
        between vertices of degree != 2."""
        essential = [i for i in range(len(self.vertices)) if self.degree(i) != 2]
        segments = []
        seen_edges = set()

        def walk(start, first):
            length = 0
            prev, cur = start, first
            while True:
                e = tuple(sorted((prev, cur)))
                if e in seen_edges:
                    return None
                seen_edges.add(e)
                length += 1
                if self.degree(cur) != 2 or cur == start and length > 1:
                    return length
                nxt = [x for x in self.neighbors(cur) if x != prev]
                if not nxt:
                    return length
                prev, cur = cur, nxt[0]

        for v in essential:
            for w in self.neighbors(v):
                length = walk(v, w)
                if length:
                    segments.append(length)
        # remaining untouched edges lie on pure cycles
        left = [e for e in self.edges if e not in seen_edges]
        while left:
            comp_edges = set()
            stack = [left[0]]
            verts = set(left[0])
            changed = True
            while changed:
                changed = False
                for e in left:
                    if e not in comp_edges and (e[0] in verts or e[1] in verts):
                        comp_edges.add(e)
                        verts.update(e)
                        changed = True
            segments.append(len(comp_edges))
            left = [e for e in left if e not in comp_edges]
        return segments

    def to_complex(self):
        return SimplicialComplex.from_simplices(
            [(self.vertices[a], self.vertices[b]) for a, b in self.edges],
            vertices=self.vertices)


class CubicalComplex:
    """Cells: (fixed vertex tuple, edge tuple); boundary by edge endpoints."""

    def __init__(self, vertices, cells):
        self.vertices = list(vertices)
        by_dim = {}
        for fixed, edges in cells:
            by_dim.setdefault(len(edges), set()).add(
                (tuple(sorted(fixed)), tuple(sorted(edges))))
        self.cells = {d: sorted(group) for d, group in sorted(by_dim.items())}

    def f_vector(self):
        top = max(self.cells) if self.cells else -1
        return tuple(len(self.cells.get(d, ())) for d in range(top + 1))

    def corner_labels(self, cell):
        fixed, edges = cell
        corners = [fixed]
        for a, b in edges:
            corners = [c + (x,) for c in corners for x in (a, b)]
        return [tuple(sorted(c)) for c in corners]

    def to_chain_complex(self):
        cells = {}
        boundary = {}
        index = {}
        for d, group in self.cells.items():
            cells[d] = list(group)
            index[d] = {c: k for k, c in enumerate(group)}
        for d, group in self.cells.items():
            if d == 0:
                continue
            entries = {}
            low = index[d - 1]
            for j, (fixed, edges) in enumerate(group):
                for k, (a, b) in enumerate(edges):
                    rest = edges[:k] + edges[k + 1:]
                    sign = -1 if k % 2 else 1
                    upper = (tuple(sorted(fixed + (b,))), rest)
                    lower = (tuple(sorted(fixed + (a,))), rest)
                    for cell, s in ((upper, sign), (lower, -sign)):
                        i = low[cell]
                        v = entries.get((i, j), 0) + s
                        if v:
                            entries[(i, j)] = v
                        else:
                            entries.pop((i, j), None)
            boundary[d] = RationalMatrix(len(low), len(group), entries)
        return ChainComplex(cells, boundary, check=True)

    def betti(self):
        return self.to_chain_complex().betti()

    def euler_characteristic(self):
        return self.to_chain_complex().euler_characteristic()

    # one-skeleton interface shared with SimplicialComplex (for characters)

    def skeleton_vertices(self):
        return [fixed for fixed, _ in self.cells.get(0, ())]

    def skeleton_edges(self):
        out = []
        for fixed, edges in self.cells.get(1, ()):
            (a, b) = edges[0]
            out.append((tuple(sorted(fixed + (a,))), tuple(sorted(fixed + (b,)))))
        return out

    def two_cell_vertex_loops(self):
        loops = []
        for fixed, edges in self.cells.get(2, ()):
            (a1, b1), (a2, b2) = edges
            loops.append((tuple(sorted(fixed + (a1, a2))),
                          tuple(sorted(fixed + (b1, a2))),
                          tuple(sorted(fixed + (b1, b2))),
                          tuple(sorted(fixed + (a1, b2)))))
        return loops


class DiscreteConfiguration:
    """Discrete model of p unordered points on a graph.

    graph    -- the (auto-subdivided) graph actually used
    complex  -- the cubical model
    """

    def __init__(self, graph, p, complex_, subdivision):
        self.graph = graph
        self.p = p
        self.complex = complex_
        self.subdivision = subdivision
        self.graph_complex = graph.to_complex()

    def betti(self):
        return self.complex.betti()

    def rotation_loop(self):
        """A closed loop conveying the tokens once around a cycle graph.

        Tokens start on positions 0..p-1 of the cycle order; the front token
        walks to the far end, the others shift up, the walker closes the gap.
        Only meaningful when the underlying graph is a single cycle.
        """
        order = _cycle_order(self.graph)
        if order is None:
            raise NotAClosedLoop("rotation loop needs a cycle graph")
        m = len(order)
        p = self.p
        configs = [tuple(sorted(order[i] for i in range(p)))]
        positions = set(range(p))

        def move(src, dst):
            positions.discard(src)
            positions.add(dst)
            configs.append(tuple(sorted(order[i] for i in positions)))

        for step in range(p - 1, m - 1):
            move(step, step + 1)
        for token in range(p - 2, -1, -1):
            move(token, token + 1)
        move(m - 1, 0)
        return configs


def _cycle_order(graph):
    n = len(graph.vertices)
    if len(graph.edges) != n or any(graph.degree(i) != 2 for i in range(n)):
        return None
    order = [0]
    prev, cur = None, 0
    while len(order) < n:
        nxt = [x for x in graph.neighbors(cur) if x != prev]
        prev, cur = cur, nxt[0] if nxt[0] != order[0] or len(order) == n - 1 else nxt[-1]
        order.append(cur)
    return [graph.vertices[i] for i in order]


def discrete_config(graph, p, cell_budget=200000):
    """Cubical model of p unordered tokens on ``graph``.

    The graph is subdivided so every cycle and every essential path carries at
    least 2(p+1) edges; results should be checked stable under one further
    subdivision (see the verification suite).
    """
    if p < 1:
        raise ValueError("need at least one token")
    required = 2 * (p + 1)
    lengths = graph.segment_lengths() or [len(graph.edges)]
    factor = 1
    for length in lengths:
        need = -(-required // length)
        factor = max(factor, need)
    work = graph.subdivided(factor)
    if len(work.vertices) < 2 * p + 2:
        raise GraphTooSmall("graph too small even after subdivision")

    index_edges = work.edges
    cells = []

    def closed(item):
        if isinstance(item, tuple):
            return set(item)
        return {item}

    # choose k disjoint edges, then p-k vertices avoiding them
    nv = len(work.vertices)
    for k in range(p + 1):
        for chosen in combinations(range(len(index_edges)), k):
            edges = [index_edges[c] for c in chosen]
            used = set()
            ok = True
            for a, b in edges:
                if a in used or b in used:
                    ok = False
                    break
                used.add(a)
                used.add(b)
            if not ok:
                continue
            free = [v for v in range(nv) if v not in used]
            for verts in combinations(free, p - k):
                cells.append((verts, tuple(edges)))
                if len(cells) > cell_budget:
                    raise GraphTooSmall("cell budget exceeded; graph too large")

    labeled = [(tuple(work.vertices[v] for v in fixed),
                tuple((work.vertices[a], work.vertices[b]) for a, b in edges))
               for fixed, edges in cells]
    complex_ = CubicalComplex(work.vertices, labeled)
    return DiscreteConfiguration(work, p, complex_, factor)


def loop_monodromy_permutation(model, loop):
    """Track the p tokens around a closed 0-cell loop; returns (perm, sign).

    ``loop`` is a list of configurations (tuples of graph vertices); each
    consecutive pair must differ by one token sliding along a graph edge.
    """
    complex_ = model.complex
    zero_cells = {fixed for fixed, _ in complex_.cells.get(0, ())}
    edge_set = {tuple(sorted(e)) for e in
                ((model.graph.vertices[a], model.graph.vertices[b])
                 for a, b in model.graph.edges)}
    configs = [tuple(sorted(c)) for c in loop]
    if len(configs) < 2 or configs[0] != configs[-1]:
        raise NotAClosedLoop("path does not return to its start")
    for c in configs:
        if c not in zero_cells:
            raise NotAClosedLoop("configuration %r is not a 0-cell" % (c,))
    start = configs[0]
    tokens = {v: i for i, v in enumerate(start)}
    for a, b in zip(configs, configs[1:]):
        gone = set(a) - set(b)
        new = set(b) - set(a)
        if not gone and not new:
            raise NotAClosedLoop("consecutive configurations are equal")
        if len(gone) != 1 or len(new) != 1:
            raise NotAClosedLoop("more than one token moved in a step")
        src, dst = gone.pop(), new.pop()
        if tuple(sorted((src, dst))) not in edge_set:
            raise NotAClosedLoop("token jump %r -> %r is not a graph edge" % (src, dst))
        tokens[dst] = tokens.pop(src)
    perm = tuple(tokens[v] for v in start)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return perm, sign
