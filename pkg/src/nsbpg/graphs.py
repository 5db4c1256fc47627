"""Simple undirected graphs: constructors, block decomposition, isomorphism, export.

Vertices are integers 0..n-1 with optional text labels.  Graphs are immutable;
all queries are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_ISO_VERTEX_CAP = 24


@dataclass(frozen=True)
class SimpleGraph:
    """Loop-free undirected graph stored as per-vertex neighbor sets."""

    n: int
    adj: tuple[frozenset[int], ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def is_complete(self) -> bool:
        return all(len(s) == self.n - 1 for s in self.adj)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            for w in self.adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                for w in self.adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"SimpleGraph(n={self.n}, m={self.m})"


def graph_from_edges(n: int, edges, labels=None) -> SimpleGraph:
    """Build a graph, rejecting loops and out-of-range endpoints."""
    neigh: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u} not allowed")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of range for n={n}")
        neigh[u].add(v)
        neigh[v].add(u)
    lab = tuple(labels) if labels else ()
    if lab and len(lab) != n:
        raise ValueError("labels length mismatch")
    return SimpleGraph(n=n, adj=tuple(frozenset(s) for s in neigh), labels=lab)


def complete(n: int) -> SimpleGraph:
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return graph_from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def union(graphs) -> SimpleGraph:
    """Disjoint union; vertices are relabeled consecutively per part."""
    graphs = list(graphs)
    n = sum(g.n for g in graphs)
    edges = []
    labels: list[str] = []
    offset = 0
    any_labels = any(g.labels for g in graphs)
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        if any_labels:
            labels.extend(g.label(v) for v in range(g.n))
        offset += g.n
    return graph_from_edges(n, edges, labels if any_labels else None)


def join(graphs) -> SimpleGraph:
    """Disjoint union plus all edges between distinct parts."""
    graphs = list(graphs)
    base = union(graphs)
    edges = base.edges()
    offsets = []
    offset = 0
    for g in graphs:
        offsets.append((offset, offset + g.n))
        offset += g.n
    for i in range(len(graphs)):
        for j in range(i + 1, len(graphs)):
            a0, a1 = offsets[i]
            b0, b1 = offsets[j]
            edges.extend((u, v) for u in range(a0, a1) for v in range(b0, b1))
    return graph_from_edges(base.n, edges, base.labels or None)


def induced_subgraph(g: SimpleGraph, vertices) -> SimpleGraph:
    """Subgraph on the given vertex set, keeping exactly the internal edges."""
    vs = sorted(set(vertices))
    if any(not 0 <= v < g.n for v in vs):
        raise ValueError("vertex set not contained in the graph")
    pos = {v: i for i, v in enumerate(vs)}
    edges = [(pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos]
    labels = tuple(g.label(v) for v in vs) if g.labels else None
    return graph_from_edges(len(vs), edges, labels)


@dataclass(frozen=True)
class BlockDecomposition:
    """Biconnected components of a graph and its cut vertices.

    Every edge lies in exactly one block; two blocks share at most one
    vertex, necessarily a cut vertex.  Isolated vertices form their own
    single-vertex blocks.
    """

    parent: SimpleGraph
    block_vertex_sets: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]

    def block_graphs(self) -> list[SimpleGraph]:
        return [induced_subgraph(self.parent, vs) for vs in self.block_vertex_sets]


def blocks(g: SimpleGraph) -> BlockDecomposition:
    """Biconnected components via iterative depth-first search low-links."""
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    cut: set[int] = set()
    comp_sets: list[frozenset[int]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    for root in range(g.n):
        if disc[root] >= 0:
            continue
        if not g.adj[root]:
            comp_sets.append(frozenset({root}))
            disc[root] = timer
            timer += 1
            continue
        root_children = 0
        stack: list[tuple[int, iter]] = [(root, iter(sorted(g.adj[root])))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    parent[w] = v
                    if v == root:
                        root_children += 1
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                elif w != parent[v] and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    members: set[int] = set()
                    while True:
                        a, b = edge_stack.pop()
                        members.update((a, b))
                        if (a, b) == (u, v):
                            break
                    comp_sets.append(frozenset(members))
                    if u != root or root_children > 1:
                        cut.add(u)
    ordered = tuple(sorted(comp_sets, key=lambda s: sorted(s)))
    return BlockDecomposition(parent=g, block_vertex_sets=ordered, cut_vertices=frozenset(cut))


def _iso_screen(g: SimpleGraph) -> tuple:
    degs = sorted(len(s) for s in g.adj)
    tri = sum(1 for u in range(g.n) for v in g.adj[u] if v > u
              for w in g.adj[u] if w > v and w in g.adj[v])
    return (g.n, g.m, tuple(degs), tri)


def is_isomorphic_graphs(g1: SimpleGraph, g2: SimpleGraph,
                         cap: int = DEFAULT_ISO_VERTEX_CAP) -> bool:
    """Backtracking isomorphism test with degree/triangle screening."""
    if max(g1.n, g2.n) > cap:
        raise ValueError(f"graph size exceeds isomorphism cap of {cap} vertices")
    if _iso_screen(g1) != _iso_screen(g2):
        return False
    n = g1.n
    if n == 0:
        return True
    # order g1's vertices to keep the partial map connected where possible
    order: list[int] = []
    seen: set[int] = set()
    for s in sorted(range(n), key=lambda v: -g1.degree(v)):
        if s in seen:
            continue
        queue = [s]
        seen.add(s)
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(g1.adj[v], key=lambda x: -g1.degree(x)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    mapping = [-1] * n
    used = [False] * g2.n

    def feasible(v: int, w: int) -> bool:
        if g1.degree(v) != g2.degree(w):
            return False
        for u in order:
            mu = mapping[u]
            if mu < 0:
                continue
            if g1.has_edge(v, u) != g2.has_edge(w, mu):
                return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(g2.n):
            if not used[w] and feasible(v, w):
                mapping[v] = w
                used[w] = True
                if backtrack(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    return backtrack(0)


def to_dot(g: SimpleGraph, name: str = "G") -> str:
    """DOT text: one vertex per line, one `--` edge per line."""
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(g: SimpleGraph) -> dict:
    out = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.labels:
        out["labels"] = list(g.labels)
    return out


def from_json_dict(data: dict) -> SimpleGraph:
    return graph_from_edges(int(data["n"]), [tuple(e) for e in data["edges"]],
                            data.get("labels"))


def write_graph_json(g: SimpleGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_json_dict(g), indent=2) + "\n", encoding="utf-8")


def read_graph_json(path: str | Path) -> SimpleGraph:
    return from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))
