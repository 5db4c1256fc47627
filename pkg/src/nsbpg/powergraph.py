"""Power graphs P(G) and the normal-subgroup based variant on (G \\ H) + {e}.

Two adjacency routes are provided: the raw coset-power definition and the
quotient route through P(G/H).  They must agree everywhere; the quotient
route is the production path, the raw one backs the cross-checking tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import SimpleGraph, graph_from_edges
from .groups import (
    FiniteGroup,
    QuotientGroup,
    SubgroupSet,
    cyclic_subgroup,
    element_order,
    quotient,
)


def power_graph(group: FiniteGroup) -> SimpleGraph:
    """Graph on all of G; x ~ y iff one generates a subgroup containing the other."""
    n = group.order
    gen = [cyclic_subgroup(group, g) for g in group.elements()]
    edges = [(a, b) for a in range(n) for b in range(a + 1, n)
             if a in gen[b] or b in gen[a]]
    labels = [group.element_name(g) for g in group.elements()]
    return graph_from_edges(n, edges, labels)


@dataclass(frozen=True)
class NSBPGraph:
    """The graph on (G \\ H) + {e} induced by coset power relations."""

    graph: SimpleGraph
    group: FiniteGroup
    subgroup: SubgroupSet
    quotient: QuotientGroup
    vertex_element: tuple[int, ...]

    @property
    def h_size(self) -> int:
        return self.subgroup.order


def _check_subgroup(group: FiniteGroup, subgroup: SubgroupSet) -> None:
    if subgroup.order < 2:
        raise ValueError("H must be non-trivial (|H| >= 2)")
    if subgroup.order == group.order:
        raise ValueError("H must be a proper subgroup")
    if not subgroup.normal:
        raise ValueError("H must be normal in G")


def _vertex_list(group: FiniteGroup, subgroup: SubgroupSet, q: QuotientGroup) -> list[int]:
    """Identity first, then cosets by quotient index, elements by group index."""
    by_coset: dict[int, list[int]] = {}
    for g in group.elements():
        if g in subgroup.members:
            continue
        by_coset.setdefault(q.coset_of[g], []).append(g)
    out = [group.identity]
    for c in sorted(by_coset):
        out.extend(sorted(by_coset[c]))
    return out


def _labels(group: FiniteGroup, q: QuotientGroup, vertices: list[int]) -> list[str]:
    labels = []
    for g in vertices:
        if g == group.identity:
            labels.append("e")
        else:
            labels.append(f"{group.element_name(g)}|c{q.coset_of[g]}")
    return labels


def nsb_power_graph(group: FiniteGroup, subgroup: SubgroupSet,
                    route: str = "quotient") -> NSBPGraph:
    """Build the normal-subgroup based power graph of (G, H).

    ``route`` selects the adjacency computation: ``"quotient"`` goes through
    the power graph of G/H (distinct vertices are adjacent iff their cosets
    are equal or adjacent there), ``"raw"`` checks the defining condition
    xH = y^m H or yH = x^n H directly over positive exponents.
    """
    _check_subgroup(group, subgroup)
    q = quotient(group, subgroup)
    vertices = _vertex_list(group, subgroup, q)
    pos = {g: i for i, g in enumerate(vertices)}
    nv = len(vertices)
    edges: list[tuple[int, int]] = []

    if route == "quotient":
        pq = power_graph(q.group)
        for i in range(nv):
            ci = q.coset_of[vertices[i]]
            for j in range(i + 1, nv):
                cj = q.coset_of[vertices[j]]
                if ci == cj or pq.has_edge(ci, cj):
                    edges.append((i, j))
    elif route == "raw":
        qg = q.group
        for i in range(nv):
            x = vertices[i]
            cx = q.coset_of[x]
            for j in range(i + 1, nv):
                y = vertices[j]
                cy = q.coset_of[y]
                adjacent = False
                acc = cy
                for _ in range(element_order(qg, cy)):
                    if acc == cx:
                        adjacent = True
                        break
                    acc = qg.mul(acc, cy)
                if not adjacent:
                    acc = cx
                    for _ in range(element_order(qg, cx)):
                        if acc == cy:
                            adjacent = True
                            break
                        acc = qg.mul(acc, cx)
                if adjacent:
                    edges.append((i, j))
    else:
        raise ValueError(f"unknown route {route!r}")

    graph = graph_from_edges(nv, edges, _labels(group, q, vertices))
    return NSBPGraph(graph=graph, group=group, subgroup=subgroup,
                     quotient=q, vertex_element=tuple(vertices))


def validate_coset_adjacency(nsbp: NSBPGraph) -> bool:
    """Check the all-or-nothing coset adjacency structure.

    Within a coset all vertices must be mutually adjacent; between two
    distinct cosets the bipartite adjacency must be complete or empty, and
    must match equality-or-adjacency in an independently built P(G/H).
    """
    g = nsbp.graph
    q = nsbp.quotient
    coset_of_vertex = [q.coset_of[nsbp.vertex_element[i]] for i in range(g.n)]
    by_coset: dict[int, list[int]] = {}
    for v, c in enumerate(coset_of_vertex):
        by_coset.setdefault(c, []).append(v)
    for c, vs in by_coset.items():
        for a in vs:
            for b in vs:
                if a < b and not g.has_edge(a, b):
                    return False
    pq = power_graph(q.group)
    cosets = sorted(by_coset)
    for i, c1 in enumerate(cosets):
        for c2 in cosets[i + 1:]:
            pairs = [(a, b) for a in by_coset[c1] for b in by_coset[c2]]
            present = sum(1 for a, b in pairs if g.has_edge(a, b))
            if present not in (0, len(pairs)):
                return False
            expected = pq.has_edge(c1, c2)
            if bool(present) != expected:
                return False
    return True


def is_complete_nsbp(nsbp: NSBPGraph) -> bool:
    return nsbp.graph.is_complete()


def quotient_is_cyclic_prime_power(q: QuotientGroup) -> bool:
    """Whether G/H is cyclic of prime-power order (completeness criterion)."""
    n = q.order
    if n == 1:
        return True
    if not any(element_order(q.group, g) == n for g in q.group.elements()):
        return False
    p = min(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1
