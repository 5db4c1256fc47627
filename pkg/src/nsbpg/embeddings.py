"""Combinatorial embeddings: rotation systems with edge signs, and face tracing.

A scheme assigns each vertex a cyclic order of its incident edges and each
edge a sign.  Face tracing lifts the scheme to its orientation double cover
(all-positive rotations, reversed on the mirror copy) and counts face orbits
there; the base embedding has half the cover's faces and half its Euler
characteristic, and is orientable exactly when the cover is disconnected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .graphs import SimpleGraph, graph_from_edges


@dataclass(frozen=True)
class EmbeddingScheme:
    """Per-vertex edge rotations plus per-edge signs over a fixed graph."""

    graph: SimpleGraph
    rotations: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]


@dataclass(frozen=True)
class FaceTrace:
    face_count: int
    euler_characteristic: int
    orientable: bool

    @property
    def genus_or_crosscap(self) -> int:
        chi = self.euler_characteristic
        if self.orientable:
            return (2 - chi) // 2
        return 2 - chi


class SchemeError(ValueError):
    """Raised for rotations or signs inconsistent with the graph."""


def incident_edges(g: SimpleGraph) -> list[list[int]]:
    """Edge indices incident to each vertex, in edge-list order."""
    edges = g.edges()
    inc: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        inc[u].append(i)
        inc[v].append(i)
    return inc


def validate_scheme(scheme: EmbeddingScheme) -> None:
    g = scheme.graph
    m = g.m
    if len(scheme.signs) != m:
        raise SchemeError(f"expected {m} signs, got {len(scheme.signs)}")
    if any(s not in (1, -1) for s in scheme.signs):
        raise SchemeError("signs must be +1 or -1")
    if len(scheme.rotations) != g.n:
        raise SchemeError(f"expected {g.n} rotations, got {len(scheme.rotations)}")
    for v, expected in enumerate(incident_edges(g)):
        if sorted(scheme.rotations[v]) != sorted(expected):
            raise SchemeError(
                f"rotation at vertex {v} is not a permutation of its incident edges")


def identity_scheme(g: SimpleGraph) -> EmbeddingScheme:
    """All-positive scheme with rotations in edge-list order."""
    return EmbeddingScheme(graph=g,
                           rotations=tuple(tuple(r) for r in incident_edges(g)),
                           signs=(1,) * g.m)


def is_orientable_scheme(scheme: EmbeddingScheme) -> bool:
    """True when vertex reflections can remove all negative signs.

    Propagates a flip assignment over a spanning forest; the scheme is
    orientable iff every non-tree edge then carries effective sign +1.
    """
    g = scheme.graph
    edges = g.edges()
    neigh: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        neigh[u].append((v, i))
        neigh[v].append((u, i))
    flip = [0] * g.n
    for root in range(g.n):
        if flip[root]:
            continue
        flip[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for v, i in neigh[u]:
                if flip[v] == 0:
                    flip[v] = flip[u] * scheme.signs[i]
                    stack.append(v)
    return all(flip[u] * scheme.signs[i] * flip[v] == 1
               for i, (u, v) in enumerate(edges))


def count_faces_rotation(n: int, edges: list[tuple[int, int]],
                         rotations) -> int:
    """Faces of an all-positive rotation system (plain dart tracing).

    Dart 2i runs from edges[i][0] to edges[i][1], dart 2i+1 the reverse.
    The face successor of d is the rotation successor of its reversal at the
    head of d; faces are the orbits.
    """
    m = len(edges)
    rot_next = [0] * (2 * m)
    for v in range(n):
        seq = []
        for e in rotations[v]:
            a, b = edges[e]
            seq.append(2 * e if v == a else 2 * e + 1)
        k = len(seq)
        for i in range(k):
            rot_next[seq[i]] = seq[(i + 1) % k]
    seen = [False] * (2 * m)
    faces = 0
    for d0 in range(2 * m):
        if seen[d0]:
            continue
        faces += 1
        d = d0
        while not seen[d]:
            seen[d] = True
            d = rot_next[d ^ 1]
    return faces


def count_faces_signed(n: int, edges: list[tuple[int, int]], rotations, signs) -> int:
    """Faces of a signed rotation system, by direct two-sided dart tracing.

    States are (dart, side); crossing a negative edge switches the side, and
    the side decides whether the rotation is read forward or backward.  Each
    face corresponds to exactly two state orbits (its two traversal
    directions), so the orbit count is halved.
    """
    m = len(edges)
    rot_next = [0] * (2 * m)
    rot_prev = [0] * (2 * m)
    for v in range(n):
        seq = []
        for e in rotations[v]:
            a, b = edges[e]
            seq.append(2 * e if v == a else 2 * e + 1)
        k = len(seq)
        for i in range(k):
            rot_next[seq[i]] = seq[(i + 1) % k]
            rot_prev[seq[i]] = seq[(i - 1) % k]
    seen = [False] * (4 * m)
    orbits = 0
    for s0 in range(4 * m):
        if seen[s0]:
            continue
        orbits += 1
        s = s0
        while not seen[s]:
            seen[s] = True
            d, side = s >> 1, s & 1
            side ^= signs[d >> 1] < 0
            r = d ^ 1
            q = rot_prev[r] if side else rot_next[r]
            s = (q << 1) | side
    if orbits % 2:
        raise RuntimeError("signed face tracing produced an odd orbit count")
    return orbits // 2


def _double_cover(scheme: EmbeddingScheme):
    """Cover edge list and rotations; vertex (v, s) has index 2v + (0 if s=+1)."""
    g = scheme.graph
    edges = g.edges()
    cover_edges: list[tuple[int, int]] = []
    for i, (u, v) in enumerate(edges):
        s = scheme.signs[i]
        # lift 2i is incident to u+, lift 2i+1 to u-
        cover_edges.append((2 * u, 2 * v + (0 if s == 1 else 1)))
        cover_edges.append((2 * u + 1, 2 * v + (1 if s == 1 else 0)))

    def lift_at(e: int, cover_vertex: int) -> int:
        u, v = edges[e]
        side, eps = divmod(cover_vertex, 2)
        if side == u:
            return 2 * e + eps
        if scheme.signs[e] == 1:
            return 2 * e + eps
        return 2 * e + (1 - eps)

    cover_rot: list[list[int]] = []
    for v in range(g.n):
        plus = [lift_at(e, 2 * v) for e in scheme.rotations[v]]
        minus = [lift_at(e, 2 * v + 1) for e in reversed(scheme.rotations[v])]
        cover_rot.append(plus)
        cover_rot.append(minus)
    return cover_edges, cover_rot


def trace_faces(scheme: EmbeddingScheme) -> FaceTrace:
    """Face count, Euler characteristic and surface type of a scheme.

    The underlying graph must be connected.  The genus (orientable) or
    crosscap (nonorientable) of the embedding surface is (2 - chi)/2 or
    2 - chi respectively.
    """
    validate_scheme(scheme)
    g = scheme.graph
    if not g.is_connected():
        raise SchemeError("face tracing requires a connected graph")
    if g.m == 0:
        return FaceTrace(face_count=1, euler_characteristic=2, orientable=True)
    orientable = is_orientable_scheme(scheme)
    cover_edges, cover_rot = _double_cover(scheme)
    cover_faces = count_faces_rotation(2 * g.n, cover_edges, cover_rot)
    if cover_faces % 2:
        raise RuntimeError("double cover face count must be even")
    f = cover_faces // 2
    chi = g.n - g.m + f
    if orientable and chi % 2:
        raise RuntimeError("orientable embedding must have even Euler characteristic")
    return FaceTrace(face_count=f, euler_characteristic=chi, orientable=orientable)


def verify_certificate(g: SimpleGraph, scheme: EmbeddingScheme,
                       orientable: bool, value: int) -> bool:
    """True iff the scheme's traced surface matches the claim exactly."""
    if scheme.graph != g:
        raise SchemeError("scheme does not belong to the given graph")
    trace = trace_faces(scheme)
    return trace.orientable == orientable and trace.genus_or_crosscap == value


def certificate_to_json(scheme: EmbeddingScheme, orientable: bool, value: int) -> str:
    payload = {
        "graph": {"n": scheme.graph.n, "edges": [list(e) for e in scheme.graph.edges()]},
        "rotations": [list(r) for r in scheme.rotations],
        "signs": list(scheme.signs),
        "claim": {"orientable": orientable, "value": value},
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def certificate_from_json(text: str) -> tuple[EmbeddingScheme, bool, int]:
    data = json.loads(text)
    graph = graph_from_edges(int(data["graph"]["n"]),
                             [tuple(e) for e in data["graph"]["edges"]])
    scheme = EmbeddingScheme(graph=graph,
                             rotations=tuple(tuple(r) for r in data["rotations"]),
                             signs=tuple(int(s) for s in data["signs"]))
    claim = data["claim"]
    return scheme, bool(claim["orientable"]), int(claim["value"])


def write_certificate(path: str | Path, scheme: EmbeddingScheme,
                      orientable: bool, value: int) -> None:
    Path(path).write_text(certificate_to_json(scheme, orientable, value), encoding="utf-8")


def read_certificate(path: str | Path) -> tuple[EmbeddingScheme, bool, int]:
    return certificate_from_json(Path(path).read_text(encoding="utf-8"))
