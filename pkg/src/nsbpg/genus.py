"""Surface invariants: planarity, genus/crosscap formulas, Euler bounds,
exact small-graph genus search, randomized embedding search, and composition
of block invariants into whole-graph estimates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import networkx as nx

from .embeddings import (
    EmbeddingScheme,
    certificate_from_json,
    count_faces_rotation,
    count_faces_signed,
    incident_edges,
    is_orientable_scheme,
    trace_faces,
)
from .forms import Complete, Form, format_form, realize, recognize
from .graphs import SimpleGraph, blocks, is_isomorphic_graphs

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class GenusEstimate:
    """Exact-or-bounded surface invariant with provenance.

    ``lower == upper`` means the value is pinned exactly.
    """

    lower: int
    upper: int
    provenance: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    @classmethod
    def exact(cls, value: int, provenance: str) -> "GenusEstimate":
        return cls(value, value, provenance)

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"estimate {self} is not exact")
        return self.lower

    def __str__(self) -> str:
        if self.is_exact:
            return f"{self.lower} ({self.provenance})"
        return f"[{self.lower}, {self.upper}] ({self.provenance})"


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def genus_Kn(n: int) -> int:
    """Genus of the complete graph on n >= 3 vertices."""
    if n < 3:
        raise ValueError("genus formula for complete graphs needs n >= 3")
    return _ceil_div((n - 3) * (n - 4), 12)


def crosscap_Kn(n: int) -> int:
    """Crosscap of K_n for n >= 3; n = 7 is the exceptional case (3, not 2)."""
    if n < 3:
        raise ValueError("crosscap formula for complete graphs needs n >= 3")
    if n == 7:
        return 3
    return _ceil_div((n - 3) * (n - 4), 6)


def genus_Kmn(m: int, n: int) -> int:
    """Genus of the complete bipartite graph, parts m, n >= 2."""
    if m < 2 or n < 2:
        raise ValueError("genus formula for complete bipartite graphs needs m, n >= 2")
    return _ceil_div((m - 2) * (n - 2), 4)


def crosscap_Kmn(m: int, n: int) -> int:
    if m < 2 or n < 2:
        raise ValueError("crosscap formula for complete bipartite graphs needs m, n >= 2")
    return _ceil_div((m - 2) * (n - 2), 2)


def euler_lower_bound_orientable(g: SimpleGraph) -> int:
    """ceil(m/6 - n/2 + 1) clamped at 0, from v - e + f = 2 - 2g and 3f <= 2e."""
    if not g.is_connected():
        raise ValueError("Euler bound applies to connected graphs")
    if g.n < 3:
        return 0
    return max(0, _ceil_div(g.m - 3 * g.n + 6, 6))


def euler_lower_bound_nonorientable(g: SimpleGraph) -> int:
    """Least k with v - e + f = 2 - k compatible with 3f <= 2e, clamped at 0."""
    if not g.is_connected():
        raise ValueError("Euler bound applies to connected graphs")
    if g.n < 3:
        return 0
    return max(0, _ceil_div(g.m - 3 * g.n + 6, 3))


def is_planar(g: SimpleGraph) -> bool:
    """Exact planarity (left-right algorithm via networkx)."""
    gx = nx.Graph()
    gx.add_nodes_from(range(g.n))
    gx.add_edges_from(g.edges())
    ok, _ = nx.check_planarity(gx)
    return ok


def planar_scheme(g: SimpleGraph) -> EmbeddingScheme:
    """A genus-0 rotation system for a connected planar graph."""
    gx = nx.Graph()
    gx.add_nodes_from(range(g.n))
    gx.add_edges_from(g.edges())
    ok, emb = nx.check_planarity(gx)
    if not ok:
        raise ValueError("graph is not planar")
    edge_index = {e: i for i, e in enumerate(g.edges())}
    rotations = []
    for v in range(g.n):
        order = list(emb.neighbors_cw_order(v)) if g.degree(v) else []
        rotations.append(tuple(edge_index[(min(v, w), max(v, w))] for w in order))
    return EmbeddingScheme(graph=g, rotations=tuple(rotations), signs=(1,) * g.m)


class _BudgetExceeded(Exception):
    pass


class _RotationFinder:
    """Depth-first search over rotation systems for a face-count target.

    Rotations are built dart by dart; placing a dart adds one face-successor
    link, so the face permutation grows as a set of open paths and closed
    cycles.  Pruning: closed + open bounds the final face count; and since a
    face of length L spends L - min_len of the global slack
    2m - min_len * target, any path that provably cannot close within the
    remaining slack (its face would need too many further darts) dies early.
    The slack rule makes near-triangular targets, where embeddings are
    rarest, the best-pruned cases.
    """

    def __init__(self, g: SimpleGraph, budget: int, order=None, rng=None):
        self.g = g
        self.edges = g.edges()
        self.m = len(self.edges)
        self.budget = budget
        self.nodes = 0
        self.rng = rng
        inc = incident_edges(g)
        self.darts_at: list[list[int]] = []
        for v in range(g.n):
            seq = []
            for e in inc[v]:
                a, b = self.edges[e]
                seq.append(2 * e if v == a else 2 * e + 1)
            self.darts_at.append(seq)
        nd = 2 * self.m
        self.nxt = [-1] * nd
        self.prv = [-1] * nd
        self.pstart = list(range(nd))
        self.pend = list(range(nd))
        self.plen = [1] * nd
        self.cycles = 0
        self.open_paths = nd
        self.slack_used = 0
        self.order = list(order) if order is not None else \
            sorted(range(g.n), key=lambda v: (-g.degree(v), v))
        self.rotation: list[tuple[int, ...] | None] = [None] * g.n
        self.tail = [0] * nd
        self.head = [0] * nd
        for e, (a, b) in enumerate(self.edges):
            self.tail[2 * e] = a
            self.head[2 * e] = b
            self.tail[2 * e + 1] = b
            self.head[2 * e + 1] = a
        degrees = [g.degree(v) for v in range(g.n) if g.degree(v)]
        self.min_len = 3 if degrees and min(degrees) >= 2 else 1
        self.mirror_vertex = next((v for v in self.order if g.degree(v) >= 3), None)

    def _link(self, a: int, b: int, log: list) -> bool:
        s = self.pstart[a]
        if s == b:
            extra = self.plen[b] - self.min_len
            if extra < 0 or self.slack_used + extra > self.slack:
                return False
            self.slack_used += extra
            self.cycles += 1
            self.nxt[a] = b
            self.prv[b] = a
            self.open_paths -= 1
            log.append((a, b, True, 0, 0, extra))
            return True
        t = self.pend[b]
        newlen = self.plen[s] + self.plen[b]
        start_v, end_v = self.tail[s], self.head[t]
        if start_v == end_v:
            need = 0
        elif start_v in self.g.adj[end_v]:
            need = 1
        else:
            need = 2
        if newlen + need - self.min_len > self.slack - self.slack_used:
            return False
        log.append((a, b, False, s, t, self.plen[b]))
        self.pend[s] = t
        self.pstart[t] = s
        self.plen[s] = newlen
        self.nxt[a] = b
        self.prv[b] = a
        self.open_paths -= 1
        return True

    def _undo(self, log: list) -> None:
        for a, b, closed, s, t, aux in reversed(log):
            self.nxt[a] = -1
            self.prv[b] = -1
            self.open_paths += 1
            if closed:
                self.cycles -= 1
                self.slack_used -= aux
            else:
                self.plen[s] -= aux
                self.pend[s] = a
                self.pstart[t] = b

    def find(self, target_faces: int):
        """Rotations reaching the face target, or None; raises on budget."""
        self.target = target_faces
        self.slack = 2 * self.m - self.min_len * target_faces
        if self.slack < 0:
            return None
        return self._vertex(0)

    def _vertex(self, depth: int):
        if depth == len(self.order):
            if self.cycles >= self.target:
                return [tuple(d >> 1 for d in r) for r in self.rotation]
            return None
        v = self.order[depth]
        darts = self.darts_at[v]
        if not darts:
            self.rotation[v] = ()
            res = self._vertex(depth + 1)
            if res is None:
                self.rotation[v] = None
            return res
        return self._place(depth, v, [darts[0]], set(darts[1:]))

    def _place(self, depth: int, v: int, placed: list[int], remaining: set[int]):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        if not remaining:
            if v == self.mirror_vertex and len(placed) >= 3 and placed[1] > placed[-1]:
                return None  # global reflection symmetry: keep one mirror image
            log: list = []
            ok = self._link(placed[-1] ^ 1, placed[0], log)
            if ok and self.cycles + self.open_paths >= self.target:
                self.rotation[v] = tuple(placed)
                res = self._vertex(depth + 1)
                if res is not None:
                    return res
                self.rotation[v] = None
            if ok:
                self._undo(log)
            return None
        opts = sorted(remaining)
        if self.rng is not None:
            self.rng.shuffle(opts)
        for d in opts:
            log = []
            ok = self._link(placed[-1] ^ 1, d, log)
            if ok and self.cycles + self.open_paths >= self.target:
                placed.append(d)
                remaining.discard(d)
                res = self._place(depth, v, placed, remaining)
                if res is not None:
                    return res
                placed.pop()
                remaining.add(d)
            if ok:
                self._undo(log)
        return None


def _component_subgraphs(g: SimpleGraph) -> list[SimpleGraph]:
    from .graphs import induced_subgraph
    return [induced_subgraph(g, comp) for comp in g.components()]


def exact_genus_small(g: SimpleGraph, budget: int = DEFAULT_BUDGET) -> GenusEstimate:
    """Exact genus by branch-and-bound over rotation systems, within a budget.

    The genus of a disconnected graph is the sum over its components.  On
    budget exhaustion the result degrades to sound bounds.
    """
    comps = _component_subgraphs(g)
    total_exact = 0
    lower_sum = 0
    upper_sum = 0
    all_exact = True
    for comp in comps:
        est = _exact_genus_connected(comp, budget)
        lower_sum += est.lower
        upper_sum += est.upper
        if est.is_exact:
            total_exact += est.value
        else:
            all_exact = False
    if all_exact:
        return GenusEstimate.exact(total_exact, "exhaustive-search")
    return GenusEstimate(lower_sum, upper_sum, "subgraph-bound")


def _exact_genus_connected(g: SimpleGraph, budget: int) -> GenusEstimate:
    if g.m == 0 or g.n < 3:
        return GenusEstimate.exact(0, "exhaustive-search")
    lb = euler_lower_bound_orientable(g)
    ub = genus_Kn(g.n)
    target_genus = lb
    spent = 0
    while target_genus <= ub:
        target_faces = 2 - 2 * target_genus - g.n + g.m
        if target_faces < 1:
            # every genus up to the maximum one was ruled out: impossible,
            # since the true genus lies in that range
            break
        finder = _RotationFinder(g, budget - spent)
        try:
            found = finder.find(target_faces)
        except _BudgetExceeded:
            return GenusEstimate(target_genus, ub, "subgraph-bound")
        spent += finder.nodes
        if found is not None:
            return GenusEstimate.exact(target_genus, "exhaustive-search")
        target_genus += 1
    raise RuntimeError(f"exact genus search on {g!r} exhausted all levels; "
                       "the searcher is inconsistent")


def _spanning_tree_edges(g: SimpleGraph) -> set[int]:
    edges = g.edges()
    reached = {0}
    tree: set[int] = set()
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for i, (a, b) in enumerate(edges):
            if a == u and b not in reached:
                reached.add(b)
                tree.add(i)
                frontier.append(b)
            elif b == u and a not in reached:
                reached.add(a)
                tree.add(i)
                frontier.append(a)
    return tree


def _greedy_rotations(g: SimpleGraph, rng: random.Random) -> list[list[int]]:
    """Insert edges in random order, each at the position pair maximizing faces."""
    edges = g.edges()
    n = g.n
    order = list(range(len(edges)))
    rng.shuffle(order)
    rot: list[list[int]] = [[] for _ in range(n)]
    present: list[int] = []
    for e in order:
        u, v = edges[e]
        best = None
        for i in range(len(rot[u]) + 1):
            rot[u].insert(i, e)
            for j in range(len(rot[v]) + 1):
                rot[v].insert(j, e)
                present.append(e)
                sidx = {x: k for k, x in enumerate(present)}
                f = count_faces_rotation(n, [edges[x] for x in present],
                                         [[sidx[y] for y in rot[w]] for w in range(n)])
                if best is None or f > best[0]:
                    best = (f, i, j)
                present.pop()
                rot[v].pop(j)
            rot[u].pop(i)
        _, i, j = best
        rot[u].insert(i, e)
        rot[v].insert(j, e)
        present.append(e)
    return rot


def search_embedding(g: SimpleGraph, orientable: bool, value: int,
                     budget: int = DEFAULT_BUDGET, seed: int = 0) -> EmbeddingScheme | None:
    """Seeded search for a scheme embedding g with the given surface invariant.

    Orientable targets first get a pruned depth-first construction pass over
    rotation systems (cheap and decisive for near-triangular targets), then
    fall back to annealing: greedy edge-insertion starts, moves that swap or
    reinsert one edge in a rotation or flip one non-tree sign, geometric
    cooling, and restarts that alternate cold starts with kicks of the best
    state.  Deterministic for a fixed seed; returns None when the budget is
    exhausted.
    """
    if not g.is_connected():
        raise ValueError("embedding search requires a connected graph")
    if value < 0 or (not orientable and value < 1):
        return None
    target_faces = (2 - 2 * value if orientable else 2 - value) - g.n + g.m
    if g.m and target_faces < 1:
        return None
    lb = euler_lower_bound_orientable(g) if orientable else euler_lower_bound_nonorientable(g)
    if value < lb:
        return None
    if orientable and value == 0:
        return planar_scheme(g) if is_planar(g) else None
    if g.m == 0:
        return None

    edges = g.edges()
    inc = incident_edges(g)
    rng = random.Random(seed)

    if orientable:
        finder = _RotationFinder(g, min(budget, 2_000_000), rng=rng)
        exhausted = True
        found = None
        try:
            found = finder.find(target_faces)
        except _BudgetExceeded:
            exhausted = False
        if found is not None:
            scheme = EmbeddingScheme(g, tuple(found), (1,) * g.m)
            trace = trace_faces(scheme)
            if trace.orientable and trace.genus_or_crosscap == value:
                return scheme
        elif exhausted:
            return None  # no rotation system reaches the face target at all

    movable = [v for v in range(g.n) if g.degree(v) >= 3]
    non_tree: list[int] = []
    if not orientable:
        tree = _spanning_tree_edges(g)
        non_tree = [i for i in range(g.m) if i not in tree]
        if not non_tree:
            return None  # trees admit only spherical embeddings

    def fresh_state() -> tuple[list[list[int]], list[int]]:
        rotations = _greedy_rotations(g, rng)
        signs = [1] * g.m
        if not orientable:
            signs[rng.choice(non_tree)] = -1
        return rotations, signs

    def energy(rotations, signs) -> int:
        if orientable:
            return abs(count_faces_rotation(g.n, edges, rotations) - target_faces)
        f = count_faces_signed(g.n, edges, rotations, signs)
        pen = 3 if all(signs[i] > 0 for i in non_tree) else 0
        return abs(f - target_faces) + pen

    def metropolis(delta: int, temp: float) -> bool:
        return delta <= 0 or rng.random() < pow(2.718281828459045, -delta / temp)

    temp_start, temp_min, alpha = 1.5, 0.05, 0.9
    batch = max(40, 4 * g.m)
    rotations, signs = fresh_state()
    cur = energy(rotations, signs)
    best = (cur, [list(r) for r in rotations], list(signs))
    temp = temp_start
    moves = 0
    restarts = 0
    while True:
        if cur == 0:
            scheme = EmbeddingScheme(g, tuple(tuple(r) for r in rotations), tuple(signs))
            trace = trace_faces(scheme)
            if trace.orientable == orientable and trace.genus_or_crosscap == value:
                return scheme
            cur = energy(rotations, signs)
        if moves >= budget:
            return None
        moves += 1
        p = rng.random()
        undo = None
        if not orientable and (not movable or p < 0.2):
            e = rng.choice(non_tree)
            signs[e] = -signs[e]
            undo = ("sign", e, 0)
        elif movable and p < 0.6:
            v = rng.choice(movable)
            rot = rotations[v]
            i = rng.randrange(len(rot))
            x = rot.pop(i)
            j = rng.randrange(len(rot) + 1)
            rot.insert(j, x)
            undo = ("insert", v, i, j)
        elif movable:
            v = rng.choice(movable)
            rot = rotations[v]
            i = rng.randrange(len(rot))
            j = (i + 1) % len(rot)
            rot[i], rot[j] = rot[j], rot[i]
            undo = ("swap", v, i, j)
        else:
            return None
        nxt = energy(rotations, signs)
        if metropolis(nxt - cur, temp):
            cur = nxt
        else:
            kind = undo[0]
            if kind == "sign":
                signs[undo[1]] = -signs[undo[1]]
            elif kind == "insert":
                _, v, i, j = undo
                rot = rotations[v]
                x = rot.pop(j)
                rot.insert(i, x)
            else:
                _, v, i, j = undo
                rot = rotations[v]
                rot[i], rot[j] = rot[j], rot[i]
        if cur < best[0]:
            best = (cur, [list(r) for r in rotations], list(signs))
        if moves % batch == 0:
            temp *= alpha
            if temp < temp_min:
                restarts += 1
                if restarts % 2 and best[0] > 0:
                    rotations = [list(r) for r in best[1]]
                    signs = list(best[2])
                    for _ in range(max(4, g.n // 2)):
                        if movable:
                            v = rng.choice(movable)
                            rot = rotations[v]
                            i = rng.randrange(len(rot))
                            j = (i + 1) % len(rot)
                            rot[i], rot[j] = rot[j], rot[i]
                else:
                    rotations, signs = fresh_state()
                cur = energy(rotations, signs)
                temp = temp_start
    return None


def genus_via_blocks(block_estimates) -> GenusEstimate:
    """Genus is additive over blocks; interval sum when inputs are bounds."""
    lower = sum(b.lower for b in block_estimates)
    upper = sum(b.upper for b in block_estimates)
    return GenusEstimate(lower, upper, "block-additivity")


@dataclass(frozen=True)
class CrosscapComposition:
    """Crosscap of a graph from its blocks' invariant pairs.

    ``raw`` is the mechanical two-formula value (additive when every block
    has crosscap 2*genus + 1, otherwise 2n minus the mu-sum); it can
    undershoot the truth, so ``floored`` applies the subgraph-monotonicity
    floor max over block crosscaps.  ``estimate`` carries sound bounds from
    Euler-genus additivity: blocks contribute min(2*genus, crosscap) each,
    plus one when no block attains its Euler genus nonorientably.
    """

    raw: int | None
    floored: int | None
    floor_changed: bool
    used_additive_formula: bool | None
    estimate: GenusEstimate


def crosscap_via_blocks(block_pairs) -> CrosscapComposition:
    """Compose per-block (genus, crosscap) estimates into the graph's crosscap.

    ``block_pairs`` is a sequence of (GenusEstimate, GenusEstimate) tuples.
    """
    pairs = list(block_pairs)
    nblocks = len(pairs)
    all_exact = all(ge.is_exact and ce.is_exact for ge, ce in pairs)

    raw = floored = None
    used_additive = None
    if all_exact:
        if all(ce.value == 2 * ge.value + 1 for ge, ce in pairs):
            used_additive = True
            raw = 1 - nblocks + sum(ce.value for _, ce in pairs)
        else:
            used_additive = False
            mu = [max(2 - 2 * ge.value, 2 - ce.value) for ge, ce in pairs]
            raw = 2 * nblocks - sum(mu)
        floored = max([raw] + [ce.value for _, ce in pairs])

    if all(ge.upper == 0 and ce.upper == 0 for ge, ce in pairs):
        est = GenusEstimate.exact(0, "block-additivity")
        return CrosscapComposition(raw=raw, floored=floored, floor_changed=False,
                                   used_additive_formula=used_additive, estimate=est)

    eg_lo = sum(min(2 * ge.lower, ce.lower) for ge, ce in pairs)
    eg_hi = sum(min(2 * ge.upper, ce.upper) for ge, ce in pairs)
    attainer_certain = any(min(2 * ge.lower, ce.lower) >= 1 and ce.upper <= 2 * ge.lower
                           for ge, ce in pairs)
    attainer_possible = any(min(2 * ge.upper, ce.upper) >= 1 and ce.lower <= 2 * ge.upper
                            for ge, ce in pairs)
    nonplanar_certain = any(min(2 * ge.lower, ce.lower) >= 1 for ge, ce in pairs)

    if attainer_certain:
        lo, hi = eg_lo, eg_hi
    elif not attainer_possible and nonplanar_certain:
        lo, hi = eg_lo + 1, eg_hi + 1
    else:
        lo, hi = eg_lo, eg_hi + 1
    lo = max(lo, max(ce.lower for _, ce in pairs))
    est = GenusEstimate(lo, hi, "block-additivity")
    floor_changed = raw is not None and floored != raw
    return CrosscapComposition(raw=raw, floored=floored, floor_changed=floor_changed,
                               used_additive_formula=used_additive, estimate=est)


@lru_cache(maxsize=1)
def _certificate_registry() -> dict[str, tuple[EmbeddingScheme, bool, int]]:
    """Bundled verified embedding certificates keyed by canonical form text."""
    registry: dict[str, tuple[EmbeddingScheme, bool, int]] = {}
    data_dir = resources.files("nsbpg.data")
    for entry in ("k3_join_2k4_genus2.cert.json",):
        path = data_dir.joinpath(entry)
        if not path.is_file():
            continue
        scheme, orientable, value = certificate_from_json(path.read_text("utf-8"))
        form = recognize(scheme.graph)
        if form is None:
            raise RuntimeError(f"bundled certificate {entry} graph is unrecognized")
        trace = trace_faces(scheme)
        if trace.orientable != orientable or trace.genus_or_crosscap != value:
            raise RuntimeError(f"bundled certificate {entry} fails verification")
        registry[format_form(form)] = (scheme, orientable, value)
    return registry


@dataclass(frozen=True)
class SurfaceInvariants:
    genus: GenusEstimate
    crosscap: GenusEstimate
    form: Form | None


def _block_invariants(block: SimpleGraph, search_budget: int,
                      seed: int) -> tuple[GenusEstimate, GenusEstimate]:
    """Invariants of a single block (2-connected subgraph, bridge, or vertex)."""
    if is_planar(block):
        return (GenusEstimate.exact(0, "formula"), GenusEstimate.exact(0, "formula"))
    form = recognize(block)
    if isinstance(form, Complete):
        n = form.n
        return (GenusEstimate.exact(genus_Kn(n), "formula"),
                GenusEstimate.exact(crosscap_Kn(n), "formula"))
    if form is not None:
        hit = _certificate_registry().get(format_form(form))
        if hit is not None:
            scheme, orientable, value = hit
            if is_isomorphic_graphs(block, scheme.graph):
                if orientable:
                    glo = euler_lower_bound_orientable(block)
                    gest = GenusEstimate(max(glo, 1), value, "certificate")
                    if glo == value:
                        gest = GenusEstimate.exact(value, "certificate")
                    clo = max(euler_lower_bound_nonorientable(block), 1)
                    cest = GenusEstimate(clo, 2 * value + 1, "euler-bound")
                    return (gest, cest)
    glo = max(euler_lower_bound_orientable(block), 1)
    ghi = genus_Kn(block.n)
    clo = max(euler_lower_bound_nonorientable(block), 1)
    chi = crosscap_Kn(block.n)
    gest = GenusEstimate(glo, ghi, "euler-bound" if glo > 1 else "subgraph-bound")
    cest = GenusEstimate(clo, chi, "euler-bound" if clo > 1 else "subgraph-bound")
    if search_budget > 0:
        gest = _refine_by_search(block, gest, True, search_budget, seed)
        cest = _refine_by_search(block, cest, False, search_budget, seed)
    return gest, cest


def _refine_by_search(block: SimpleGraph, est: GenusEstimate, orientable: bool,
                      budget: int, seed: int) -> GenusEstimate:
    if est.is_exact:
        return est
    for value in range(est.lower, est.upper):
        scheme = search_embedding(block, orientable, value, budget=budget, seed=seed)
        if scheme is not None:
            if value == est.lower:
                return GenusEstimate.exact(value, "certificate")
            return GenusEstimate(est.lower, value, "certificate")
    return est


def surface_invariants(g: SimpleGraph, search_budget: int = 0,
                       seed: int = 0) -> SurfaceInvariants:
    """Genus and crosscap estimates for a graph, always sound, exact when pinned.

    Pipeline: planarity, then complete-graph formulas, then block
    decomposition with per-block formulas / bundled certificates / Euler and
    subgraph bounds, composed by block additivity.
    """
    form = recognize(g)
    if g.n == 0 or is_planar(g):
        zero = GenusEstimate.exact(0, "formula")
        return SurfaceInvariants(genus=zero, crosscap=zero, form=form)
    if isinstance(form, Complete):
        return SurfaceInvariants(
            genus=GenusEstimate.exact(genus_Kn(form.n), "formula"),
            crosscap=GenusEstimate.exact(crosscap_Kn(form.n), "formula"),
            form=form)
    decomp = blocks(g)
    pairs = [_block_invariants(b, search_budget, seed) for b in decomp.block_graphs()]
    genus = genus_via_blocks([ge for ge, _ in pairs])
    if len(pairs) == 1:
        genus = pairs[0][0]
        crosscap = pairs[0][1]
    else:
        crosscap = crosscap_via_blocks(pairs).estimate
    return SurfaceInvariants(genus=genus, crosscap=crosscap, form=form)
