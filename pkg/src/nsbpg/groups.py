"""Finite groups as explicit Cayley tables, with subgroup and quotient machinery.

Elements are integers 0..n-1.  All types are immutable after construction;
every query is pure, so instances are safe to share freely.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

DEFAULT_SUBGROUP_ORDER_CAP = 64
DEFAULT_CLOSURE_CAP = 2048


class GroupConstructionError(ValueError):
    """Raised when a table or generator set does not define a group."""


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``table[g][h]`` is the product g*h.  ``identity`` and ``inverses`` are
    derived at construction time and validated.
    """

    name: str
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    element_names: tuple[str, ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def elements(self) -> range:
        return range(self.order)

    def element_name(self, g: int) -> str:
        if self.element_names:
            return self.element_names[g]
        return "e" if g == self.identity else f"g{g}"

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul(self.mul(g, x), self.inv(g))

    def power(self, g: int, k: int) -> int:
        """g**k for k >= 0 by repeated multiplication."""
        acc = self.identity
        for _ in range(k):
            acc = self.mul(acc, g)
        return acc

    def is_abelian(self) -> bool:
        n = self.order
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class SubgroupSet:
    """A subgroup of ``parent`` given by its member set, plus a normality flag."""

    parent: FiniteGroup
    members: frozenset[int]
    normal: bool

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class QuotientGroup:
    """The coset group G/H together with the element -> coset projection."""

    group: FiniteGroup
    coset_of: tuple[int, ...]
    representatives: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.group.order


def from_cayley_table(table, name: str = "G", element_names=None) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    Rejects tables that are not closed, lack an identity or inverses, or are
    not associative; the error message names the offending element or triple.
    """
    rows = tuple(tuple(int(x) for x in row) for row in table)
    n = len(rows)
    if n == 0:
        raise GroupConstructionError("empty table")
    for g, row in enumerate(rows):
        if len(row) != n:
            raise GroupConstructionError(f"row {g} has length {len(row)}, expected {n}")
        for h, v in enumerate(row):
            if not 0 <= v < n:
                raise GroupConstructionError(f"entry ({g},{h}) = {v} out of range 0..{n - 1}")

    identity = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise GroupConstructionError("no two-sided identity element")

    inverses = [None] * n
    for g in range(n):
        for h in range(n):
            if rows[g][h] == identity and rows[h][g] == identity:
                inverses[g] = h
                break
        if inverses[g] is None:
            raise GroupConstructionError(f"element {g} has no two-sided inverse")

    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            row_ab = rows[ab]
            row_b = rows[b]
            row_a = rows[a]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    raise GroupConstructionError(
                        f"associativity fails at triple ({a},{b},{c}): "
                        f"({a}*{b})*{c} = {row_ab[c]} but {a}*({b}*{c}) = {row_a[row_b[c]]}"
                    )

    names = tuple(element_names) if element_names else ()
    if names and len(names) != n:
        raise GroupConstructionError("element_names length mismatch")
    return FiniteGroup(name=name, table=rows, identity=identity,
                       inverses=tuple(inverses), element_names=names)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p*q)(x) = p(q(x)); matches left-regular action."""
    return tuple(p[q[x]] for x in range(len(p)))


def from_generators(degree: int, generators, name: str = "G",
                    cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Close a set of permutations of 0..degree-1 under composition.

    Element 0 of the result is the identity permutation; the remaining
    elements are numbered in breadth-first discovery order, which makes the
    resulting table deterministic for a given generator list.
    """
    if degree < 1:
        raise GroupConstructionError("degree must be positive")
    ident = tuple(range(degree))
    gens = []
    for i, g in enumerate(generators):
        p = tuple(int(x) for x in g)
        if sorted(p) != list(range(degree)):
            raise GroupConstructionError(f"generator {i} is not a permutation of 0..{degree - 1}")
        gens.append(p)

    elems: list[tuple[int, ...]] = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        cur = queue.pop(0)
        for g in gens:
            nxt = _compose(cur, g)
            if nxt not in index:
                if len(elems) >= cap:
                    raise GroupConstructionError(f"closure exceeds cap of {cap} elements")
                index[nxt] = len(elems)
                elems.append(nxt)
                queue.append(nxt)

    n = len(elems)
    table = tuple(tuple(index[_compose(a, b)] for b in elems) for a in elems)
    return from_cayley_table(table, name=name)


def element_order(group: FiniteGroup, g: int) -> int:
    """Smallest k >= 1 with g**k = identity."""
    acc = g
    k = 1
    while acc != group.identity:
        acc = group.mul(acc, g)
        k += 1
    return k


def order_spectrum(group: FiniteGroup) -> Counter:
    """Multiset {element order: multiplicity} over all of G."""
    return Counter(element_order(group, g) for g in group.elements())


def exponent(group: FiniteGroup) -> int:
    """lcm of the element orders."""
    return math.lcm(*order_spectrum(group).keys())


def element_order_set(group: FiniteGroup) -> frozenset[int]:
    """The set of element orders occurring in G."""
    return frozenset(order_spectrum(group).keys())


def cyclic_subgroup(group: FiniteGroup, g: int) -> frozenset[int]:
    members = {group.identity}
    acc = g
    while acc != group.identity:
        members.add(acc)
        acc = group.mul(acc, g)
    return frozenset(members)


def count_cyclic_subgroups(group: FiniteGroup, d: int) -> int:
    """Number of distinct cyclic subgroups of order d.

    Equals (#elements of order d) / phi(d): each such subgroup contains
    exactly phi(d) generators.
    """
    if d < 1:
        return 0
    num = sum(1 for g in group.elements() if element_order(group, g) == d)
    if num == 0:
        return 0
    phi = sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)
    return num // phi


def subgroup_closure(group: FiniteGroup, seed) -> frozenset[int]:
    """Smallest subgroup containing the seed elements."""
    members = {group.identity}
    queue = list(dict.fromkeys(seed))
    for s in queue:
        members.add(s)
    while queue:
        a = queue.pop()
        new = []
        for b in list(members):
            for c in (group.mul(a, b), group.mul(b, a)):
                if c not in members:
                    members.add(c)
                    new.append(c)
        inv = group.inv(a)
        if inv not in members:
            members.add(inv)
            new.append(inv)
        queue.extend(new)
    return frozenset(members)


def is_subgroup(group: FiniteGroup, members: frozenset[int]) -> bool:
    if group.identity not in members:
        return False
    return all(group.mul(a, b) in members for a in members for b in members) and \
        all(group.inv(a) in members for a in members)


def is_normal(group: FiniteGroup, members: frozenset[int]) -> bool:
    return all(group.conjugate(g, x) in members
               for g in group.elements() for x in members)


def make_subgroup(group: FiniteGroup, seed) -> SubgroupSet:
    """Subgroup generated by the seed elements, with the normal flag computed."""
    members = subgroup_closure(group, seed)
    return SubgroupSet(parent=group, members=members, normal=is_normal(group, members))


def all_subgroups(group: FiniteGroup, cap: int = DEFAULT_SUBGROUP_ORDER_CAP) -> list[SubgroupSet]:
    """Every subgroup of G, found by closing cyclic-subgroup joins to a fixed point.

    Sorted by (order, member tuple) so the output is deterministic.
    """
    if group.order > cap:
        raise ValueError(f"group order {group.order} exceeds cap {cap}")
    found: set[frozenset[int]] = {frozenset({group.identity})}
    for g in group.elements():
        found.add(cyclic_subgroup(group, g))
    frontier = list(found)
    while frontier:
        new: list[frozenset[int]] = []
        current = sorted(found, key=lambda s: (len(s), sorted(s)))
        for a in frontier:
            for b in current:
                if a is b or a <= b or b <= a:
                    continue
                j = subgroup_closure(group, a | b)
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    out = []
    for members in sorted(found, key=lambda s: (len(s), sorted(s))):
        out.append(SubgroupSet(parent=group, members=members,
                               normal=is_normal(group, members)))
    return out


def center(group: FiniteGroup) -> frozenset[int]:
    """Elements commuting with all of G (intersection of all centralizers)."""
    return frozenset(z for z in group.elements()
                     if all(group.mul(z, g) == group.mul(g, z) for g in group.elements()))


def quotient(group: FiniteGroup, subgroup: SubgroupSet) -> QuotientGroup:
    """The coset group G/H for a normal subgroup H.

    Coset indices follow first-seen order over elements 0..n-1, so index 0 is
    the coset H itself (identity of the quotient) and representatives are the
    least elements of their cosets.
    """
    if subgroup.parent is not group and subgroup.parent != group:
        raise ValueError("subgroup does not belong to this group")
    if not subgroup.normal:
        raise ValueError("subgroup is not normal; quotient is undefined")
    h = subgroup.members
    n = group.order
    coset_of = [-1] * n
    reps: list[int] = []
    for g in range(n):
        if coset_of[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for x in h:
            coset_of[group.mul(g, x)] = idx
    q = len(reps)
    table = [[-1] * q for _ in range(q)]
    for a in range(q):
        for b in range(q):
            table[a][b] = coset_of[group.mul(reps[a], reps[b])]
    # well-definedness: the product of cosets must not depend on representatives
    for a in range(n):
        for b in range(n):
            if table[coset_of[a]][coset_of[b]] != coset_of[group.mul(a, b)]:
                raise ValueError(f"coset product ill-defined at ({a},{b}); H is not normal")
    qgroup = from_cayley_table(table, name=f"{group.name}/H{len(h)}")
    return QuotientGroup(group=qgroup, coset_of=tuple(coset_of), representatives=tuple(reps))


def commutator_subgroup(group: FiniteGroup, a_set, b_set) -> frozenset[int]:
    """Subgroup generated by commutators [a,b] = a^-1 b^-1 a b, a in A, b in B."""
    comms = set()
    for a in a_set:
        for b in b_set:
            comms.add(group.mul(group.mul(group.inv(a), group.inv(b)), group.mul(a, b)))
    return subgroup_closure(group, comms)


def lower_central_series(group: FiniteGroup) -> list[frozenset[int]]:
    """G = G0 >= G1 >= ... with G_{i+1} = [G_i, G], until it stabilizes."""
    full = frozenset(group.elements())
    series = [full]
    while True:
        nxt = commutator_subgroup(group, series[-1], full)
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt == frozenset({group.identity}):
            break
    return series


def is_maximal_class(group: FiniteGroup) -> bool:
    """Whether a 2-group of order 2^n has nilpotency class exactly n-1.

    Dihedral, generalized quaternion and semi-dihedral 2-groups are the
    classic examples.  Groups of order <= 4 are never of maximal class here.
    """
    n = group.order
    k = n.bit_length() - 1
    if n != 1 << k:
        raise ValueError(f"group of order {n} is not a 2-group")
    if k < 3:
        return False
    series = lower_central_series(group)
    trivial = frozenset({group.identity})
    if series[-1] != trivial:
        return False
    # class = index of the first trivial term
    return len(series) - 1 == k - 1


def _invariant_signature(group: FiniteGroup):
    spec = order_spectrum(group)
    return (group.order, group.is_abelian(), tuple(sorted(spec.items())))


def _generating_sequence(group: FiniteGroup) -> list[int]:
    """A short generating sequence, greedily preferring high-order elements."""
    gens: list[int] = []
    span = frozenset({group.identity})
    order_of = {g: element_order(group, g) for g in group.elements()}
    while len(span) < group.order:
        best = None
        best_key = None
        for g in group.elements():
            if g in span:
                continue
            key = (-order_of[g], g)
            if best_key is None or key < best_key:
                best, best_key = g, key
        gens.append(best)
        span = subgroup_closure(group, gens)
    return gens


def _extend_isomorphism(g1: FiniteGroup, g2: FiniteGroup, gens: list[int],
                        images: list[int]) -> bool:
    """Check whether gens -> images extends to an isomorphism, by closure."""
    phi = {g1.identity: g2.identity}
    queue = [g1.identity]
    for g, h in zip(gens, images):
        if g in phi:
            if phi[g] != h:
                return False
        else:
            phi[g] = h
            queue.append(g)
    while queue:
        a = queue.pop()
        for g, h in zip(gens, images):
            na, nb = g1.mul(a, g), g2.mul(phi[a], h)
            if na in phi:
                if phi[na] != nb:
                    return False
            else:
                phi[na] = nb
                queue.append(na)
    if len(phi) != g1.order or len(set(phi.values())) != g1.order:
        return False
    return all(phi[g1.mul(a, b)] == g2.mul(phi[a], phi[b])
               for a in g1.elements() for b in g1.elements())


def is_isomorphic(g1: FiniteGroup, g2: FiniteGroup) -> bool:
    """Brute-force isomorphism test with invariant screening, for small orders."""
    if g1.order != g2.order:
        return False
    if _invariant_signature(g1) != _invariant_signature(g2):
        return False
    for d in set(order_spectrum(g1)):
        if count_cyclic_subgroups(g1, d) != count_cyclic_subgroups(g2, d):
            return False
    gens = _generating_sequence(g1)
    orders = [element_order(g1, g) for g in gens]
    candidates = [[h for h in g2.elements() if element_order(g2, h) == o] for o in orders]

    def backtrack(i: int, images: list[int]) -> bool:
        if i == len(gens):
            return _extend_isomorphism(g1, g2, gens, images)
        for h in candidates[i]:
            images.append(h)
            # cheap partial check: the chosen images must generate enough
            if _partial_consistent(g1, g2, gens[: i + 1], images):
                if backtrack(i + 1, images):
                    return True
            images.pop()
        return False

    return backtrack(0, [])


def _partial_consistent(g1: FiniteGroup, g2: FiniteGroup, gens, images) -> bool:
    """Partial homomorphism check on the subgroup generated so far."""
    phi = {g1.identity: g2.identity}
    queue = [g1.identity]
    for g, h in zip(gens, images):
        if g in phi:
            if phi[g] != h:
                return False
        else:
            phi[g] = h
            queue.append(g)
    while queue:
        a = queue.pop()
        for g, h in zip(gens, images):
            na, nb = g1.mul(a, g), g2.mul(phi[a], h)
            if na in phi:
                if phi[na] != nb:
                    return False
            else:
                phi[na] = nb
                queue.append(na)
    return len(set(phi.values())) == len(phi)
