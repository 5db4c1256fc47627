"""Named group constructions and the bundled small-group catalog (orders 1..20).

The catalog ships as a JSON file of permutation generators; ``load_catalog``
rebuilds each group from its generators, so the data file is the single
source of truth that the tests validate against the programmatic builders.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .groups import (
    FiniteGroup,
    GroupConstructionError,
    element_order,
    from_cayley_table,
    from_generators,
    is_isomorphic,
    make_subgroup,
    order_spectrum,
    quotient,
    subgroup_closure,
)

CATALOG_RESOURCE = "small_groups.json"
CATALOG_MAX_ORDER = 20


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupConstructionError("cyclic group order must be positive")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return from_cayley_table(table, name=f"Z{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Componentwise product; element (x, y) is packed as x * |B| + y."""
    nb = b.order
    n = a.order * nb
    table = [[0] * n for _ in range(n)]
    for x1 in a.elements():
        for y1 in b.elements():
            i = x1 * nb + y1
            row = table[i]
            for x2 in a.elements():
                xa = a.mul(x1, x2)
                for y2 in b.elements():
                    row[x2 * nb + y2] = xa * nb + b.mul(y1, y2)
    return from_cayley_table(table, name=name or f"{a.name}x{b.name}")


def _two_part_group(m: int, twist: int, quat: bool, name: str) -> FiniteGroup:
    """Groups with elements x^i y^j (i mod m, j mod 2), y x = x^twist y.

    ``quat`` adds the dicyclic relation y^2 = x^(m/2); otherwise y^2 = 1.
    """
    if pow(twist, 2, m) != 1 % m:
        raise GroupConstructionError(f"twist {twist} has order > 2 modulo {m}")
    half = m // 2
    n = 2 * m
    table = [[0] * n for _ in range(n)]
    for i in range(m):
        for j in range(2):
            for i2 in range(m):
                for j2 in range(2):
                    k = (i + i2 * (twist if j else 1)) % m
                    if quat and j and j2:
                        k = (k + half) % m
                    table[i * 2 + j][i2 * 2 + j2] = k * 2 + (j ^ j2)
    return from_cayley_table(table, name=name)


def dihedral(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order >= 4."""
    if order < 4 or order % 2:
        raise GroupConstructionError("dihedral group needs an even order >= 4")
    return _two_part_group(order // 2, order // 2 - 1, quat=False, name=f"D{order}")


def dicyclic(m: int) -> FiniteGroup:
    """Dicyclic group of order 4m (m >= 2); m a power of 2 gives Q_{4m}."""
    if m < 2:
        raise GroupConstructionError("dicyclic group needs m >= 2")
    name = f"Q{4 * m}" if (4 * m).bit_count() == 1 else f"Dic{m}"
    return _two_part_group(2 * m, 2 * m - 1, quat=True, name=name)


def generalized_quaternion(order: int) -> FiniteGroup:
    """Q_{2^k}: the 2-group of the given order with a unique involution."""
    if order < 8 or order.bit_count() != 1:
        raise GroupConstructionError(
            "generalized quaternion group needs order 2^k with k >= 3")
    return dicyclic(order // 4)


def semidihedral(order: int) -> FiniteGroup:
    """SD_{2^k}: presentation y^-1 x y = x^(m/2 - 1) on x of order m = 2^(k-1)."""
    if order < 16 or order.bit_count() != 1:
        raise GroupConstructionError(
            "semi-dihedral group needs order 2^k with k >= 4")
    m = order // 2
    return _two_part_group(m, m // 2 - 1, quat=False, name=f"SD{order}")


def metacyclic(n: int, m: int, k: int, name: str) -> FiniteGroup:
    """Split extension Z_n by Z_m with b a b^-1 = a^k (k^m = 1 mod n)."""
    if pow(k, m, n) != 1 % n:
        raise GroupConstructionError(f"action {k} does not have order dividing {m} mod {n}")
    size = n * m
    table = [[0] * size for _ in range(size)]
    powers = [pow(k, j, n) for j in range(m)]
    for i in range(n):
        for j in range(m):
            for i2 in range(n):
                for j2 in range(m):
                    table[i * m + j][i2 * m + j2] = ((i + i2 * powers[j]) % n) * m + (j + j2) % m
    return from_cayley_table(table, name=name)


def generalized_dihedral(a: FiniteGroup, name: str) -> FiniteGroup:
    """Order-2 extension of an abelian group acting by inversion."""
    if not a.is_abelian():
        raise GroupConstructionError("generalized dihedral base must be abelian")
    na = a.order
    n = 2 * na
    table = [[0] * n for _ in range(n)]
    for x in a.elements():
        for j in range(2):
            for y in a.elements():
                for j2 in range(2):
                    z = a.mul(x, a.inv(y) if j else y)
                    table[x * 2 + j][y * 2 + j2] = z * 2 + (j ^ j2)
    return from_cayley_table(table, name=name)


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    if k < 1:
        raise GroupConstructionError("elementary abelian rank must be >= 1")
    g = cyclic(p)
    for _ in range(k - 1):
        g = direct_product(g, cyclic(p))
    return from_cayley_table(g.table, name="x".join([f"Z{p}"] * k))


def symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n <= 4 letters, via permutation closure."""
    if not 1 <= n <= 4:
        raise GroupConstructionError("symmetric group supported for n <= 4 only")
    if n == 1:
        return from_cayley_table([[0]], name="S1")
    cycle = tuple(list(range(1, n)) + [0])
    swap = tuple([1, 0] + list(range(2, n)))
    return from_generators(n, [cycle, swap], name=f"S{n}")


def alternating4() -> FiniteGroup:
    return from_generators(4, [(1, 2, 0, 3), (1, 0, 3, 2)], name="A4")


def _swap_extension_v4_by_z4() -> FiniteGroup:
    """(Z2 x Z2) extended by Z4 whose generator swaps the two coordinates."""
    n = 16
    table = [[0] * n for _ in range(n)]
    for x in range(2):
        for y in range(2):
            for j in range(4):
                i = (x * 2 + y) * 4 + j
                for x2 in range(2):
                    for y2 in range(2):
                        for j2 in range(4):
                            a, b = (x2, y2) if j % 2 == 0 else (y2, x2)
                            table[i][(x2 * 2 + y2) * 4 + j2] = \
                                (((x ^ a) * 2 + (y ^ b)) * 4 + (j + j2) % 4)
    return from_cayley_table(table, name="V4sZ4")


def _central_product_d8_z4() -> FiniteGroup:
    """(D8 x Z4) / <(r^2, 2)>: the order-16 central product."""
    big = direct_product(dihedral(8), cyclic(4))
    r2 = 2 * 2  # element (i=2, j=0) of D8 in _two_part_group packing
    h = make_subgroup(big, [r2 * 4 + 2])
    assert h.order == 2 and h.normal
    q = quotient(big, h)
    return from_cayley_table(q.group.table, name="D8oZ4")


def named_group(spec: str) -> FiniteGroup:
    """Build a group from a constructor expression.

    Accepted forms: ``Cyclic(n)``, ``Dihedral(order)``,
    ``GeneralizedQuaternion(order)``, ``SemiDihedral(order)``,
    ``Symmetric(n)``, ``ElementaryAbelian(p, k)`` and
    ``DirectProduct(spec, spec)``.
    """
    expr = spec.strip()
    m = re.match(r"^(\w+)\((.*)\)$", expr, re.S)
    if not m:
        raise GroupConstructionError(f"cannot parse group spec {spec!r}")
    head, body = m.group(1), m.group(2).strip()
    if head == "DirectProduct":
        depth = 0
        split = None
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                split = i
                break
        if split is None:
            raise GroupConstructionError("DirectProduct needs two arguments")
        return direct_product(named_group(body[:split]), named_group(body[split + 1:]))
    args = [int(x) for x in body.split(",")] if body else []
    builders = {
        "Cyclic": lambda: cyclic(args[0]),
        "Dihedral": lambda: dihedral(args[0]),
        "GeneralizedQuaternion": lambda: generalized_quaternion(args[0]),
        "SemiDihedral": lambda: semidihedral(args[0]),
        "Symmetric": lambda: symmetric(args[0]),
        "ElementaryAbelian": lambda: elementary_abelian(args[0], args[1]),
    }
    if head not in builders:
        raise GroupConstructionError(f"unknown group constructor {head!r}")
    return builders[head]()


def _abelian_chains(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor chains (d1 >= d2 >= ..., d_{i+1} | d_i, product n)."""
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, prev: int, acc: tuple[int, ...]):
        if remaining == 1:
            out.append(acc)
            return
        for d in range(min(prev, remaining), 1, -1):
            if remaining % d == 0 and prev % d == 0:
                rec(remaining // d, d, acc + (d,))

    rec(n, n, ())
    return out


def _chain_label(chain: tuple[int, ...]) -> str:
    return "x".join(f"Z{d}" for d in chain)


def _build_chain(chain: tuple[int, ...]) -> FiniteGroup:
    g = cyclic(chain[0])
    for d in chain[1:]:
        g = direct_product(g, cyclic(d))
    return from_cayley_table(g.table, name=_chain_label(chain))


def abelian_label(group: FiniteGroup) -> str:
    """Invariant-factor label of an abelian group, e.g. ``Z4xZ2``.

    Abelian groups of equal order are isomorphic iff their order spectra
    agree, so matching spectra against candidate chains is conclusive.
    """
    spec = tuple(sorted(order_spectrum(group).items()))
    for chain in _abelian_chains(group.order):
        cand = _build_chain(chain)
        if tuple(sorted(order_spectrum(cand).items())) == spec:
            return _chain_label(chain)
    raise RuntimeError(f"no abelian type of order {group.order} matches; group is not abelian?")


def build_catalog() -> list[FiniteGroup]:
    """All groups of order <= 20 up to isomorphism (54 of them)."""
    def ab(*chain: int) -> FiniteGroup:
        return _build_chain(chain)

    groups: list[FiniteGroup] = []
    for n in range(1, CATALOG_MAX_ORDER + 1):
        groups.extend({
            1: lambda: [cyclic(1)],
            4: lambda: [cyclic(4), ab(2, 2)],
            6: lambda: [cyclic(6), symmetric(3)],
            8: lambda: [cyclic(8), ab(4, 2), ab(2, 2, 2), dihedral(8), dicyclic(2)],
            9: lambda: [cyclic(9), ab(3, 3)],
            10: lambda: [cyclic(10), dihedral(10)],
            12: lambda: [cyclic(12), ab(6, 2), dihedral(12), alternating4(), dicyclic(3)],
            14: lambda: [cyclic(14), dihedral(14)],
            15: lambda: [cyclic(15)],
            16: lambda: [
                cyclic(16), ab(4, 4), ab(8, 2), ab(4, 2, 2), ab(2, 2, 2, 2),
                dihedral(16), semidihedral(16), dicyclic(4),
                metacyclic(8, 2, 5, "M16"),
                direct_product(dihedral(8), cyclic(2), name="D8xZ2"),
                direct_product(dicyclic(2), cyclic(2), name="Q8xZ2"),
                metacyclic(4, 4, 3, "Z4sZ4"),
                _swap_extension_v4_by_z4(),
                _central_product_d8_z4(),
            ],
            18: lambda: [
                cyclic(18), ab(6, 3), dihedral(18),
                direct_product(symmetric(3), cyclic(3), name="S3xZ3"),
                generalized_dihedral(ab(3, 3), "Z3xZ3sZ2"),
            ],
            20: lambda: [
                cyclic(20), ab(10, 2), dihedral(20), dicyclic(5),
                metacyclic(5, 4, 2, "F20"),
            ],
        }.get(n, lambda n=n: [cyclic(n)])())
    return groups


@lru_cache(maxsize=1)
def _cached_catalog() -> tuple[FiniteGroup, ...]:
    return tuple(build_catalog())


def _minimal_generators(group: FiniteGroup) -> list[int]:
    """Greedy small generating set, scanning elements in index order."""
    if group.order == 1:
        return []
    gens: list[int] = []
    span = frozenset({group.identity})
    while len(span) < group.order:
        for g in group.elements():
            if g not in span:
                grown = subgroup_closure(group, gens + [g])
                if len(grown) > len(span):
                    gens.append(g)
                    span = grown
                    break
    return gens


def catalog_records(groups=None) -> list[dict]:
    """JSON-able records {name, degree, generators} via the left-regular action."""
    groups = list(groups) if groups is not None else list(_cached_catalog())
    records = []
    for g in groups:
        gens = _minimal_generators(g)
        perms = [[g.mul(x, h) for h in g.elements()] for x in gens]
        records.append({"name": g.name, "degree": g.order, "generators": perms})
    return records


def write_catalog_json(path: str | Path, groups=None) -> None:
    payload = catalog_records(groups)
    Path(path).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


def load_catalog(path: str | Path | None = None) -> list[FiniteGroup]:
    """Load the catalog from a JSON file (bundled data by default)."""
    if path is None:
        text = resources.files("nsbpg.data").joinpath(CATALOG_RESOURCE).read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    records = json.loads(text)
    if not isinstance(records, list) or not records:
        raise ValueError("catalog file must contain a non-empty list of records")
    seen = set()
    groups = []
    for rec in records:
        name = rec["name"]
        if name in seen:
            raise ValueError(f"duplicate catalog name {name!r}")
        seen.add(name)
        groups.append(from_generators(rec["degree"], rec["generators"], name=name))
    return groups


def iso_label(group: FiniteGroup) -> str:
    """Canonical label among known targets, or ``"unrecognized"``.

    Abelian groups get their invariant-factor label at any supported order;
    other groups of order <= 20 are matched against the catalog.
    """
    if group.is_abelian():
        return abelian_label(group)
    if group.order <= CATALOG_MAX_ORDER:
        for cand in _cached_catalog():
            if cand.order == group.order and not cand.is_abelian() \
                    and is_isomorphic(group, cand):
                return cand.name
        raise RuntimeError(f"order-{group.order} group missing from catalog")
    if group.order == 24 and is_isomorphic(group, symmetric(4)):
        return "S4"
    for builder in (dihedral, generalized_quaternion, semidihedral):
        try:
            cand = builder(group.order)
        except GroupConstructionError:
            continue
        if is_isomorphic(group, cand):
            return cand.name
    return "unrecognized"
