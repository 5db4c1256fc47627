"""Classification predicates on (|H|, G/H), the exhaustive sweep, and the
verification suite for the group-theoretic preliminaries.

The predicates see only the subgroup order and the quotient group, never G
itself, so comparing their predictions against invariants computed from the
constructed graphs is a genuine two-sided check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .catalog import iso_label
from .forms import format_form
from .genus import GenusEstimate, surface_invariants
from .groups import (
    FiniteGroup,
    SubgroupSet,
    count_cyclic_subgroups,
    element_order,
    element_order_set,
    exponent,
    is_maximal_class,
    all_subgroups,
    order_spectrum,
)
from .powergraph import (
    is_complete_nsbp,
    nsb_power_graph,
    quotient_is_cyclic_prime_power,
    validate_coset_adjacency,
)

GENUS_CLASSES = ("planar", "1", "2", "atLeast3")
CROSSCAP_CLASSES = ("planar", "1", "3", "atLeast4")


def _is_cyclic(q: FiniteGroup, n: int) -> bool:
    return q.order == n and any(element_order(q, g) == n for g in q.elements())


def _is_elementary_abelian_2(q: FiniteGroup) -> bool:
    return q.order >= 2 and all(element_order(q, g) <= 2 for g in q.elements())


def _is_klein_four(q: FiniteGroup) -> bool:
    return q.order == 4 and _is_elementary_abelian_2(q)


def _is_s3(q: FiniteGroup) -> bool:
    return q.order == 6 and not q.is_abelian()


def _is_d8(q: FiniteGroup) -> bool:
    # the order-8 nonabelian groups are D8 (five involutions) and Q8 (one)
    return (q.order == 8 and not q.is_abelian()
            and sum(1 for g in q.elements() if element_order(q, g) == 2) == 5)


def _is_exp4_two_group_with_two_c4(q: FiniteGroup) -> bool:
    n = q.order
    if n < 8 or n & (n - 1):
        return False
    return exponent(q) == 4 and count_cyclic_subgroups(q, 4) == 2


@dataclass(frozen=True)
class Clause:
    clause_id: str
    result: str
    matches: Callable[[int, FiniteGroup], bool]


GENUS_CLAUSES: tuple[Clause, ...] = (
    Clause("planar.h2", "planar", lambda h, q: h == 2 and _is_elementary_abelian_2(q)),
    Clause("planar.h3", "planar", lambda h, q: h == 3 and _is_elementary_abelian_2(q)),
    Clause("genus1.a4", "1", lambda h, q: h == 4 and _is_cyclic(q, 2)),
    Clause("genus1.a5", "1", lambda h, q: h == 5 and _is_cyclic(q, 2)),
    Clause("genus1.a6", "1", lambda h, q: h == 6 and _is_cyclic(q, 2)),
    Clause("genus1.bZ3", "1", lambda h, q: h == 3 and _is_cyclic(q, 3)),
    Clause("genus1.bS3", "1", lambda h, q: h == 3 and _is_s3(q)),
    Clause("genus1.cZ3", "1", lambda h, q: h == 2 and _is_cyclic(q, 3)),
    Clause("genus1.cS3", "1", lambda h, q: h == 2 and _is_s3(q)),
    Clause("genus1.cD8", "1", lambda h, q: h == 2 and _is_d8(q)),
    Clause("genus1.cZ4", "1", lambda h, q: h == 2 and _is_cyclic(q, 4)),
    Clause("genus2.a", "2", lambda h, q: h == 7 and _is_cyclic(q, 2)),
    Clause("genus2.b", "2", lambda h, q: h == 2 and _is_exp4_two_group_with_two_c4(q)),
)

CROSSCAP_CLAUSES: tuple[Clause, ...] = (
    Clause("planar.h2", "planar", lambda h, q: h == 2 and _is_elementary_abelian_2(q)),
    Clause("planar.h3", "planar", lambda h, q: h == 3 and _is_elementary_abelian_2(q)),
    Clause("crosscap1.a4", "1", lambda h, q: h == 4 and _is_cyclic(q, 2)),
    Clause("crosscap1.a5", "1", lambda h, q: h == 5 and _is_cyclic(q, 2)),
    Clause("crosscap1.bZ3", "1", lambda h, q: h == 2 and _is_cyclic(q, 3)),
    Clause("crosscap1.bS3", "1", lambda h, q: h == 2 and _is_s3(q)),
    Clause("crosscap3.a", "3", lambda h, q: h == 6 and _is_cyclic(q, 2)),
    Clause("crosscap3.b4", "3", lambda h, q: h == 4 and _is_klein_four(q)),
    Clause("crosscap3.b5", "3", lambda h, q: h == 5 and _is_klein_four(q)),
    Clause("crosscap3.cZ3", "3", lambda h, q: h == 3 and _is_cyclic(q, 3)),
    Clause("crosscap3.cS3", "3", lambda h, q: h == 3 and _is_s3(q)),
    Clause("crosscap3.dZ4", "3", lambda h, q: h == 2 and _is_cyclic(q, 4)),
    Clause("crosscap3.dD8", "3", lambda h, q: h == 2 and _is_d8(q)),
)


def _predict(clauses, h_order: int, quotient: FiniteGroup,
             fallback: str, disabled=frozenset()) -> tuple[str, str]:
    if h_order < 2:
        raise ValueError("predictions require |H| >= 2")
    for clause in clauses:
        if clause.clause_id in disabled:
            continue
        if clause.matches(h_order, quotient):
            return clause.result, clause.clause_id
    return fallback, "fallback"


def predict_genus_class(h_order: int, quotient: FiniteGroup,
                        disabled=frozenset()) -> tuple[str, str]:
    """Genus class of (|H|, G/H): planar, exactly 1, exactly 2, or at least 3."""
    return _predict(GENUS_CLAUSES, h_order, quotient, "atLeast3", disabled)


def predict_crosscap_class(h_order: int, quotient: FiniteGroup,
                           disabled=frozenset()) -> tuple[str, str]:
    """Crosscap class of (|H|, G/H): planar, 1, 3, or at least 4 (never 2)."""
    return _predict(CROSSCAP_CLAUSES, h_order, quotient, "atLeast4", disabled)


def estimate_matches_class(est: GenusEstimate, cls: str) -> bool:
    """Consistency of a computed estimate with a predicted class.

    Exact classes need the estimate pinned to the single value; the open
    classes need the lower bound to reach the threshold.  Bounds straddling
    classes count as mismatches.
    """
    if cls == "planar":
        return est.is_exact and est.value == 0
    if cls in ("1", "2", "3"):
        return est.is_exact and est.value == int(cls)
    if cls == "atLeast3":
        return est.lower >= 3
    if cls == "atLeast4":
        return est.lower >= 4
    raise ValueError(f"unknown class {cls!r}")


@dataclass(frozen=True)
class ClassificationRecord:
    group_name: str
    group_order: int
    subgroup_members: tuple[int, ...]
    h_order: int
    quotient_label: str
    structural_form: str | None
    computed_genus: GenusEstimate
    computed_crosscap: GenusEstimate
    genus_class: str
    genus_clause: str
    crosscap_class: str
    crosscap_clause: str
    genus_match: bool
    crosscap_match: bool
    quotient: FiniteGroup = field(compare=False, repr=False)

    def to_json_dict(self) -> dict:
        def est(e: GenusEstimate) -> dict:
            return {"lower": e.lower, "upper": e.upper, "exact": e.is_exact,
                    "provenance": e.provenance}
        return {
            "group": self.group_name,
            "order": self.group_order,
            "subgroup": list(self.subgroup_members),
            "hOrder": self.h_order,
            "quotient": self.quotient_label,
            "form": self.structural_form,
            "genus": est(self.computed_genus),
            "crosscap": est(self.computed_crosscap),
            "genusClass": self.genus_class,
            "genusClause": self.genus_clause,
            "crosscapClass": self.crosscap_class,
            "crosscapClause": self.crosscap_clause,
            "genusMatch": self.genus_match,
            "crosscapMatch": self.crosscap_match,
        }


def classify_pair(group: FiniteGroup, subgroup: SubgroupSet) -> ClassificationRecord:
    """Build Gamma_H(G), compute its invariants, and compare with the predictions."""
    nsbp = nsb_power_graph(group, subgroup)
    inv = surface_invariants(nsbp.graph)
    q = nsbp.quotient.group
    genus_class, genus_clause = predict_genus_class(subgroup.order, q)
    crosscap_class, crosscap_clause = predict_crosscap_class(subgroup.order, q)
    return ClassificationRecord(
        group_name=group.name,
        group_order=group.order,
        subgroup_members=subgroup.sorted_members(),
        h_order=subgroup.order,
        quotient_label=iso_label(q),
        structural_form=format_form(inv.form) if inv.form is not None else None,
        computed_genus=inv.genus,
        computed_crosscap=inv.crosscap,
        genus_class=genus_class,
        genus_clause=genus_clause,
        crosscap_class=crosscap_class,
        crosscap_clause=crosscap_clause,
        genus_match=estimate_matches_class(inv.genus, genus_class),
        crosscap_match=estimate_matches_class(inv.crosscap, crosscap_class),
        quotient=q,
    )


def proper_nontrivial_normal_subgroups(group: FiniteGroup) -> list[SubgroupSet]:
    return [s for s in all_subgroups(group)
            if s.normal and 2 <= s.order < group.order]


@dataclass
class SweepSummary:
    pairs_checked: int
    mismatches: list[ClassificationRecord]
    records: list[ClassificationRecord]
    clause_instances: dict[str, list[str]]

    @property
    def mismatch_count(self) -> int:
        return len(self.mismatches)

    def unexercised_clauses(self) -> list[str]:
        exercised = set(self.clause_instances)
        out = []
        for clause in GENUS_CLAUSES:
            if f"genus:{clause.clause_id}" not in exercised:
                out.append(f"genus:{clause.clause_id}")
        for clause in CROSSCAP_CLAUSES:
            if f"crosscap:{clause.clause_id}" not in exercised:
                out.append(f"crosscap:{clause.clause_id}")
        return out

    def to_json_dict(self) -> dict:
        return {
            "pairsChecked": self.pairs_checked,
            "mismatchCount": self.mismatch_count,
            "mismatches": [r.to_json_dict() for r in self.mismatches],
            "clauseInstances": {k: sorted(set(v)) for k, v in
                                sorted(self.clause_instances.items())},
            "unexercisedClauses": self.unexercised_clauses(),
        }


def sweep(catalog, max_order: int | None = None, jobs: int = 1) -> SweepSummary:
    """Classify every (G, H) pair over the catalog and collect mismatches.

    Record order is deterministic: catalog order (which sorts by group
    order), then subgroup member sets lexicographically.
    """
    groups = [g for g in catalog if max_order is None or g.order <= max_order]
    if jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            chunks = pool.map(_sweep_one_group, groups)
        records = [r for chunk in chunks for r in chunk]
    else:
        records = [r for g in groups for r in _sweep_one_group(g)]
    mismatches = [r for r in records if not (r.genus_match and r.crosscap_match)]
    clause_instances: dict[str, list[str]] = {}
    for r in records:
        key = f"(|H|={r.h_order}, {r.quotient_label})"
        clause_instances.setdefault(f"genus:{r.genus_clause}", []).append(key)
        clause_instances.setdefault(f"crosscap:{r.crosscap_clause}", []).append(key)
    return SweepSummary(pairs_checked=len(records), mismatches=mismatches,
                        records=records, clause_instances=clause_instances)


def _sweep_one_group(group: FiniteGroup) -> list[ClassificationRecord]:
    return [classify_pair(group, h) for h in proper_nontrivial_normal_subgroups(group)]


def write_report_jsonl(summary: SweepSummary, path) -> None:
    """Newline-delimited records, one per pair, summary record last."""
    from pathlib import Path

    lines = [json.dumps(r.to_json_dict(), sort_keys=True) for r in summary.records]
    lines.append(json.dumps({"summary": summary.to_json_dict()}, sort_keys=True))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def mutation_mismatch_counts(catalog, max_order: int | None = None) -> dict[str, int]:
    """Sweep mismatch count produced by disabling each predicate clause alone.

    Invariants are computed once; only the predictions are re-evaluated.
    """
    base = sweep(catalog, max_order)
    out: dict[str, int] = {}
    for kind, clauses in (("genus", GENUS_CLAUSES), ("crosscap", CROSSCAP_CLAUSES)):
        for clause in clauses:
            disabled = frozenset({clause.clause_id})
            mismatches = 0
            for r in base.records:
                if kind == "genus":
                    cls, _ = predict_genus_class(r.h_order, r.quotient, disabled)
                    ok = estimate_matches_class(r.computed_genus, cls) and r.crosscap_match
                else:
                    cls, _ = predict_crosscap_class(r.h_order, r.quotient, disabled)
                    ok = estimate_matches_class(r.computed_crosscap, cls) and r.genus_match
                if not ok:
                    mismatches += 1
            out[f"{kind}:{clause.clause_id}"] = mismatches
    return out


@dataclass(frozen=True)
class PreliminaryCheck:
    name: str
    instances: int
    failures: int
    witnesses: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.failures == 0


def verify_preliminaries(catalog) -> list[PreliminaryCheck]:
    """Instance-wise verification of the group-theoretic facts over the catalog."""
    checks: list[PreliminaryCheck] = []

    def run(name: str, rows):
        instances = 0
        failures = 0
        witnesses: list[str] = []
        for desc, ok in rows:
            instances += 1
            if not ok:
                failures += 1
                witnesses.append(desc)
            elif len(witnesses) < 3 and failures == 0:
                witnesses.append(desc)
        checks.append(PreliminaryCheck(name=name, instances=instances,
                                       failures=failures, witnesses=tuple(witnesses)))

    def primes(n: int):
        p, out = 2, []
        while p * p <= n:
            if n % p == 0:
                out.append(p)
                while n % p == 0:
                    n //= p
            p += 1
        if n > 1:
            out.append(n)
        return out

    # congruence s_p = 1 (mod p) for every group and prime divisor
    rows = []
    for g in catalog:
        for p in primes(g.order):
            sp = count_cyclic_subgroups(g, p)
            rows.append((f"{g.name}: s_{p}={sp}", sp % p == 1))
    run("frobenius-congruence", rows)

    # p-group congruences: s_p = 1+p (mod p^2) and p | s_{p^i} for 2 <= i <= k
    rows = []
    for g in catalog:
        ps = primes(g.order)
        if g.order == 1 or len(ps) != 1:
            continue
        p = ps[0]
        exp = exponent(g)
        k = 0
        while p ** (k + 1) <= exp:
            k += 1
        cyclic_g = count_cyclic_subgroups(g, g.order) == 1
        if cyclic_g:
            continue
        if p == 2 and is_maximal_class(g):
            continue
        sp = count_cyclic_subgroups(g, p)
        rows.append((f"{g.name}: s_{p}={sp} = 1+{p} (mod {p * p})",
                     sp % (p * p) == (1 + p) % (p * p)))
        for i in range(2, k + 1):
            spi = count_cyclic_subgroups(g, p ** i)
            rows.append((f"{g.name}: {p} | s_{p ** i}={spi}", spi % p == 0))
    run("p-group-congruences", rows)

    # the three 2-group families with some s_{2^i} = 1, plus their counts
    rows = []
    for g in catalog:
        ps = primes(g.order)
        if g.order < 4 or ps != [2]:
            continue
        exp = exponent(g)
        k = exp.bit_length() - 1
        ones = [i for i in range(1, k + 1) if count_cyclic_subgroups(g, 2 ** i) == 1]
        label = iso_label(g)
        if not ones:
            rows.append((f"{g.name}: no unique cyclic subgroup, not D/Q/SD/cyclic",
                         label not in ("D8", "D16", "Q8", "Q16", "SD16")
                         or label.startswith("Z")))
            continue
        cyclic_g = count_cyclic_subgroups(g, g.order) == 1
        expected = cyclic_g or label in ("D8", "D16", "Q8", "Q16", "SD16")
        rows.append((f"{g.name}: s_2^i=1 for i={ones}, label {label}", expected))
        if label in ("D8", "D16"):
            kk = k
            rows.append((f"{g.name}: s_2 = 1+2^{kk}",
                         count_cyclic_subgroups(g, 2) == 1 + 2 ** kk))
        if label in ("Q8", "Q16"):
            kk = k
            rows.append((f"{g.name}: s_4 = 1+2^{kk - 1}",
                         count_cyclic_subgroups(g, 4) == 1 + 2 ** (kk - 1)))
        if label == "SD16":
            rows.append((f"{g.name}: s_2 = 1+2^{k - 1}",
                         count_cyclic_subgroups(g, 2) == 1 + 2 ** (k - 1)))
            rows.append((f"{g.name}: s_4 = 1+2^{k - 2}",
                         count_cyclic_subgroups(g, 4) == 1 + 2 ** (k - 2)))
    run("unique-cyclic-2-groups", rows)

    # p-groups of exponent p^2 with a unique cyclic subgroup of order p^2
    rows = []
    for g in catalog:
        ps = primes(g.order)
        if g.order == 1 or len(ps) != 1:
            continue
        p = ps[0]
        if exponent(g) != p * p:
            continue
        label = iso_label(g)
        if count_cyclic_subgroups(g, p * p) == 1:
            allowed = ("Z4", "D8") if p == 2 else (f"Z{p * p}",)
            rows.append((f"{g.name}: unique C_{p * p}, label {label}", label in allowed))
    run("unique-order-p2-subgroup", rows)

    # exponent-p^2 groups: unique order-p^2 subgroup or two meeting in order p
    rows = []
    for g in catalog:
        ps = primes(g.order)
        if g.order == 1 or len(ps) != 1:
            continue
        p = ps[0]
        if exponent(g) != p * p:
            continue
        from .groups import cyclic_subgroup

        subs = {cyclic_subgroup(g, x) for x in g.elements()
                if element_order(g, x) == p * p}
        if len(subs) == 1:
            rows.append((f"{g.name}: unique cyclic of order {p * p}", True))
        else:
            subs = sorted(subs, key=sorted)
            ok = any(len(a & b) == p for i, a in enumerate(subs) for b in subs[i + 1:])
            rows.append((f"{g.name}: {len(subs)} cyclics, some pair meets in order {p}", ok))
    run("order-p2-intersections", rows)

    # element orders within {1,2,3,4} and a unique order-3 subgroup force Z3/S3
    rows = []
    for g in catalog:
        if not element_order_set(g) <= {1, 2, 3, 4}:
            continue
        if count_cyclic_subgroups(g, 3) != 1:
            continue
        label = iso_label(g)
        rows.append((f"{g.name}: label {label}", label in ("Z3", "S3")))
    run("unique-order-3-subgroup", rows)

    # completeness of Gamma_H(G) iff G/H is a cyclic p-group
    rows = []
    for g in catalog:
        for h in proper_nontrivial_normal_subgroups(g):
            nsbp = nsb_power_graph(g, h)
            comp = is_complete_nsbp(nsbp)
            cyc = quotient_is_cyclic_prime_power(nsbp.quotient)
            rows.append((f"{g.name}, |H|={h.order}: complete={comp}", comp == cyc))
    run("completeness-criterion", rows)

    # all-or-nothing coset adjacency on every pair
    rows = []
    for g in catalog:
        for h in proper_nontrivial_normal_subgroups(g):
            nsbp = nsb_power_graph(g, h)
            rows.append((f"{g.name}, |H|={h.order}", validate_coset_adjacency(nsbp)))
    run("coset-adjacency", rows)

    return checks
