"""Join/union-of-complete-graphs expression trees: realize, recognize, parse, print.

Canonical forms are flattened (no Union under Union, no Join under Join),
Join nodes merge all their complete parts into a single leaf, and children
are sorted, so structurally equal graphs get equal forms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graphs import SimpleGraph, complete, induced_subgraph, join, union


@dataclass(frozen=True)
class Complete:
    n: int


@dataclass(frozen=True)
class Union:
    parts: tuple


@dataclass(frozen=True)
class Join:
    parts: tuple


Form = Complete | Union | Join


class FormSyntaxError(ValueError):
    """Raised for malformed form expressions."""


def vertex_count(form: Form) -> int:
    if isinstance(form, Complete):
        return form.n
    return sum(vertex_count(p) for p in form.parts)


def _sort_key(form: Form):
    if isinstance(form, Complete):
        return (0, form.n)
    rank = 1 if isinstance(form, Union) else 2
    return (rank, vertex_count(form), tuple(_sort_key(p) for p in form.parts))


def canonical(form: Form) -> Form:
    """Flatten, merge complete parts of joins, sort children recursively."""
    if isinstance(form, Complete):
        if form.n < 1:
            raise FormSyntaxError("complete graphs need at least one vertex")
        return form
    parts = []
    for p in form.parts:
        c = canonical(p)
        if isinstance(c, type(form)):
            parts.extend(c.parts)
        else:
            parts.append(c)
    if isinstance(form, Join):
        total = sum(p.n for p in parts if isinstance(p, Complete))
        rest = [p for p in parts if not isinstance(p, Complete)]
        if total and not rest:
            return Complete(total)
        if total:
            parts = [Complete(total)] + rest
        else:
            parts = rest
    if len(parts) == 1:
        return parts[0]
    if not parts:
        raise FormSyntaxError("empty union/join")
    return type(form)(tuple(sorted(parts, key=_sort_key)))


def realize(form: Form) -> SimpleGraph:
    """Graph realizing the form, with deterministic leaf-order vertex numbering."""
    if isinstance(form, Complete):
        return complete(form.n)
    children = [realize(p) for p in form.parts]
    return union(children) if isinstance(form, Union) else join(children)


def recognize(g: SimpleGraph) -> Form | None:
    """Recover a join/union-of-completes form, or None when unrecognized.

    Complete graphs map to leaves, disconnected graphs to unions of their
    components' forms, and connected graphs to Join(K_u, rest) where u counts
    the universal vertices; a connected incomplete graph without universal
    vertices is unrecognized.
    """
    if g.n == 0:
        return None
    if g.is_complete():
        return Complete(g.n)
    comps = g.components()
    if len(comps) > 1:
        parts = []
        for comp in comps:
            sub = recognize(induced_subgraph(g, comp))
            if sub is None:
                return None
            parts.append(sub)
        return canonical(Union(tuple(parts)))
    universal = [v for v in range(g.n) if g.degree(v) == g.n - 1]
    if not universal:
        return None
    rest = recognize(induced_subgraph(g, [v for v in range(g.n) if v not in set(universal)]))
    if rest is None:
        return None
    return canonical(Join((Complete(len(universal)), rest)))


def format_form(form: Form) -> str:
    """Render in the CLI grammar: ``Kn``, ``mKn``, `` u `` for union, `` v `` for join.

    The output parses back to the same canonical form.
    """
    form = canonical(form)

    def fmt(f: Form, nested: bool) -> str:
        if isinstance(f, Complete):
            return f"K{f.n}"
        if isinstance(f, Union):
            chunks: list[str] = []
            i = 0
            parts = f.parts
            while i < len(parts):
                p = parts[i]
                count = 1
                while i + count < len(parts) and parts[i + count] == p:
                    count += 1
                if isinstance(p, Complete) and count > 1:
                    chunks.append(f"{count}K{p.n}")
                else:
                    chunks.extend([fmt(p, nested=True)] * count)
                i += count
            text = " u ".join(chunks)
            return f"({text})" if nested and len(chunks) > 1 else text
        text = " v ".join(fmt(p, nested=True) for p in f.parts)
        return f"({text})" if nested else text

    return fmt(form, nested=False)


_TOKEN = re.compile(r"\s*(?:(\d+)\s*K\s*(\d+)|K\s*(\d+)|([uv()])|(\S))")


def parse_form(text: str) -> Form:
    """Parse the form grammar; ``v`` binds looser than ``u``.

    expr := term (``v`` term)*;  term := factor (``u`` factor)*;
    factor := [m]K<n> | ``(`` expr ``)``.
    """
    tokens: list = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("copies", int(m.group(1)), int(m.group(2))))
        elif m.group(3) is not None:
            tokens.append(("K", int(m.group(3))))
        elif m.group(4) is not None:
            tokens.append((m.group(4),))
        else:
            raise FormSyntaxError(f"unexpected character {m.group(5)!r} in form")
    tokens.append(("end",))
    idx = 0

    def peek() -> str:
        return tokens[idx][0]

    def take(kind: str):
        nonlocal idx
        if tokens[idx][0] != kind:
            raise FormSyntaxError(f"expected {kind!r}, found {tokens[idx][0]!r}")
        tok = tokens[idx]
        idx += 1
        return tok

    def factor() -> Form:
        nonlocal idx
        kind = peek()
        if kind == "K":
            return Complete(take("K")[1])
        if kind == "copies":
            _, m_, n_ = take("copies")
            if m_ < 1:
                raise FormSyntaxError("copy count must be positive")
            return Union(tuple(Complete(n_) for _ in range(m_))) if m_ > 1 else Complete(n_)
        if kind == "(":
            take("(")
            inner = expr()
            take(")")
            return inner
        raise FormSyntaxError(f"expected a complete-graph factor, found {kind!r}")

    def term() -> Form:
        parts = [factor()]
        while peek() == "u":
            take("u")
            parts.append(factor())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def expr() -> Form:
        parts = [term()]
        while peek() == "v":
            take("v")
            parts.append(term())
        return parts[0] if len(parts) == 1 else Join(tuple(parts))

    result = expr()
    take("end")
    return canonical(result)
