"""Bound quiver presentations A = kQ/I and their Tits forms.

A path is written left to right in traversal order: ``a.b`` means arrow
``a`` first, then ``b``.
"""

from __future__ import annotations

import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .unitform import DimensionError, UnitForm

Path = tuple[str, ...]


class PresentationError(ValueError):
    pass


class ParseError(PresentationError):
    def __init__(self, msg: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {msg}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("duplicate vertex")
        vs = set(self.vertices)
        seen = set()
        for a in self.arrows:
            if a.label in seen:
                raise PresentationError(f"duplicate arrow label {a.label!r}")
            seen.add(a.label)
            if a.source not in vs or a.target not in vs:
                raise PresentationError(f"arrow {a.label!r} uses an unknown vertex")
            if a.source == a.target:
                raise PresentationError(f"arrow {a.label!r} is a loop")
        if self._has_cycle():
            raise PresentationError("quiver has an oriented cycle")

    def _has_cycle(self) -> bool:
        indeg = Counter(a.target for a in self.arrows)
        out = defaultdict(list)
        for a in self.arrows:
            out[a.source].append(a.target)
        stack = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for t in out[v]:
                indeg[t] -= 1
                if indeg[t] == 0:
                    stack.append(t)
        return seen != len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def has_double_arrows(self) -> bool:
        pairs = Counter((a.source, a.target) for a in self.arrows)
        return any(c > 1 for c in pairs.values())

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def index(self, vertex: str) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise KeyError(f"unknown vertex {vertex!r}") from None

    def path_vertices(self, path: Path) -> tuple[str, ...]:
        arrows = [self.arrow(l) for l in path]
        return tuple(a.source for a in arrows) + (arrows[-1].target,)


@dataclass(frozen=True)
class Relation:
    source: str
    target: str
    terms: tuple[tuple[Fraction, Path], ...]

    def paths(self) -> tuple[Path, ...]:
        return tuple(p for _, p in self.terms)


def make_relation(quiver: Quiver, terms: Sequence[tuple[Fraction, Path]]) -> Relation:
    """Validate, merge repeated paths, drop zero coefficients."""
    merged: dict[Path, Fraction] = {}
    ends = set()
    for c, path in terms:
        if len(path) < 2:
            raise PresentationError(f"path {'.'.join(path)} has length < 2")
        for l in path:
            try:
                quiver.arrow(l)
            except KeyError:
                raise PresentationError(f"unknown arrow label {l!r}") from None
        for a, b in zip(path, path[1:]):
            if quiver.arrow(a).target != quiver.arrow(b).source:
                raise PresentationError(
                    f"path {'.'.join(path)} is not composable at {a}.{b}")
        ends.add((quiver.arrow(path[0]).source, quiver.arrow(path[-1]).target))
        merged[path] = merged.get(path, Fraction(0)) + Fraction(c)
    if len(ends) != 1:
        raise PresentationError("relation terms do not share source and target")
    kept = tuple((c, p) for p, c in merged.items() if c != 0)
    if not kept:
        raise PresentationError("relation has no nonzero coefficient")
    (s, t), = ends
    return Relation(s, t, kept)


def _independent(relations: Sequence[Relation]) -> list[bool]:
    """Earliest-wins independence flags of coefficient vectors."""
    paths = sorted({p for r in relations for p in r.paths()})
    flags, kept = [], []
    for r in relations:
        coeff = dict((p, c) for c, p in r.terms)
        row = [coeff.get(p, Fraction(0)) for p in paths]
        ok = exact.rank(kept + [row]) == len(kept) + 1
        flags.append(ok)
        if ok:
            kept.append(row)
    return flags


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        blocks = defaultdict(list)
        for r in self.relations:
            blocks[(r.source, r.target)].append(r)
        for (s, t), rels in blocks.items():
            if not all(_independent(rels)):
                raise PresentationError(f"relations from {s} to {t} are linearly dependent")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def n(self) -> int:
        return self.quiver.n

    def relation_count(self, i: str, j: str) -> int:
        return sum(1 for r in self.relations if r.source == i and r.target == j)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"label": a.label, "source": a.source, "target": a.target}
                       for a in self.quiver.arrows],
            "relations": [{"source": r.source, "target": r.target,
                           "terms": [[str(c), ".".join(p)] for c, p in r.terms]}
                          for r in self.relations],
            "tits_matrix": tits_form(self).gram(),
        }


def tits_form(p: Presentation) -> UnitForm:
    vs = p.vertices
    n = len(vs)
    m = [[0] * n for _ in range(n)]
    for a in p.quiver.arrows:
        i, j = vs.index(a.source), vs.index(a.target)
        m[i][j] -= 1
        m[j][i] -= 1
    for r in p.relations:
        i, j = vs.index(r.source), vs.index(r.target)
        m[i][j] += 1
        m[j][i] += 1
    return UnitForm(tuple(tuple(r) for r in m), vs)


def euler_bilinear(p: Presentation, v: Sequence[int], w: Sequence[int]) -> int:
    """<v, w>_A: sum v(i)w(i) - sum over arrows i->j of v(i)w(j)
    + sum over relations from i to j of v(i)w(j).  Not symmetric."""
    n = p.n
    if len(v) != n or len(w) != n:
        raise DimensionError(f"expected vectors of length {n}")
    idx = {x: k for k, x in enumerate(p.vertices)}
    total = sum(a * b for a, b in zip(v, w))
    for a in p.quiver.arrows:
        total -= v[idx[a.source]] * w[idx[a.target]]
    for r in p.relations:
        total += v[idx[r.source]] * w[idx[r.target]]
    return total


def quotient_by_vertex(p: Presentation, a: str) -> Presentation:
    """Presentation of A / A e_a A."""
    if a not in p.vertices:
        raise KeyError(f"unknown vertex {a!r}")
    q = p.quiver
    arrows = tuple(x for x in q.arrows if a not in (x.source, x.target))
    quiver = Quiver(tuple(v for v in q.vertices if v != a), arrows)
    truncated = []
    for r in p.relations:
        if a in (r.source, r.target):
            continue
        terms = tuple((c, path) for c, path in r.terms if a not in q.path_vertices(path))
        if terms:
            truncated.append(Relation(r.source, r.target, terms))
    blocks = defaultdict(list)
    for r in truncated:
        blocks[(r.source, r.target)].append(r)
    keep = set()
    for rels in blocks.values():
        for r, ok in zip(rels, _independent(rels)):
            if ok:
                keep.add(id(r))
    return Presentation(quiver, tuple(r for r in truncated if id(r) in keep))


# ---------------------------------------------------------------- text format

_SECTION = re.compile(r"^\[(\w+)\]$")
_VERTEX = re.compile(r"^vertex\s+(\S+)$")
_ARROW = re.compile(r"^arrow\s+([\w']+)\s*:\s*(\S+)\s*->\s*(\S+)$")
_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*)?\s*([\w']+(?:\.[\w']+)*)\s*")
_N = re.compile(r"^n\s*=\s*(\d+)$")
_EDGE = re.compile(r"^edge\s+(\d+)\s+(\d+)\s+(-?\d+)$")
_LABEL = re.compile(r"^label\s+(\d+)\s+(\S+)$")


@dataclass(frozen=True)
class Document:
    """A parsed input file: exactly one of ``presentation`` or ``form``."""

    presentation: Presentation | None
    form: UnitForm

    @property
    def kind(self) -> str:
        return "quiver" if self.presentation is not None else "form"


def _parse_relation(quiver: Quiver, body: str, lineno: int, offset: int) -> Relation:
    pos = 0
    terms = []
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError("malformed relation term", lineno, offset + pos + 1)
        sign, coef, path = m.groups()
        if terms and sign is None:
            raise ParseError("expected + or - between terms", lineno, offset + pos + 1)
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        terms.append((c, tuple(path.split("."))))
        pos = m.end()
    if not terms:
        raise ParseError("empty relation", lineno, offset + 1)
    try:
        return make_relation(quiver, terms)
    except PresentationError as exc:
        raise ParseError(str(exc), lineno, offset + 1) from None


def parse_document(text: str) -> Document:
    section = None
    sections_seen = []
    vertices, arrows = [], []
    rel_lines = []
    n = None
    edges, labels = [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw.index(line[0]) + 1
        m = _SECTION.match(line)
        if m:
            section = m.group(1)
            if section not in ("quiver", "relations", "form"):
                raise ParseError(f"unknown section [{section}]", lineno, col)
            if section in sections_seen:
                raise ParseError(f"repeated section [{section}]", lineno, col)
            sections_seen.append(section)
            continue
        if section is None:
            raise ParseError("content before any section header", lineno, col)
        if section == "quiver":
            if m := _VERTEX.match(line):
                vertices.append((m.group(1), lineno))
            elif m := _ARROW.match(line):
                arrows.append((Arrow(*m.groups()), lineno))
            else:
                raise ParseError("expected 'vertex <id>' or 'arrow <l>: <s> -> <t>'", lineno, col)
        elif section == "relations":
            if not line.startswith("rel:"):
                raise ParseError("expected 'rel: ...'", lineno, col)
            rel_lines.append((line[4:], lineno, col + 3 + (len(line[4:]) - len(line[4:].lstrip()))))
        else:
            if m := _N.match(line):
                if n is not None:
                    raise ParseError("n given twice", lineno, col)
                n = int(m.group(1))
            elif m := _EDGE.match(line):
                edges.append((int(m.group(1)), int(m.group(2)), int(m.group(3)), lineno))
            elif m := _LABEL.match(line):
                labels[int(m.group(1))] = (m.group(2), lineno)
            else:
                raise ParseError("expected 'n = <int>', 'edge <i> <j> <q>' or 'label <i> <name>'",
                                 lineno, col)

    has_quiver = "quiver" in sections_seen
    has_form = "form" in sections_seen
    if has_quiver == has_form:
        raise ParseError("exactly one of [quiver] or [form] is required", 1)
    if has_form:
        if "relations" in sections_seen:
            raise ParseError("[relations] only goes with [quiver]", 1)
        return Document(None, _build_form(n, edges, labels))

    verts = []
    for v, lineno in vertices:
        if v in verts:
            raise ParseError(f"duplicate vertex {v!r}", lineno)
        verts.append(v)
    if not verts:
        raise ParseError("a quiver needs at least one vertex", 1)
    try:
        quiver = Quiver(tuple(verts), tuple(a for a, _ in arrows))
    except PresentationError as exc:
        line = next((ln for a, ln in arrows if repr(a.label) in str(exc)),
                    arrows[-1][1] if arrows else 1)
        raise ParseError(str(exc), line) from None
    rels = [_parse_relation(quiver, body.strip(), ln, c) for body, ln, c in rel_lines]
    try:
        pres = Presentation(quiver, tuple(rels))
    except PresentationError as exc:
        raise ParseError(str(exc), rel_lines[-1][1] if rel_lines else 1) from None
    return Document(pres, tits_form(pres))


def _build_form(n, edges, labels) -> UnitForm:
    if n is None or n < 1:
        raise ParseError("[form] needs 'n = <positive int>'", 1)
    m = [[0] * n for _ in range(n)]
    seen = set()
    for i, j, c, lineno in edges:
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise ParseError(f"bad edge indices {i} {j}", lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ParseError(f"edge {i} {j} given twice", lineno)
        seen.add(key)
        m[i - 1][j - 1] = m[j - 1][i - 1] = c
    names = [str(i + 1) for i in range(n)]
    for i, (name, lineno) in labels.items():
        if not 1 <= i <= n:
            raise ParseError(f"label index {i} out of range", lineno)
        names[i - 1] = name
    if len(set(names)) != n:
        raise ParseError("labels must be distinct", 1)
    return UnitForm(tuple(tuple(r) for r in m), tuple(names))


def parse_presentation(text: str) -> Presentation:
    doc = parse_document(text)
    if doc.presentation is None:
        raise ParseError("document holds a [form], not a [quiver]", 1)
    return doc.presentation


def format_presentation(p: Presentation) -> str:
    """Inverse of :func:`parse_presentation` (up to comments/whitespace)."""
    lines = ["[quiver]"]
    lines += [f"vertex {v}" for v in p.vertices]
    lines += [f"arrow {a.label}: {a.source} -> {a.target}" for a in p.quiver.arrows]
    if p.relations:
        lines.append("[relations]")
        for r in p.relations:
            parts = []
            for k, (c, path) in enumerate(r.terms):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                term = ("" if mag == 1 else f"{mag}*") + ".".join(path)
                parts.append((sign + " " if k else ("-" if c < 0 else "")) + term)
            lines.append("rel: " + " ".join(parts))
    return "\n".join(lines) + "\n"
