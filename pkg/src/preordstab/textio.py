"""Plain-text documents for preorders and maps, and DOT export.

A file holds any number of blocks::

    preorder P
    elements 3
    labels a b c        # optional, defaults to 0 1 2
    pairs
    a b
    b c
    end

    map f
    from P
    to Q
    domain a b          # optional, defaults to the assigned elements
    a -> x
    b -> y
    end

Preorders store generator pairs; loading closes them.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .preorder import (
    ComplementedSub,
    FinPreorder,
    MonotoneMap,
    PreorderError,
    from_generators,
)
from .stable import PartialMap


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class PreorderDocument:
    name: str
    size: int
    pairs: tuple = ()
    labels: tuple = ()

    def __post_init__(self):
        labels = tuple(self.labels) or tuple(str(i) for i in range(self.size))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "pairs", tuple(tuple(p) for p in self.pairs))
        if len(labels) != self.size:
            raise DocumentError(f"preorder {self.name}: {len(labels)} labels for {self.size} elements")
        if len(set(labels)) != len(labels):
            raise DocumentError(f"preorder {self.name}: duplicate label")
        known = set(labels)
        for x, y in self.pairs:
            if x not in known or y not in known:
                raise DocumentError(f"preorder {self.name}: unknown label in pair ({x}, {y})")

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DocumentError(f"preorder {self.name}: unknown label {label!r}") from None

    def to_preorder(self) -> FinPreorder:
        return from_generators(self.size, [(self.index(x), self.index(y)) for x, y in self.pairs])


@dataclass(frozen=True)
class MapDocument:
    name: str
    source: str
    target: str
    assignments: tuple = ()
    domain: tuple | None = None


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_documents(text: str) -> list:
    docs = []
    lines = list(_tokens(text))
    pos = 0

    def take(keyword, count=None):
        nonlocal pos
        if pos >= len(lines):
            raise DocumentError(f"expected '{keyword}' but the input ended")
        lineno, toks = lines[pos]
        if toks[0] != keyword or (count is not None and len(toks) != count + 1):
            raise DocumentError(f"expected '{keyword}'" + (f" with {count} argument(s)" if count else ""), lineno)
        pos += 1
        return lineno, toks[1:]

    while pos < len(lines):
        lineno, toks = lines[pos]
        if toks[0] == "preorder":
            _, (name,) = take("preorder", 1)
            ln, (count,) = take("elements", 1)
            try:
                size = int(count)
            except ValueError:
                raise DocumentError(f"element count {count!r} is not an integer", ln) from None
            labels = ()
            if pos < len(lines) and lines[pos][1][0] == "labels":
                _, labels = take("labels")
            take("pairs", 0)
            pairs = []
            while pos < len(lines) and lines[pos][1][0] != "end":
                ln, pair = lines[pos]
                if len(pair) != 2:
                    raise DocumentError("a pair line needs exactly two labels", ln)
                pairs.append(tuple(pair))
                pos += 1
            take("end", 0)
            try:
                docs.append(PreorderDocument(name, size, tuple(pairs), tuple(labels)))
            except DocumentError as exc:
                raise DocumentError(str(exc), lineno) from None
        elif toks[0] == "map":
            _, (name,) = take("map", 1)
            _, (source,) = take("from", 1)
            _, (target,) = take("to", 1)
            domain = None
            if pos < len(lines) and lines[pos][1][0] == "domain":
                _, domain = take("domain")
                domain = tuple(domain)
            assignments = []
            while pos < len(lines) and lines[pos][1][0] != "end":
                ln, parts = lines[pos]
                if len(parts) != 3 or parts[1] != "->":
                    raise DocumentError("an assignment line reads 'x -> y'", ln)
                assignments.append((parts[0], parts[2]))
                pos += 1
            take("end", 0)
            docs.append(MapDocument(name, source, target, tuple(assignments), domain))
        else:
            raise DocumentError(f"unexpected {toks[0]!r}; expected 'preorder' or 'map'", lineno)
    return docs


def parse_preorder(text: str) -> PreorderDocument:
    docs = [d for d in parse_documents(text) if isinstance(d, PreorderDocument)]
    if len(docs) != 1:
        raise DocumentError(f"expected exactly one preorder, found {len(docs)}")
    return docs[0]


def serialize_preorder(doc: PreorderDocument) -> str:
    out = [f"preorder {doc.name}", f"elements {doc.size}"]
    if doc.labels != tuple(str(i) for i in range(doc.size)):
        out.append("labels " + " ".join(doc.labels))
    out.append("pairs")
    seen = sorted({(doc.index(x), doc.index(y)) for x, y in doc.pairs if x != y})
    out.extend(f"{doc.labels[i]} {doc.labels[j]}" for i, j in seen)
    out.append("end")
    return "\n".join(out) + "\n"


def serialize_map(doc: MapDocument, source: PreorderDocument | None = None) -> str:
    out = [f"map {doc.name}", f"from {doc.source}", f"to {doc.target}"]
    assignments = list(dict(doc.assignments).items())
    domain = doc.domain
    if source is not None:
        assignments.sort(key=lambda kv: source.index(kv[0]))
        if domain is not None:
            domain = tuple(sorted(set(domain), key=source.index))
    if domain is not None:
        out.append("domain " + " ".join(domain) if domain else "domain")
    out.extend(f"{x} -> {y}" for x, y in assignments)
    out.append("end")
    return "\n".join(out) + "\n"


def serialize_documents(docs) -> str:
    by_name = {d.name: d for d in docs if isinstance(d, PreorderDocument)}
    parts = []
    for d in docs:
        if isinstance(d, PreorderDocument):
            parts.append(serialize_preorder(d))
        else:
            parts.append(serialize_map(d, by_name.get(d.source)))
    return "\n".join(parts)


def canonical(text: str) -> str:
    return serialize_documents(parse_documents(text))


def preorder_document(a: FinPreorder, name: str, labels=None) -> PreorderDocument:
    """Document listing every strict pair of ``a``."""
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(a.size))
    pairs = tuple((labels[i], labels[j]) for i, j in sorted(a.rel) if i != j)
    return PreorderDocument(name, a.size, pairs, labels)


def map_document(m, name: str, source: PreorderDocument, target: PreorderDocument) -> MapDocument:
    """Document for a MonotoneMap, PartialMap or StableMorphism."""
    if isinstance(m, MonotoneMap):
        values, domain = m.map, None
    else:
        values = m.map
        domain = tuple(source.labels[i] for i, x in enumerate(values) if x is not None)
    assignments = tuple(
        (source.labels[i], target.labels[x]) for i, x in enumerate(values) if x is not None
    )
    return MapDocument(name, source.name, target.name, assignments, domain)


class Workspace:
    """The preorders and maps of a parsed file, resolved by name."""

    def __init__(self, docs):
        self.docs = list(docs)
        self.preorder_docs = {}
        self.map_docs = {}
        for d in self.docs:
            table = self.preorder_docs if isinstance(d, PreorderDocument) else self.map_docs
            if d.name in table:
                raise DocumentError(f"duplicate name {d.name!r}")
            table[d.name] = d

    @classmethod
    def from_text(cls, text: str) -> "Workspace":
        return cls(parse_documents(text))

    def preorder_doc(self, name: str | None = None) -> PreorderDocument:
        if name is None:
            if not self.preorder_docs:
                raise DocumentError("no preorder in input")
            return next(iter(self.preorder_docs.values()))
        if name not in self.preorder_docs:
            raise DocumentError(f"no preorder named {name!r}")
        return self.preorder_docs[name]

    def preorder(self, name: str | None = None) -> FinPreorder:
        return self.preorder_doc(name).to_preorder()

    def map_doc(self, name: str | None = None) -> MapDocument:
        if name is None:
            if not self.map_docs:
                raise DocumentError("no map in input")
            return next(iter(self.map_docs.values()))
        if name not in self.map_docs:
            raise DocumentError(f"no map named {name!r}")
        return self.map_docs[name]

    def partial_map(self, name: str | None = None) -> PartialMap:
        doc = self.map_doc(name)
        src_doc, dst_doc = self.preorder_doc(doc.source), self.preorder_doc(doc.target)
        src, dst = src_doc.to_preorder(), dst_doc.to_preorder()
        raw = [None] * src.size
        for x, y in doc.assignments:
            i = src_doc.index(x)
            if raw[i] is not None:
                raise DocumentError(f"map {doc.name}: {x} assigned twice")
            raw[i] = dst_doc.index(y)
        assigned = {i for i, v in enumerate(raw) if v is not None}
        members = assigned if doc.domain is None else {src_doc.index(x) for x in doc.domain}
        if members != assigned:
            raise DocumentError(f"map {doc.name}: assignments must cover exactly the domain")
        domain = ComplementedSub(src, frozenset(members))
        try:
            return PartialMap(src, dst, domain, tuple(raw))
        except PreorderError as exc:
            raise DocumentError(f"map {doc.name}: {exc}") from None

    def monotone_map(self, name: str | None = None) -> MonotoneMap:
        p = self.partial_map(name)
        if len(p.domain.members) != p.source.size:
            raise DocumentError(f"map {self.map_doc(name).name} is partial; a total map is required")
        return MonotoneMap(p.source, p.target, p.map)


def to_dot(a: FinPreorder, name: str = "P", labels=None, full: bool = False) -> str:
    """DOT digraph of ``a``.

    By default reflexive loops and edges implied through an element strictly
    between the endpoints are omitted; ``full`` emits every strict pair.
    """
    labels = labels or [str(i) for i in range(a.size)]
    out = [f"digraph {name} {{"]
    for i in range(a.size):
        out.append(f'  n{i} [label="{labels[i]}"];')

    def equiv(x, y):
        return a.leq(x, y) and a.leq(y, x)

    for i, j in sorted(a.rel):
        if i == j:
            continue
        if not full and not equiv(i, j):
            between = any(
                a.leq(i, k) and a.leq(k, j) and not equiv(k, i) and not equiv(k, j) for k in range(a.size)
            )
            if between:
                continue
        out.append(f"  n{i} -> n{j};")
    out.append("}")
    return "\n".join(out) + "\n"
