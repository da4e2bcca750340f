"""Ground RDF data model: IRIs, triples, graphs, and solution mappings.

IRIs are bare ASCII identifiers (no angle brackets or namespaces), and the
graph text format is a line-oriented N-Triples subset. Everything here is
immutable and hashable; the mapping algebra (`compatible`, `subsumed_mapping`,
`merge`) is shared by the evaluator and the analysis routines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping as MappingABC

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Syntax error in one of the text formats, with a 1-based position."""

    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


def _check_ident(name: str, kind: str) -> None:
    if not isinstance(name, str) or not _IDENT_RE.match(name):
        raise ValueError(
            f"invalid {kind} name {name!r}: expected an identifier "
            "([A-Za-z_][A-Za-z0-9_]*)"
        )


@dataclass(frozen=True, order=True)
class Iri:
    """A node / edge label; equality is exact string equality."""

    name: str

    def __post_init__(self) -> None:
        _check_ident(self.name, "IRI")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Var:
    """A query variable; rendered with a leading `?` in all text formats."""

    name: str  # stored without the sigil

    def __post_init__(self) -> None:
        _check_ident(self.name, "variable")

    def __str__(self) -> str:
        return "?" + self.name


@dataclass(frozen=True, order=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: Iri

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object} ."


class Graph:
    """A finite, duplicate-free set of ground triples."""

    __slots__ = ("triples",)

    def __init__(self, triples: Iterable[Triple] = ()):
        self.triples: frozenset[Triple] = frozenset(triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self.triples

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.sorted_triples())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.triples == other.triples

    def __hash__(self) -> int:
        return hash(self.triples)

    def __repr__(self) -> str:
        return f"Graph(<{len(self.triples)} triples>)"

    def sorted_triples(self) -> list[Triple]:
        return sorted(self.triples)

    def iris(self) -> set[Iri]:
        """All IRIs occurring in any position of any triple."""
        out: set[Iri] = set()
        for t in self.triples:
            out.add(t.subject)
            out.add(t.predicate)
            out.add(t.object)
        return out


class Mapping:
    """A partial function from variables to IRIs: the solution object.

    Equality is extensional (same domain, same values); instances are
    hashable so solution sets can deduplicate them.
    """

    __slots__ = ("_dict", "_items")

    def __init__(self, bindings: MappingABC[Var, Iri] | Iterable[tuple[Var, Iri]] = ()):
        d = dict(bindings)
        self._dict: dict[Var, Iri] = d
        self._items: tuple[tuple[Var, Iri], ...] = tuple(
            sorted(d.items(), key=lambda kv: kv[0].name)
        )

    @property
    def domain(self) -> frozenset[Var]:
        return frozenset(self._dict)

    def get(self, var: Var) -> Iri | None:
        return self._dict.get(var)

    def __getitem__(self, var: Var) -> Iri:
        return self._dict[var]

    def __contains__(self, var: Var) -> bool:
        return var in self._dict

    def items(self) -> tuple[tuple[Var, Iri], ...]:
        return self._items

    def as_dict(self) -> dict[Var, Iri]:
        return dict(self._dict)

    def __len__(self) -> int:
        return len(self._dict)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Mapping) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}->{i}" for v, i in self._items)
        return "{" + inner + "}"

    @property
    def sort_key(self) -> tuple[tuple[str, str], ...]:
        """Canonical ordering key; used wherever a deterministic order is needed."""
        return tuple((v.name, i.name) for v, i in self._items)

    def to_jsonable(self) -> dict[str, str]:
        return {str(v): i.name for v, i in self._items}


EMPTY_MAPPING = Mapping()


def compatible(m1: Mapping, m2: Mapping) -> bool:
    """True iff the mappings agree on every shared variable."""
    small, big = (m1, m2) if len(m1) <= len(m2) else (m2, m1)
    for v, i in small.items():
        other = big.get(v)
        if other is not None and other != i:
            return False
    return True


def subsumed_mapping(m1: Mapping, m2: Mapping) -> bool:
    """True iff m2 extends m1: compatible and Dom(m1) is a subset of Dom(m2)."""
    return all(m2.get(v) == i for v, i in m1.items())


def merge(m1: Mapping, m2: Mapping) -> Mapping:
    """Union of two compatible mappings; raises ValueError if they conflict."""
    if not compatible(m1, m2):
        raise ValueError(f"cannot merge incompatible mappings {m1!r} and {m2!r}")
    d = m1.as_dict()
    d.update(m2.items())
    return Mapping(d)


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    One triple per line as `subject predicate object .` with arbitrary
    whitespace between tokens; `#` starts a comment line; blank lines are
    ignored. Variables are rejected: graphs are ground.
    """
    triples: list[Triple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[-1] != ".":
            raise ParseError("expected triple terminated by '.'", lineno)
        if len(tokens) != 4:
            raise ParseError(
                f"expected 'subject predicate object .', got {len(tokens) - 1} terms",
                lineno,
            )
        terms: list[Iri] = []
        for tok in tokens[:3]:
            if tok.startswith("?"):
                raise ParseError(
                    f"variable {tok!r} not allowed in a ground graph", lineno
                )
            if not _IDENT_RE.match(tok):
                raise ParseError(f"invalid token {tok!r}", lineno)
            terms.append(Iri(tok))
        triples.append(Triple(terms[0], terms[1], terms[2]))
    return Graph(triples)


def serialize_graph(g: Graph) -> str:
    """Canonical text form: one triple per line in lexicographic (s, p, o) order."""
    return "".join(
        f"{t.subject.name} {t.predicate.name} {t.object.name} .\n"
        for t in g.sorted_triples()
    )
