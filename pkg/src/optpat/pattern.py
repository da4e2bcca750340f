"""Pattern AST for the OPT fragment, its text syntax, occurrence machinery,
and the well-designed / weakly well-designed classifiers.

A pattern is a binary tree whose leaves are basic graph patterns and whose
internal nodes are OPT operators. Occurrences address parse-tree nodes by
their root path, so repeated subpatterns stay distinguishable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .core import Iri, ParseError, Triple, Var

Term = Union[Iri, Var]


@dataclass(frozen=True)
class TriplePattern:
    subject: Term
    predicate: Term
    object: Term

    def terms(self) -> tuple[Term, Term, Term]:
        return (self.subject, self.predicate, self.object)

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object}"


class BasicPattern:
    """A possibly empty, duplicate-free set of triple patterns."""

    __slots__ = ("triples",)

    def __init__(self, triples: Iterable[TriplePattern] = ()):
        self.triples: frozenset[TriplePattern] = frozenset(triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BasicPattern) and self.triples == other.triples

    def __hash__(self) -> int:
        return hash(self.triples)

    def __repr__(self) -> str:
        return f"BasicPattern({sorted(map(str, self.triples))})"

    def sorted_triples(self) -> list[TriplePattern]:
        return sorted(self.triples, key=lambda tp: tuple(map(str, tp.terms())))

    @property
    def vars(self) -> frozenset[Var]:
        return frozenset(t for tp in self.triples for t in tp.terms() if isinstance(t, Var))

    @property
    def constants(self) -> frozenset[Iri]:
        return frozenset(t for tp in self.triples for t in tp.terms() if isinstance(t, Iri))

    def ground_triples(self) -> frozenset[Triple]:
        """The fully ground templates, as graph triples."""
        return frozenset(
            Triple(tp.subject, tp.predicate, tp.object)
            for tp in self.triples
            if not any(isinstance(t, Var) for t in tp.terms())
        )


@dataclass(frozen=True)
class Leaf:
    basic: BasicPattern


@dataclass(frozen=True)
class Opt:
    left: "Pattern"
    right: "Pattern"


Pattern = Union[Leaf, Opt]

LEFT = "L"
RIGHT = "R"


@dataclass(frozen=True)
class Occurrence:
    """Address of a parse-tree node: the branch path from the root."""

    path: tuple[str, ...] = ()

    def child(self, step: str) -> "Occurrence":
        return Occurrence(self.path + (step,))

    def __str__(self) -> str:
        return ".".join(self.path) if self.path else "ε"


ROOT = Occurrence()


def pattern_vars(p: Pattern) -> frozenset[Var]:
    """All variables appearing in any leaf of the pattern."""
    if isinstance(p, Leaf):
        return p.basic.vars
    return pattern_vars(p.left) | pattern_vars(p.right)


def pattern_constants(p: Pattern) -> frozenset[Iri]:
    if isinstance(p, Leaf):
        return p.basic.constants
    return pattern_constants(p.left) | pattern_constants(p.right)


def node_at(p: Pattern, occ: Occurrence) -> Pattern:
    """The subtree addressed by `occ`; raises ValueError on a dangling path."""
    node = p
    for step in occ.path:
        if not isinstance(node, Opt):
            raise ValueError(f"occurrence {occ} does not address a node")
        node = node.left if step == LEFT else node.right
    return node


def occurrences(p: Pattern) -> list[Occurrence]:
    """All node addresses, in preorder."""
    out: list[Occurrence] = []

    def walk(node: Pattern, path: tuple[str, ...]) -> None:
        out.append(Occurrence(path))
        if isinstance(node, Opt):
            walk(node.left, path + (LEFT,))
            walk(node.right, path + (RIGHT,))

    walk(p, ())
    return out


def leaf_occurrences(p: Pattern) -> list[tuple[Occurrence, BasicPattern]]:
    """Leaf addresses with their basic patterns, left to right."""
    out: list[tuple[Occurrence, BasicPattern]] = []

    def walk(node: Pattern, path: tuple[str, ...]) -> None:
        if isinstance(node, Leaf):
            out.append((Occurrence(path), node.basic))
        else:
            walk(node.left, path + (LEFT,))
            walk(node.right, path + (RIGHT,))

    walk(p, ())
    return out


def leaf_basics(p: Pattern) -> list[BasicPattern]:
    return [b for _, b in leaf_occurrences(p)]


def leftmost_basic(p: Pattern) -> BasicPattern:
    node = p
    while isinstance(node, Opt):
        node = node.left
    return node.basic


def opt_occurrences(p: Pattern) -> list[Occurrence]:
    return [o for o in occurrences(p) if isinstance(node_at(p, o), Opt)]


def inside(o1: Occurrence, o2: Occurrence) -> bool:
    """True iff o1 addresses a node within the subtree at o2 (descendant-or-self).

    Reflexivity is deliberate: with strict descendance, the left argument of
    an OPT node would not count as inside itself and left-deep chains would
    misclassify under the dominance check below.
    """
    return o1.path[: len(o2.path)] == o2.path


def dominates(p: Pattern, o1: Occurrence, o2: Occurrence) -> bool:
    """True iff some OPT occurrence has o1 inside its left argument and o2
    inside its right argument."""
    node_at(p, o1)
    node_at(p, o2)
    for j in opt_occurrences(p):
        if inside(o1, j.child(LEFT)) and inside(o2, j.child(RIGHT)):
            return True
    return False


def _var_leaf_sites(p: Pattern) -> dict[Var, list[tuple[str, ...]]]:
    sites: dict[Var, list[tuple[str, ...]]] = {}
    for occ, basic in leaf_occurrences(p):
        for v in basic.vars:
            sites.setdefault(v, []).append(occ.path)
    return sites


def _fresh_right_vars(p: Pattern, occ: Occurrence) -> frozenset[Var]:
    node = node_at(p, occ)
    assert isinstance(node, Opt)
    return pattern_vars(node.right) - pattern_vars(node.left)


def is_well_designed(p: Pattern) -> bool:
    """Check the well-designedness restriction on OPT variables.

    For every OPT occurrence, each variable introduced by its right argument
    must occur in the whole pattern only within that occurrence's subtree.
    """
    sites = _var_leaf_sites(p)
    for occ in opt_occurrences(p):
        prefix = occ.path
        for v in _fresh_right_vars(p, occ):
            for site in sites.get(v, ()):
                if site[: len(prefix)] != prefix:
                    return False
    return True


def is_weakly_well_designed(p: Pattern) -> bool:
    """Check the weaker restriction that permits dominated re-use.

    A variable introduced by an OPT occurrence's right argument may also
    occur outside that occurrence, but only at leaves the occurrence
    dominates. A leaf site is dominated exactly when the lowest common
    ancestor of site and occurrence branches left towards the occurrence and
    right towards the site, which is what the positional check below tests.
    """
    sites = _var_leaf_sites(p)
    for occ in opt_occurrences(p):
        prefix = occ.path
        for v in _fresh_right_vars(p, occ):
            for site in sites.get(v, ()):
                if site[: len(prefix)] == prefix:
                    continue  # inside the occurrence itself
                k = 0
                limit = min(len(prefix), len(site))
                while k < limit and prefix[k] == site[k]:
                    k += 1
                if not (k < len(prefix) and k < len(site) and prefix[k] == LEFT and site[k] == RIGHT):
                    return False
    return True


# --- text syntax ------------------------------------------------------------
#
#   pattern  := basic | "(" pattern "OPT" pattern ")"
#   basic    := "{" [ triple { "." triple } [ "." ] ] "}"
#   triple   := term term term
#   term     := IDENT | "?" IDENT
#
# Whitespace-insensitive; "#" comments run to end of line. Every OPT is
# explicitly parenthesized; there are no precedence rules.


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | var | lbrace | rbrace | lparen | rparen | dot | eof
    text: str
    line: int
    col: int


_PUNCT = {"{": "lbrace", "}": "rbrace", "(": "lparen", ")": "rparen", ".": "dot"}


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
        elif c.isspace():
            i, col = i + 1, col + 1
        elif c == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif c in _PUNCT:
            tokens.append(_Token(_PUNCT[c], c, line, col))
            i, col = i + 1, col + 1
        elif c == "?" or c.isalpha() or c == "_":
            start_line, start_col = line, col
            is_var = c == "?"
            if is_var:
                i, col = i + 1, col + 1
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if not name or name[0].isdigit():
                raise ParseError("expected identifier", start_line, start_col)
            tokens.append(_Token("var" if is_var else "ident", name, start_line, start_col))
            col += j - i
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.take()

    def pattern(self) -> Pattern:
        tok = self.peek()
        if tok.kind == "lparen":
            self.take()
            left = self.pattern()
            kw = self.peek()
            if kw.kind != "ident" or kw.text != "OPT":
                raise ParseError(f"expected 'OPT', found {kw.text or 'end of input'!r}", kw.line, kw.col)
            self.take()
            right = self.pattern()
            self.expect("rparen", "')'")
            return Opt(left, right)
        if tok.kind == "lbrace":
            return Leaf(self.basic())
        raise ParseError(
            f"expected pattern, found {tok.text or 'end of input'!r}", tok.line, tok.col
        )

    def basic(self) -> BasicPattern:
        self.expect("lbrace", "'{'")
        triples: list[TriplePattern] = []
        if self.peek().kind == "rbrace":
            self.take()
            return BasicPattern()
        triples.append(self.triple())
        while self.peek().kind == "dot":
            self.take()
            if self.peek().kind == "rbrace":
                break  # trailing dot
            triples.append(self.triple())
        self.expect("rbrace", "'}'")
        return BasicPattern(triples)

    def triple(self) -> TriplePattern:
        return TriplePattern(self.term(), self.term(), self.term())

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "ident":
            return Iri(self.take().text)
        if tok.kind == "var":
            return Var(self.take().text)
        raise ParseError(
            f"expected term, found {tok.text or 'end of input'!r}", tok.line, tok.col
        )


def parse_pattern(text: str) -> Pattern:
    tokens = _tokenize(text)
    parser = _Parser(tokens)
    p = parser.pattern()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise ParseError(f"unexpected trailing input {trailing.text!r}", trailing.line, trailing.col)
    return p


def _basic_text(b: BasicPattern) -> str:
    parts = [str(tp) for tp in b.sorted_triples()]
    return "{ " + " . ".join(parts) + " }" if parts else "{ }"


def serialize_pattern(p: Pattern, pretty: bool = False) -> str:
    """Canonical text form; triples within a leaf are emitted sorted.

    The pretty form spreads OPT nodes over indented lines and ends with a
    newline; both forms re-parse to an equal pattern.
    """
    if not pretty:
        if isinstance(p, Leaf):
            return _basic_text(p.basic)
        return f"({serialize_pattern(p.left)} OPT {serialize_pattern(p.right)})"

    def emit(node: Pattern, depth: int) -> str:
        pad = "  " * depth
        if isinstance(node, Leaf):
            return pad + _basic_text(node.basic)
        return (
            pad + "(\n"
            + emit(node.left, depth + 1) + "\n"
            + pad + "  OPT\n"
            + emit(node.right, depth + 1) + "\n"
            + pad + ")"
        )

    return emit(p, 0) + "\n"
