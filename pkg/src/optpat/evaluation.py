"""Evaluation semantics: basic-pattern matching, left outer join, recursive
pattern evaluation, and a deliberately naive enumeration oracle.

Results are sets of mappings (set semantics, no multiplicities). The engine
(`evaluate`) matches basic patterns by backtracking over a per-predicate
index; the oracle (`evaluate_oracle`) instead enumerates every total
assignment of leaf variables and filters, sharing no matching or join code
with the engine so the two act as independent routes to the same contract.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

from .core import EMPTY_MAPPING, Graph, Iri, Mapping, Triple, Var, compatible, merge
from .pattern import BasicPattern, Leaf, Opt, Pattern, TriplePattern

DEFAULT_ORACLE_CAP = 2_000_000


class OracleBudgetError(RuntimeError):
    """Raised when the oracle's assignment enumeration would exceed its cap."""


class SolutionSet:
    """A duplicate-free set of mappings, with a canonical iteration order."""

    __slots__ = ("mappings",)

    def __init__(self, mappings: Iterable[Mapping] = ()):
        self.mappings: frozenset[Mapping] = frozenset(mappings)

    def __len__(self) -> int:
        return len(self.mappings)

    def __contains__(self, m: Mapping) -> bool:
        return m in self.mappings

    def __iter__(self) -> Iterator[Mapping]:
        return iter(self.sorted())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SolutionSet) and self.mappings == other.mappings

    def __hash__(self) -> int:
        return hash(self.mappings)

    def __repr__(self) -> str:
        return f"SolutionSet({[repr(m) for m in self.sorted()]})"

    def sorted(self) -> list[Mapping]:
        return sorted(self.mappings, key=lambda m: m.sort_key)

    def to_jsonable(self) -> list[dict[str, str]]:
        """Array of binding objects, sorted by their serialized form."""
        rows = [m.to_jsonable() for m in self.mappings]
        rows.sort(key=lambda r: tuple(sorted(r.items())))
        return rows


def match_basic(b: BasicPattern, g: Graph) -> SolutionSet:
    """All mappings with domain exactly vars(b) that send b into g.

    Backtracking search: at each step the remaining triple pattern with the
    fewest candidate graph triples under the current bindings is expanded
    (most-constrained-first), using a per-predicate index for candidates.
    """
    templates = sorted(b.triples, key=lambda tp: tuple(map(str, tp.terms())))
    if not templates:
        return SolutionSet([EMPTY_MAPPING])

    by_predicate: dict[Iri, list[Triple]] = {}
    all_triples = g.sorted_triples()
    for t in all_triples:
        by_predicate.setdefault(t.predicate, []).append(t)

    def resolve(term, bound: dict[Var, Iri]) -> Iri | None:
        if isinstance(term, Iri):
            return term
        return bound.get(term)

    def candidates(tp: TriplePattern, bound: dict[Var, Iri]) -> list[Triple]:
        s = resolve(tp.subject, bound)
        p = resolve(tp.predicate, bound)
        o = resolve(tp.object, bound)
        pool = by_predicate.get(p, []) if p is not None else all_triples
        return [
            t
            for t in pool
            if (s is None or t.subject == s)
            and (o is None or t.object == o)
            and (p is None or t.predicate == p)
        ]

    def unify(tp: TriplePattern, t: Triple, bound: dict[Var, Iri]) -> dict[Var, Iri] | None:
        out = dict(bound)
        for term, value in zip(tp.terms(), (t.subject, t.predicate, t.object)):
            if isinstance(term, Iri):
                if term != value:
                    return None
            else:
                seen = out.get(term)
                if seen is None:
                    out[term] = value
                elif seen != value:
                    return None
        return out

    solutions: set[Mapping] = set()

    def search(remaining: list[TriplePattern], bound: dict[Var, Iri]) -> None:
        if not remaining:
            solutions.add(Mapping(bound))
            return
        scored = [(candidates(tp, bound), i) for i, tp in enumerate(remaining)]
        cands, idx = min(scored, key=lambda pair: len(pair[0]))
        tp = remaining[idx]
        rest = remaining[:idx] + remaining[idx + 1 :]
        for t in cands:
            extended = unify(tp, t, bound)
            if extended is not None:
                search(rest, extended)

    search(templates, {})
    return SolutionSet(solutions)


def left_outer_join(w1: SolutionSet, w2: SolutionSet) -> SolutionSet:
    """Merge every compatible pair; keep left mappings with no partner."""
    out: set[Mapping] = set()
    for m1 in w1.mappings:
        extended = [merge(m1, m2) for m2 in w2.mappings if compatible(m1, m2)]
        if extended:
            out.update(extended)
        else:
            out.add(m1)
    return SolutionSet(out)


def evaluate(p: Pattern, g: Graph) -> SolutionSet:
    """Recursive evaluation: leaves match, OPT nodes left-outer-join."""
    if isinstance(p, Leaf):
        return match_basic(p.basic, g)
    return left_outer_join(evaluate(p.left, g), evaluate(p.right, g))


def evaluate_oracle(p: Pattern, g: Graph, max_assignments: int = DEFAULT_ORACLE_CAP) -> SolutionSet:
    """Same contract as `evaluate`, by exhaustive enumeration.

    Each leaf is matched by trying every total assignment of its variables
    to the IRIs occurring in g; joins apply the set-builder definition
    directly. Raises OracleBudgetError when a leaf would require more than
    `max_assignments` assignments. Self-contained on purpose: no code shared
    with the engine's matcher or join.
    """
    universe = sorted(g.iris())
    present = {(t.subject, t.predicate, t.object) for t in g.triples}

    Row = frozenset  # of (Var, Iri) pairs

    def leaf_rows(b: BasicPattern) -> set[frozenset]:
        vs = sorted(b.vars)
        count = len(universe) ** len(vs) if vs else 1
        if count > max_assignments:
            raise OracleBudgetError(
                f"{count} assignments for {len(vs)} variables over {len(universe)} IRIs "
                f"exceeds the cap of {max_assignments}"
            )
        templates = [tp.terms() for tp in b.triples]
        rows: set[frozenset] = set()
        for combo in itertools.product(universe, repeat=len(vs)):
            asn = dict(zip(vs, combo))
            ok = True
            for s, pr, o in templates:
                t = (
                    asn[s] if isinstance(s, Var) else s,
                    asn[pr] if isinstance(pr, Var) else pr,
                    asn[o] if isinstance(o, Var) else o,
                )
                if t not in present:
                    ok = False
                    break
            if ok:
                rows.add(Row(asn.items()))
        return rows

    def join_rows(r1: set[frozenset], r2: set[frozenset]) -> set[frozenset]:
        out: set[frozenset] = set()
        for f1 in r1:
            d1 = dict(f1)
            merged = []
            for f2 in r2:
                if all(d1[v] == i for v, i in f2 if v in d1):
                    union = dict(d1)
                    union.update(f2)
                    merged.append(Row(union.items()))
            if merged:
                out.update(merged)
            else:
                out.add(f1)
        return out

    def walk(node: Pattern) -> set[frozenset]:
        if isinstance(node, Leaf):
            return leaf_rows(node.basic)
        return join_rows(walk(node.left), walk(node.right))

    return SolutionSet(Mapping(dict(row)) for row in walk(p))
