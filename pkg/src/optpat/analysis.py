"""Per-graph subsumption/containment checks and bounded counterexample search.

The `check_*_on` functions decide a property on one concrete graph and
produce a self-certifying Verdict. The `find_*_counterexample` functions
enumerate candidate graphs over the patterns' constants plus a budgeted
supply of fresh IRIs, in nondecreasing triple count, and report the first
counterexample found. They are semi-decision procedures: exhausting the
budget proves nothing beyond the searched space.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .core import Graph, Iri, Mapping, Triple, subsumed_mapping
from .evaluation import evaluate
from .pattern import Pattern, leftmost_basic, pattern_constants, pattern_vars


class Status(enum.Enum):
    HOLDS_ON_GRAPH = "holds_on_graph"
    VIOLATED = "violated"
    NO_COUNTEREXAMPLE_WITHIN_BUDGET = "no_counterexample_within_budget"


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for counterexample search; all fields must be nonnegative."""

    max_triples: int
    max_fresh_iris: int
    max_candidates: int = 100_000

    def __post_init__(self) -> None:
        for field in ("max_triples", "max_fresh_iris", "max_candidates"):
            if getattr(self, field) < 0:
                raise ValueError(f"{field} must be >= 0")

    def to_jsonable(self) -> dict[str, int]:
        return {
            "max_triples": self.max_triples,
            "max_fresh_iris": self.max_fresh_iris,
            "max_candidates": self.max_candidates,
        }


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check or search; carries a witness iff violated."""

    status: Status
    witness: tuple[Graph, Mapping] | None = None
    candidates_examined: int | None = None
    budget: SearchBudget | None = None
    position: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if (self.witness is not None) != (self.status is Status.VIOLATED):
            raise ValueError("witness must be present exactly when status is violated")

    def to_jsonable(self) -> dict:
        from .core import serialize_graph

        out: dict = {"status": self.status.value}
        if self.witness is not None:
            g, m = self.witness
            out["graph"] = serialize_graph(g)
            out["mapping"] = m.to_jsonable()
        if self.candidates_examined is not None:
            out["candidates_examined"] = self.candidates_examined
        if self.budget is not None:
            out["budget"] = self.budget.to_jsonable()
        if self.position is not None:
            out["position"] = list(self.position)
        return out


def check_subsumed_on(p: Pattern, p2: Pattern, g: Graph) -> Verdict:
    """Does every solution of p on g extend to some solution of p2 on g?

    Violations report the first failing mapping in canonical order.
    """
    mine = evaluate(p, g)
    if not mine.mappings:
        return Verdict(Status.HOLDS_ON_GRAPH)
    theirs = evaluate(p2, g).sorted()
    for m in mine.sorted():
        if not any(subsumed_mapping(m, m2) for m2 in theirs):
            return Verdict(Status.VIOLATED, witness=(g, m))
    return Verdict(Status.HOLDS_ON_GRAPH)


def check_contained_on(p: Pattern, p2: Pattern, g: Graph) -> Verdict:
    """Is every solution of p on g literally a solution of p2 on g?"""
    mine = evaluate(p, g)
    if not mine.mappings:
        return Verdict(Status.HOLDS_ON_GRAPH)
    theirs = evaluate(p2, g).mappings
    for m in mine.sorted():
        if m not in theirs:
            return Verdict(Status.VIOLATED, witness=(g, m))
    return Verdict(Status.HOLDS_ON_GRAPH)


def check_equivalent_on(p: Pattern, p2: Pattern, g: Graph) -> Verdict:
    """Containment in both directions on one graph."""
    forward = check_contained_on(p, p2, g)
    if forward.status is Status.VIOLATED:
        return forward
    return check_contained_on(p2, p, g)


def _dedupe(vocabulary: Sequence[Iri]) -> list[Iri]:
    seen: set[Iri] = set()
    out: list[Iri] = []
    for iri in vocabulary:
        if iri not in seen:
            seen.add(iri)
            out.append(iri)
    return out


def _all_triples(vocabulary: Sequence[Iri]) -> list[Triple]:
    return [Triple(s, p, o) for s in vocabulary for p in vocabulary for o in vocabulary]


def enumerate_graphs(vocabulary: Sequence[Iri], max_triples: int) -> Iterator[Graph]:
    """Every graph with at most `max_triples` triples over the vocabulary,
    exactly once, in nondecreasing triple count and a fixed deterministic
    order (combinations of the vocabulary-ordered triple list)."""
    vocab = _dedupe(vocabulary)
    if not vocab:
        raise ValueError("vocabulary must be non-empty")
    triples = _all_triples(vocab)
    for count in range(max_triples + 1):
        if count > len(triples):
            break
        for combo in itertools.combinations(triples, count):
            yield Graph(combo)


def _fresh_iris(count: int, avoid: set[str]) -> list[Iri]:
    prefix = "f"
    pattern = re.compile(re.escape(prefix) + r"\d+\Z")
    while any(pattern.match(name) for name in avoid):
        prefix += "f"
        pattern = re.compile(re.escape(prefix) + r"\d+\Z")
    return [Iri(f"{prefix}{i}") for i in range(1, count + 1)]


def _fresh_canonical(sorted_triples: list[Triple], fresh: list[Iri], fresh_set: frozenset[Iri]) -> bool:
    # Keep one representative per renaming orbit: fresh IRIs must first occur
    # (scanning canonical triple order, s/p/o within a triple) in list order.
    seen: list[Iri] = []
    for t in sorted_triples:
        for term in (t.subject, t.predicate, t.object):
            if term in fresh_set and term not in seen:
                seen.append(term)
    return seen == fresh[: len(seen)]


def _candidate_stream(
    p: Pattern,
    p2: Pattern,
    budget: SearchBudget,
    required_sets: Sequence[frozenset[Triple]],
) -> Iterator[tuple[tuple[int, int], Graph]]:
    """Candidate graphs in (triple count, ordinal) order.

    Only graphs containing at least one of the `required_sets` are emitted:
    a violation needs a nonempty solution set on the left pattern, which in
    turn needs that pattern's leftmost-leaf ground triples present, so the
    skipped graphs can never be counterexamples. Graphs differing from an
    earlier candidate only by a permutation of fresh IRIs are skipped too;
    pattern semantics cannot tell such graphs apart.
    """
    constants = sorted(pattern_constants(p) | pattern_constants(p2))
    fresh = _fresh_iris(budget.max_fresh_iris, {c.name for c in constants})
    vocabulary = constants + fresh
    triples = _all_triples(vocabulary)
    index = {t: i for i, t in enumerate(triples)}
    fresh_set = frozenset(fresh)
    requirements = [frozenset(r) for r in required_sets]

    for count in range(budget.max_triples + 1):
        batch: set[frozenset[Triple]] = set()
        for required in requirements:
            extra = count - len(required)
            if extra < 0:
                continue
            others = [t for t in triples if t not in required]
            if extra > len(others):
                continue
            for combo in itertools.combinations(others, extra):
                batch.add(required.union(combo))
        ordinal = 0
        for gset in sorted(batch, key=lambda s: sorted(index[t] for t in s)):
            ordered = sorted(gset, key=index.__getitem__)
            if not _fresh_canonical(ordered, fresh, fresh_set):
                continue
            yield (count, ordinal), Graph(gset)
            ordinal += 1


def default_search_budget(
    p: Pattern,
    p2: Pattern,
    max_triples: int = 3,
    max_candidates: int = 100_000,
) -> SearchBudget:
    """Default fresh-IRI supply: one per variable of either pattern."""
    return SearchBudget(
        max_triples=max_triples,
        max_fresh_iris=len(pattern_vars(p) | pattern_vars(p2)),
        max_candidates=max_candidates,
    )


def _search(
    p: Pattern,
    p2: Pattern,
    budget: SearchBudget,
    check: Callable[[Pattern, Pattern, Graph], Verdict],
    required_sets: Sequence[frozenset[Triple]],
    start_position: tuple[int, int] | None,
) -> Verdict:
    examined = 0
    last: tuple[int, int] | None = None
    for position, g in _candidate_stream(p, p2, budget, required_sets):
        if start_position is not None and position <= start_position:
            continue
        if examined >= budget.max_candidates:
            break
        examined += 1
        last = position
        verdict = check(p, p2, g)
        if verdict.status is Status.VIOLATED:
            return Verdict(
                Status.VIOLATED,
                witness=verdict.witness,
                candidates_examined=examined,
                budget=budget,
                position=position,
            )
    return Verdict(
        Status.NO_COUNTEREXAMPLE_WITHIN_BUDGET,
        candidates_examined=examined,
        budget=budget,
        position=last,
    )


def find_subsumption_counterexample(
    p: Pattern,
    p2: Pattern,
    budget: SearchBudget,
    start_position: tuple[int, int] | None = None,
) -> Verdict:
    """Search for a graph on which some solution of p has no extension in p2.

    Candidates are checked in the deterministic stream order; the reported
    witness is the first one. `start_position` resumes a previous search
    after the given (triple count, ordinal) position.
    """
    required = [leftmost_basic(p).ground_triples()]
    return _search(p, p2, budget, check_subsumed_on, required, start_position)


def find_containment_counterexample(
    p: Pattern,
    p2: Pattern,
    budget: SearchBudget,
    start_position: tuple[int, int] | None = None,
) -> Verdict:
    required = [leftmost_basic(p).ground_triples()]
    return _search(p, p2, budget, check_contained_on, required, start_position)


def find_equivalence_counterexample(
    p: Pattern,
    p2: Pattern,
    budget: SearchBudget,
    start_position: tuple[int, int] | None = None,
) -> Verdict:
    """Both containment directions are checked on every candidate, so the
    candidate stream must cover graphs where either side could be nonempty."""
    required = [leftmost_basic(p).ground_triples(), leftmost_basic(p2).ground_triples()]
    return _search(p, p2, budget, check_equivalent_on, required, start_position)
