"""Per-graph checks, graph enumeration, and bounded counterexample search."""

import random

import pytest

from optpat import (
    Graph,
    Iri,
    SearchBudget,
    Status,
    Verdict,
    check_contained_on,
    check_equivalent_on,
    check_subsumed_on,
    default_search_budget,
    enumerate_graphs,
    find_containment_counterexample,
    find_equivalence_counterexample,
    find_subsumption_counterexample,
    parse_graph,
    parse_pattern,
    serialize_graph,
)
from optpat.analysis import _fresh_iris

from helpers import M, rand_graph, rand_pattern


class TestCheckSubsumedOn:
    def test_reflexive_holds(self):
        rng = random.Random(60)
        iris = [Iri(n) for n in ("a", "b", "c")]
        for _ in range(50):
            p = rand_pattern(rng)
            g = rand_graph(rng, iris, 4)
            assert check_subsumed_on(p, p, g).status is Status.HOLDS_ON_GRAPH

    def test_violation_with_first_failing_mapping(self):
        p = parse_pattern("{ ?x p ?y }")
        p2 = parse_pattern("{ ?x p ?y . ?y p ?x }")
        verdict = check_subsumed_on(p, p2, parse_graph("a p b ."))
        assert verdict.status is Status.VIOLATED
        assert verdict.witness[1] == M({"?x": "a", "?y": "b"})

    def test_optional_extension_counts_as_subsuming(self):
        p = parse_pattern("{ ?x p ?y }")
        p2 = parse_pattern("({ ?x p ?y } OPT { ?y q ?z })")
        g = parse_graph("a p b .\nb q c .")
        assert check_subsumed_on(p, p2, g).status is Status.HOLDS_ON_GRAPH


class TestCheckContainedOn:
    def test_reflexive_holds(self):
        p = parse_pattern("({ ?x p ?y } OPT { ?y q ?z })")
        g = parse_graph("a p b .")
        assert check_contained_on(p, p, g).status is Status.HOLDS_ON_GRAPH

    def test_domain_mismatch_violates(self):
        verdict = check_contained_on(
            parse_pattern("{ }"), parse_pattern("{ ?x p ?y }"), parse_graph("a p b .")
        )
        assert verdict.status is Status.VIOLATED
        assert verdict.witness[1] == M({})

    def test_unmatched_optional_arm_preserves_containment(self):
        verdict = check_contained_on(
            parse_pattern("{ ?x p ?y }"),
            parse_pattern("({ ?x p ?y } OPT { a q a })"),
            parse_graph("a p b ."),
        )
        assert verdict.status is Status.HOLDS_ON_GRAPH

    def test_containment_implies_subsumption(self):
        rng = random.Random(61)
        iris = [Iri(n) for n in ("a", "b", "c")]
        for _ in range(100):
            p, p2 = rand_pattern(rng, depth=2), rand_pattern(rng, depth=2)
            g = rand_graph(rng, iris, 4)
            if check_contained_on(p, p2, g).status is Status.HOLDS_ON_GRAPH:
                assert check_subsumed_on(p, p2, g).status is Status.HOLDS_ON_GRAPH


class TestEnumerateGraphs:
    def test_single_iri(self):
        a = Iri("a")
        graphs = list(enumerate_graphs([a], 1))
        assert graphs == [Graph(), parse_graph("a a a .")]

    def test_counts(self):
        vocab = [Iri("a"), Iri("b")]
        assert sum(1 for _ in enumerate_graphs(vocab, 1)) == 1 + 8
        assert sum(1 for _ in enumerate_graphs(vocab, 2)) == 1 + 8 + 28

    def test_unique_and_nondecreasing(self):
        vocab = [Iri("a"), Iri("b")]
        sizes = []
        seen = set()
        for g in enumerate_graphs(vocab, 2):
            assert g not in seen
            seen.add(g)
            sizes.append(len(g))
        assert sizes == sorted(sizes)

    def test_deterministic(self):
        vocab = [Iri("a"), Iri("b")]
        first = [serialize_graph(g) for g in enumerate_graphs(vocab, 2)]
        second = [serialize_graph(g) for g in enumerate_graphs(vocab, 2)]
        assert first == second

    def test_duplicate_vocabulary_collapsed(self):
        assert sum(1 for _ in enumerate_graphs([Iri("a"), Iri("a")], 1)) == 2

    def test_empty_vocabulary_rejected(self):
        with pytest.raises(ValueError):
            list(enumerate_graphs([], 1))


class TestFindSubsumption:
    def test_small_budget_finds_one_triple_witness(self):
        p = parse_pattern("{ ?x p ?x }")
        p2 = parse_pattern("{ ?x q ?y }")
        verdict = find_subsumption_counterexample(p, p2, SearchBudget(1, 1))
        assert verdict.status is Status.VIOLATED
        graph, mapping = verdict.witness
        assert len(graph) == 1
        # witnesses are self-certifying
        recheck = check_subsumed_on(p, p2, graph)
        assert recheck.status is Status.VIOLATED
        assert recheck.witness[1] == mapping

    def test_reflexive_pair_has_no_counterexample(self):
        p = parse_pattern("{ ?x p ?x }")
        for budget in (SearchBudget(1, 1), SearchBudget(2, 1), SearchBudget(2, 2)):
            verdict = find_subsumption_counterexample(p, p, budget)
            assert verdict.status is Status.NO_COUNTEREXAMPLE_WITHIN_BUDGET

    def test_determinism(self):
        p = parse_pattern("{ ?x p ?x }")
        p2 = parse_pattern("{ ?x q ?y }")
        budget = default_search_budget(p, p2)
        v1 = find_subsumption_counterexample(p, p2, budget)
        v2 = find_subsumption_counterexample(p, p2, budget)
        assert v1 == v2

    def test_monotone_in_max_triples(self):
        p = parse_pattern("{ ?x p ?x }")
        p2 = parse_pattern("{ ?x q ?y }")
        small = find_subsumption_counterexample(p, p2, SearchBudget(1, 2))
        large = find_subsumption_counterexample(p, p2, SearchBudget(3, 2))
        assert small.status is large.status is Status.VIOLATED
        assert small.witness == large.witness  # same enumeration-order prefix

    def test_candidate_cap_reported(self):
        p = parse_pattern("{ ?x p ?x }")
        p2 = parse_pattern("{ ?x q ?y }")
        verdict = find_subsumption_counterexample(p, p2, SearchBudget(2, 1, max_candidates=1))
        assert verdict.status is Status.NO_COUNTEREXAMPLE_WITHIN_BUDGET
        assert verdict.candidates_examined == 1

    def test_resume_after_position(self):
        p = parse_pattern("{ ?x p ?x }")
        p2 = parse_pattern("{ ?x q ?y }")
        full = find_subsumption_counterexample(p, p2, SearchBudget(2, 1))
        head = find_subsumption_counterexample(p, p2, SearchBudget(2, 1, max_candidates=1))
        resumed = find_subsumption_counterexample(
            p, p2, SearchBudget(2, 1), start_position=head.position
        )
        assert resumed.status is Status.VIOLATED
        assert resumed.witness == full.witness


class TestFindContainment:
    def test_empty_graph_witness(self):
        verdict = find_containment_counterexample(
            parse_pattern("{ }"), parse_pattern("{ ?x p ?y }"), SearchBudget(2, 2)
        )
        assert verdict.status is Status.VIOLATED
        graph, mapping = verdict.witness
        assert len(graph) == 0
        assert mapping == M({})

    def test_more_general_pattern_not_contained(self):
        verdict = find_containment_counterexample(
            parse_pattern("{ ?x p ?y }"), parse_pattern("{ ?x p ?x }"), SearchBudget(2, 2)
        )
        assert verdict.status is Status.VIOLATED
        graph, _ = verdict.witness
        assert len(graph) == 1
        assert (
            check_contained_on(
                parse_pattern("{ ?x p ?y }"), parse_pattern("{ ?x p ?x }"), graph
            ).status
            is Status.VIOLATED
        )


class TestFindEquivalence:
    def test_reflexive(self):
        p = parse_pattern("({ ?x p ?y } OPT { ?y q ?z })")
        verdict = find_equivalence_counterexample(p, p, SearchBudget(2, 3))
        assert verdict.status is Status.NO_COUNTEREXAMPLE_WITHIN_BUDGET

    def test_optional_padding_not_equivalent(self):
        p = parse_pattern("({ } OPT { ?x p ?y })")
        p2 = parse_pattern("{ ?x p ?y }")
        verdict = find_equivalence_counterexample(p, p2, SearchBudget(2, 2))
        assert verdict.status is Status.VIOLATED
        graph, mapping = verdict.witness
        assert len(graph) == 0
        assert mapping == M({})

    def test_right_side_only_difference_found(self):
        # solutions differ only on graphs that match p2's leftmost leaf
        p = parse_pattern("{ a p a }")
        p2 = parse_pattern("{ b p b }")
        verdict = find_equivalence_counterexample(p, p2, SearchBudget(1, 0))
        assert verdict.status is Status.VIOLATED
        assert check_equivalent_on(p, p2, verdict.witness[0]).status is Status.VIOLATED


class TestVerdictAndBudget:
    def test_witness_iff_violated(self):
        with pytest.raises(ValueError):
            Verdict(Status.VIOLATED)
        with pytest.raises(ValueError):
            Verdict(Status.HOLDS_ON_GRAPH, witness=(Graph(), M({})))

    def test_budget_validation(self):
        with pytest.raises(ValueError):
            SearchBudget(-1, 0)
        with pytest.raises(ValueError):
            SearchBudget(1, -2)

    def test_default_budget_counts_variables(self):
        p = parse_pattern("{ ?x p ?x }")
        p2 = parse_pattern("{ ?x q ?y }")
        assert default_search_budget(p, p2).max_fresh_iris == 2

    def test_jsonable_shape(self):
        p = parse_pattern("{ ?x p ?x }")
        p2 = parse_pattern("{ ?x q ?y }")
        verdict = find_subsumption_counterexample(p, p2, SearchBudget(1, 1))
        data = verdict.to_jsonable()
        assert data["status"] == "violated"
        assert set(data) == {"status", "graph", "mapping", "candidates_examined", "budget", "position"}
        assert parse_graph(data["graph"]) == verdict.witness[0]

    def test_fresh_iris_avoid_pattern_constants(self):
        fresh = _fresh_iris(2, {"f1", "x"})
        assert [i.name for i in fresh] == ["ff1", "ff2"]
        assert _fresh_iris(2, {"x"}) == [Iri("f1"), Iri("f2")]
