import pytest

from actlat.models import library, rel_algebra, two_chain
from actlat.progress import check_cyclic_progress
from actlat.proof_core import check_cyclic_local
from actlat.rules import RuleSet, example_structural_rules, q_a_of
from actlat.search import SearchConfig, SearchResult, prove, refute
from actlat.syntax import parse_sequent

EX = example_structural_rules()


def seq(text):
    return parse_sequent(text)


def assert_found(result: SearchResult, rules=None):
    assert result.found, result.reason
    rules = rules or RuleSet()
    assert check_cyclic_local(result.proof, rules).ok
    assert check_cyclic_progress(result.proof, rules).accepted


def test_prove_id():
    result = prove(seq("a |- a"))
    assert_found(result)
    assert len(result.proof.nodes) == 1


def test_prove_star_id_cyclic():
    result = prove(seq("a* |- a*"))
    assert_found(result)
    # at least one back-edge: some node is reachable twice
    ids = set(result.proof.nodes)
    child_refs = [c for n in result.proof.nodes.values() for c in n.children]
    assert len(child_refs) >= len(ids)


def test_prove_two_star():
    result = prove(seq("a*, a* |- a*"))
    assert_found(result)
    # sanity: the goal is valid in the relation model
    from actlat.models import holds_sequent

    assert holds_sequent(rel_algebra(2), seq("a*, a* |- a*"))


def test_prove_join_star():
    result = prove(seq("(a | b)* |- (a | b)*"))
    assert_found(result)


def test_prove_simple_goals():
    for text in ["a, b |- a . b", "a & b |- a", "a |- a | b", "|- 1",
                 "a, a \\ b |- b", "b / a, a |- b", "0 |- b", "1 |- 1"]:
        assert_found(prove(seq(text)))


def test_prove_unknown_for_invalid():
    result = prove(seq("a |- b"), cfg=SearchConfig(depth=6))
    assert not result.found


def test_exchange_enables_commutation():
    goal = seq("a . b |- b . a")
    assert not prove(goal, cfg=SearchConfig(depth=8)).found
    rules = RuleSet([EX["e"]])
    result = prove(goal, user_rules=[EX["e"]], rules=rules)
    assert result.found
    assert check_cyclic_local(result.proof, rules).ok


def test_weakening_enables_extra_context():
    goal = seq("a, b |- a")
    assert not prove(goal, cfg=SearchConfig(depth=6)).found
    rules = RuleSet([EX["Wk"]])
    assert prove(goal, user_rules=[EX["Wk"]], rules=rules).found


def test_contraction_enables_duplication():
    goal = seq("a |- a . a")
    rules = RuleSet([EX["C"]])
    result = prove(goal, user_rules=[EX["C"]], rules=rules)
    assert result.found


def test_refute_simple():
    result = refute(seq("a |- b"), [two_chain()])
    assert result.refuted
    assert result.model == "two_chain"
    assert dict(result.valuation) == {"a": 1, "b": 0}


def test_refute_commutation_without_exchange():
    result = refute(seq("a . b |- b . a"), list(library().values())[:4])
    assert result.refuted
    assert result.model == "rel2"


def test_refute_unknown_for_valid():
    result = refute(seq("a |- a"), [two_chain(), rel_algebra(2)])
    assert not result.refuted


def test_prove_refute_exclusive():
    models = [two_chain(), rel_algebra(2)]
    goals = ["a |- a", "a |- b", "a, b |- a . b", "a . b |- b . a", "a* |- a*"]
    for text in goals:
        s = seq(text)
        proved = prove(s, cfg=SearchConfig(depth=12)).found
        refuted = refute(s, models).refuted
        assert not (proved and refuted), text


def test_cut_enabled_search():
    cfg = SearchConfig(depth=10, with_cut=True)
    result = prove(seq("a, a \\ b, b \\ c |- c"), cfg=cfg)
    assert result.found


def test_nested_residual_goal():
    result = prove(seq("a \\ (b \\ c) |- (b . a) \\ c"))
    assert_found(result)
