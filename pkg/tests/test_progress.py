import pytest

from actlat.corpus import (
    canonical_join_star,
    canonical_proofs,
    canonical_star_id,
    canonical_two_star,
    corrupted_variants,
)
from actlat.progress import (
    INFINITY_UP_TO_FUEL,
    Thread,
    check_cyclic_progress,
    compose,
    critical_height,
    progress_points,
    star_thread,
)
from actlat.proof_core import (
    CyclicNode,
    CyclicProof,
    RuleApp,
    check_cyclic_local,
    make_app,
)
from actlat.rules import Instantiation, RuleSet
from actlat.syntax import Sequent, Star, Var, parse_sequent

RS = RuleSet()
a = Var("a")


def test_star_thread_constant_star():
    s1 = parse_sequent("a*, 1 |- b")
    s2 = parse_sequent("a* |- b")
    t = Thread(0, (0, 0))
    assert star_thread(t, [s1, s2])


def test_star_thread_rejects_succedent():
    s1 = parse_sequent("a* |- a*")
    t = Thread(0, (0, -1))
    assert not star_thread(t, [s1, s1])


def test_star_thread_rejects_formula_change():
    s1 = parse_sequent("a* |- b")
    s2 = parse_sequent("a, a* |- b")
    # moving to the unfolded copy changes the denoted formula
    t = Thread(0, (0, 0))
    assert not star_thread(t, [s1, s2])


def test_compose_accumulates_progress():
    r1 = frozenset({(0, 1, False)})
    r2 = frozenset({(1, 0, True)})
    assert compose(r1, r2) == frozenset({(0, 0, True)})
    assert compose(r2, r1) == frozenset({(1, 1, True)})


def test_canonical_proofs_locally_valid():
    for name, proof in canonical_proofs(RS).items():
        report = check_cyclic_local(proof, RS)
        assert report.ok, f"{name}: {report.violation}"


def test_accepts_canonical_proofs():
    for name, proof in canonical_proofs(RS).items():
        result = check_cyclic_progress(proof, RS)
        assert result.accepted, name


def test_rejects_corrupted_variants_with_cycles():
    for name, proof in corrupted_variants(RS).items():
        assert check_cyclic_local(proof, RS).ok, name
        result = check_cyclic_progress(proof, RS)
        assert not result.accepted, name
        assert result.counterexample, name
        # the returned cycle is a real cycle in the graph
        cyc = result.counterexample
        assert cyc[0] == cyc[-1] or len(set(cyc)) >= 1


def test_accepts_acyclic_proof():
    n0 = CyclicNode(parse_sequent("a |- a"), make_app(RS, "id", Instantiation(fmap={"a": a})), ())
    p = CyclicProof({"n0": n0}, "n0")
    assert check_cyclic_progress(p, RS).accepted


def test_rejects_wk_only_cycle():
    star = Star(a)
    wk = Instantiation(fmap={"b": star}, smap={"Gamma": (star,), "Pi": (), "Delta": ()})
    n0 = CyclicNode(Sequent((star,), star), RuleApp("Wk", wk, None), ("n0",))
    p = CyclicProof({"n0": n0}, "n0")
    assert check_cyclic_local(p, RS).ok
    result = check_cyclic_progress(p, RS)
    assert not result.accepted
    assert result.counterexample


def test_progress_points_star_id_cycle():
    p = canonical_star_id(RS)
    # the cycle alternates left-star and right-star nodes
    prefix = [1, 1, 1, 1, 1, 1]
    pts = progress_points(p, prefix, fuel=6, rules=RS)
    assert pts == {0, 2, 4, 6}
    assert critical_height(p, prefix, 6, RS) == 0


def test_progress_points_empty_for_acyclic():
    n0 = CyclicNode(parse_sequent("a |- a"), make_app(RS, "id", Instantiation(fmap={"a": a})), ())
    p = CyclicProof({"n0": n0}, "n0")
    assert progress_points(p, [], 5, RS) == set()
    assert critical_height(p, [], 5, RS) == INFINITY_UP_TO_FUEL


def test_progress_points_empty_on_wk_cycle():
    star = Star(a)
    wk = Instantiation(fmap={"b": star}, smap={"Gamma": (star,), "Pi": (), "Delta": ()})
    n0 = CyclicNode(Sequent((star,), star), RuleApp("Wk", wk, None), ("n0",))
    p = CyclicProof({"n0": n0}, "n0")
    assert progress_points(p, [0, 0, 0], 3, RS) == set()


def test_critical_height_decrement():
    p = canonical_star_id(RS)
    prefix = [1, 1, 1, 1]
    h = critical_height(p, prefix, 4, RS)
    assert h == 0
    # step to the next node on the branch: the cycle's other node
    stepped = p.rerooted(p.node(p.root).children[1])
    h2 = critical_height(stepped, prefix[1:], 4, RS)
    assert h2 == 1  # next left-star is one step away


def test_decrement_law_bounded():
    p = canonical_two_star(RS)
    prefix = [1, 1, 1, 1]
    pts = progress_points(p, prefix, 8, RS)
    stepped = p.rerooted(p.node(p.root).children[1])
    pts_tail = progress_points(stepped, prefix[1:], 8, RS)
    expect = {i for i in range(len(prefix[1:]) + 1) if i + 1 in pts}
    assert expect <= pts_tail


def _cycle_prefixes(p, rules, length):
    """All child-index prefixes of the given length whose end node still
    reaches a cycle."""
    from actlat.corpus import _cycle_reaching_nodes

    live = _cycle_reaching_nodes(p)
    out = []

    def walk(nid, prefix):
        if len(prefix) == length:
            if nid in live:
                out.append(prefix)
            return
        node = p.node(nid)
        rule = RS.resolve(node.app.rule)
        indices = rule.child_indices()
        for slot, child in enumerate(node.children):
            walk(child, prefix + [indices[slot]])

    walk(p.root, [])
    return out


def test_accepted_proofs_progress_on_every_cyclic_prefix():
    for name, proof in canonical_proofs(RS).items():
        assert check_cyclic_progress(proof, RS).accepted
        for length in (0, 2, 4):
            for prefix in _cycle_prefixes(proof, RS, length):
                pts = progress_points(proof, prefix, 12, RS)
                assert pts, (name, prefix)


def test_rejected_proofs_have_empty_progress_on_counterexample():
    for name, proof in corrupted_variants(RS).items():
        res = check_cyclic_progress(proof, RS)
        assert not res.accepted
        # pump the counterexample cycle from the root when it starts there
        cycle = res.counterexample
        if cycle and cycle[0] == proof.root:
            # walk the cycle as child indices
            prefix = []
            for u, v in zip(cycle, cycle[1:]):
                node = proof.node(u)
                slot = node.children.index(v)
                indices = RS.resolve(node.app.rule).child_indices()
                prefix.append(indices[slot])
            assert progress_points(proof, prefix, 12, RS) == set(), name


def test_branch_condition_iff_progress_points():
    # bounded form: accepted proofs have progress points along cyclic
    # prefixes; rejected proofs have none along the counterexample cycle
    good = canonical_join_star(RS)
    assert check_cyclic_progress(good, RS).accepted
    assert progress_points(good, [1, 0, 1, 1, 0, 1], 6, RS)
    bad = corrupted_variants(RS)["star_id_root_loop_C"]
    res = check_cyclic_progress(bad, RS)
    assert not res.accepted
    assert progress_points(bad, [0, 0, 0, 0], 4, RS) == set()
