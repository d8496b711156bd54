import itertools

import numpy as np
import pytest

from actlat.models import (
    FiniteActionLattice,
    ModelError,
    eval_formula,
    find_sequent_counterexample,
    holds_quasieq,
    holds_sequent,
    library,
    model_from_json,
    model_to_json,
    rel_algebra,
    sequent_inequation,
    soundness_audit,
    star_by_powers,
    three_chain,
    truncated_words,
    two_chain,
    validate_algebra,
)
from actlat.rules import RuleSet, example_structural_rules, q_a_of, q_of
from actlat.syntax import Prod, Star, Var, parse_formula, parse_sequent

EX = example_structural_rules()


def test_two_chain_valid():
    report = validate_algebra(two_chain())
    assert report.ok, report.violations


def test_two_chain_bad_star_detected():
    a = two_chain()
    a.star = np.array([0, 1])  # 0* = 0 breaks 1 | x.x* <= x*
    report = validate_algebra(a)
    assert not report.ok
    assert any("x*" in v.law for v in report.violations)


def test_three_chain_valid():
    assert validate_algebra(three_chain()).ok


def test_rel_algebra_sizes_and_validity():
    r1 = rel_algebra(1)
    assert r1.size == 2
    assert validate_algebra(r1).ok
    r2 = rel_algebra(2)
    assert r2.size == 16
    assert r2.elements[r2.one] == "{00,11}"
    assert r2.elements[r2.zero] == "{}"
    assert validate_algebra(r2).ok


def test_rel_algebra_star_is_transitive_closure():
    r2 = rel_algebra(2)

    def closure_oracle(mat):
        k = 2
        out = np.eye(k, dtype=bool) | mat
        for _ in range(k + 1):
            out = out | (out.astype(int) @ out.astype(int) > 0)
        return out

    def unpack(r):
        return np.array([[bool(r >> (i * 2 + j) & 1) for j in range(2)] for i in range(2)])

    def pack(mat):
        out = 0
        for i in range(2):
            for j in range(2):
                if mat[i, j]:
                    out |= 1 << (i * 2 + j)
        return out

    for r in range(16):
        assert r2.star[r] == pack(closure_oracle(unpack(r)))
    # the swap relation {01,10}: closure is the full reflexive closure of swap
    swap = pack(np.array([[False, True], [True, False]]))
    expect = pack(np.array([[True, True], [True, True]]))
    assert r2.star[swap] == expect


def test_rel_algebra_size_cap():
    with pytest.raises(ModelError):
        rel_algebra(4)


def test_truncated_words_valid():
    t = truncated_words()
    assert t.size == 128  # subsets of the 7 words shorter than 3 letters
    assert validate_algebra(t).ok


def test_star_by_powers_matches_tables():
    for a in (two_chain(), three_chain(), rel_algebra(2)):
        for x in range(a.size):
            assert star_by_powers(a, x) == a.star[x]


def test_eval_formula_oracle():
    a = rel_algebra(2)
    f = parse_formula("(x . y)* & x")
    rng_vals = [(3, 5), (int(a.one), 9), (0, 7)]
    for vx, vy in rng_vals:
        got = eval_formula(a, {"x": vx, "y": vy}, f)
        expect = a.meet[a.star[a.prod[vx, vy]], vx]
        assert got == expect


def test_holds_sequent_identity():
    for a in library().values():
        assert holds_sequent(a, parse_sequent("a |- a"))


def test_holds_sequent_two_star():
    assert holds_sequent(rel_algebra(2), parse_sequent("a*, a* |- a*"))


def test_holds_sequent_counterexample():
    a = two_chain()
    witness = find_sequent_counterexample(a, parse_sequent("a |- b"))
    assert witness is not None
    assert dict(witness) == {"a": 1, "b": 0}


def brute_holds_sequent(a, s):
    ineq = sequent_inequation(s)
    from actlat.syntax import variables

    names = sorted(variables(ineq.lhs) | variables(ineq.rhs))
    for values in itertools.product(range(a.size), repeat=len(names)):
        v = dict(zip(names, values))
        if not a.leq(eval_formula(a, v, ineq.lhs), eval_formula(a, v, ineq.rhs)):
            return False
    return True


def test_holds_sequent_matches_brute_force():
    goals = ["a |- a", "a, b |- a . b", "a . b |- b . a", "a & b |- a", "a |- a | b",
             "a* |- a* . a*", "a, a \\ b |- b", "1 |- a*", "a |- b"]
    for a in (two_chain(), three_chain(), rel_algebra(2)):
        for text in goals:
            s = parse_sequent(text)
            assert holds_sequent(a, s) == brute_holds_sequent(a, s), (a.name, text)


def test_var_cap_on_large_carrier():
    a = truncated_words()
    with pytest.raises(ModelError):
        holds_sequent(a, parse_sequent("v, w, x, y, z |- v"))
    # small carriers may exceed four variables when the grid stays tractable
    assert holds_sequent(two_chain(), parse_sequent("v, w, x, y, z |- v"))


def test_holds_quasieq_contraction():
    qc = q_a_of(EX["C"])
    assert holds_quasieq(two_chain(), qc)  # idempotent product
    assert not holds_quasieq(rel_algebra(2), qc)  # composition is not


def test_holds_quasieq_cut_everywhere():
    qcut = q_of(EX["Cut"])  # five variables: feasible up to rel2, not beyond
    for a in (two_chain(), three_chain(), rel_algebra(1), rel_algebra(2)):
        assert holds_quasieq(a, qcut), a.name
    with pytest.raises(ModelError):
        holds_quasieq(truncated_words(), qcut)


def test_analytic_equation_correspondence():
    # a model satisfies the analytic quasiequation exactly when it satisfies
    # the equation form, on the whole library
    from actlat.corpus import random_analytic_quasiequations
    from actlat.rules import analytic_qe_to_equation, Quasiequation

    qes = [q_a_of(EX["C"]), q_a_of(EX["Wk"])]
    qes += [q for q in random_analytic_quasiequations(99, 4) if q.premises]
    for q in qes:
        eq = analytic_qe_to_equation(q)
        for a in library().values():
            # an inequation is a premise-free quasiequation
            holds_eq = holds_quasieq(a, Quasiequation((), eq))
            assert holds_quasieq(a, q) == holds_eq, (str(q), a.name)


def test_soundness_audit_passes_on_valid_sequents():
    goals = [parse_sequent(t) for t in ("a |- a", "a, b |- a . b", "|- 1", "a* |- a*")]
    report = soundness_audit(goals, library().values())
    assert report.ok
    assert report.checked == len(goals) * len(library())


def test_soundness_audit_flags_bad_sequent():
    report = soundness_audit([parse_sequent("a |- b")], [two_chain()])
    assert not report.ok
    assert report.violations[0].model == "two_chain"


def test_soundness_audit_respects_rule_filter():
    # contraction-dependent sequent is only audited against models of q_a(C)
    qc = q_a_of(EX["C"])
    goals = [parse_sequent("a |- a . a")]
    report = soundness_audit(goals, [two_chain(), rel_algebra(2)], [qc])
    assert report.ok
    assert report.skipped_models == ["rel2"]


def test_model_json_round_trip():
    a = three_chain()
    b = model_from_json(model_to_json(a))
    assert validate_algebra(b).ok
    assert b.elements == a.elements
    assert (b.prod == a.prod).all()
