import random

import numpy as np
import pytest

from actlat.frames import (
    FrameError,
    FrameSets,
    ResiduatedFrame,
    check_gentzen,
    check_nuclear,
    check_star_gentzen,
    dual_algebra,
    embedding_check,
    frame_of_algebra,
    frame_satisfies_q,
    gamma,
    macneille,
    quasimorphism_check,
    syntactic_n,
    triangles,
    verify_transfer,
)
from actlat.models import (
    library,
    rel_algebra,
    three_chain,
    truncated_words,
    two_chain,
    validate_algebra,
    holds_quasieq,
)
from actlat.rules import example_structural_rules, q_a_of
from actlat.syntax import Var, parse_formula

EX = example_structural_rules()

SMALL = [two_chain(), three_chain(), rel_algebra(1), rel_algebra(2)]


def test_algebra_frames_are_nuclear():
    for a in SMALL:
        gf = frame_of_algebra(a)
        assert check_nuclear(gf.frame).ok, a.name


def test_triangles_empty_set():
    f = frame_of_algebra(two_chain()).frame
    right, closure = triangles(f, [])
    assert right == (0, 1)  # everything is related to the whole second sort
    # closure of the empty set: elements below everything = {0}
    assert closure == (0,)


def test_triangles_full_set():
    f = frame_of_algebra(three_chain()).frame
    right, _ = triangles(f, [0, 1, 2])
    assert right == (2,)  # only the top bounds everything


def test_gamma_idempotent_extensive():
    rng = random.Random(5)
    for a in SMALL:
        f = frame_of_algebra(a).frame
        sets = FrameSets(f)
        for _ in range(20):
            subset = [i for i in range(f.w_size) if rng.random() < 0.4]
            closed = gamma(f, subset)
            assert set(subset) <= set(closed)
            assert gamma(f, closed) == closed


def test_galois_antitone():
    rng = random.Random(6)
    f = frame_of_algebra(rel_algebra(2)).frame
    sets = FrameSets(f)
    for _ in range(20):
        x = sum(1 << i for i in range(16) if rng.random() < 0.5)
        y = x | (1 << rng.randrange(16))
        assert sets.polar_right(y) & ~sets.polar_right(x) == 0  # X <= Y gives Y^> <= X^>


def test_nucleus_law():
    rng = random.Random(7)
    for a in SMALL:
        f = frame_of_algebra(a).frame
        sets = FrameSets(f)
        for _ in range(15):
            x = sum(1 << i for i in range(f.w_size) if rng.random() < 0.4)
            y = sum(1 << i for i in range(f.w_size) if rng.random() < 0.4)
            lhs = sets.set_product(sets.gamma(x), sets.gamma(y))
            rhs = sets.gamma(sets.set_product(x, y))
            assert lhs & ~rhs == 0  # gamma(X) o gamma(Y) inside gamma(X o Y)


def test_dual_algebra_two_chain_isomorphic():
    a = two_chain()
    dual = dual_algebra(frame_of_algebra(a).frame)
    assert len(dual.closed) == 2
    assert validate_algebra(dual.algebra).ok


def test_dual_algebra_degenerate_frame():
    # total relation: everything collapses to a single closed set
    f = ResiduatedFrame(
        name="degenerate",
        w_names=("p", "q"),
        wp_names=("u",),
        n_rel=np.ones((2, 1), dtype=bool),
        op=np.array([[0, 1], [1, 1]]),
        eps=0,
        lres_w=np.zeros((2, 1), dtype=int),
        rres_w=np.zeros((1, 2), dtype=int),
    )
    assert check_nuclear(f).ok
    dual = dual_algebra(f)
    assert len(dual.closed) == 1


def test_dual_algebra_of_rel2_is_rel2():
    a = rel_algebra(2)
    dual = dual_algebra(frame_of_algebra(a).frame)
    assert len(dual.closed) == a.size
    assert validate_algebra(dual.algebra).ok


def test_dual_algebras_validate_with_star_continuity():
    for a in SMALL:
        dual = dual_algebra(frame_of_algebra(a).frame)
        report = validate_algebra(dual.algebra)
        assert report.ok, (a.name, report.violations)


def test_gentzen_frames_pass():
    for a in SMALL:
        gf = frame_of_algebra(a)
        report = check_gentzen(gf, with_cut=True)
        assert report.ok, (a.name, report.violations)


def test_star_gentzen_frames_pass():
    for a in SMALL:
        gf = frame_of_algebra(a)
        report = check_star_gentzen(gf, with_cut=True)
        assert report.ok, (a.name, report.violations)


def test_gentzen_detects_broken_relation():
    a = two_chain()
    gf = frame_of_algebra(a)
    gf.frame.n_rel = gf.frame.n_rel.copy()
    gf.frame.n_rel[0, 1] = False  # drop 0 <= 1
    report = check_star_gentzen(gf)
    assert not report.ok


def test_quasimorphism_on_algebra_frames():
    for a in SMALL:
        gf = frame_of_algebra(a)
        dual = dual_algebra(gf.frame)
        report = quasimorphism_check(gf, dual)
        assert report.ok, (a.name, report.violations)


def test_embedding_on_algebra_frames():
    for a in SMALL:
        gf = frame_of_algebra(a)
        report = embedding_check(gf)
        assert report.ok, (a.name, report.violations)


def test_frame_satisfaction_matches_algebra():
    qc = q_a_of(EX["C"])
    qwk = q_a_of(EX["Wk"])
    for a in SMALL:
        f = frame_of_algebra(a).frame
        assert frame_satisfies_q(f, qc) == holds_quasieq(a, qc), a.name
        assert frame_satisfies_q(f, qwk) == holds_quasieq(a, qwk), a.name


def test_transfer_biconditional():
    qes = [q_a_of(EX["C"]), q_a_of(EX["Wk"])]
    for a in SMALL:
        f = frame_of_algebra(a).frame
        dual = dual_algebra(f)
        for q in qes:
            report = verify_transfer(f, q, dual)
            assert report.ok, (a.name, str(q))


def test_macneille_small_models():
    for a in SMALL:
        result = macneille(a)
        assert result.star_gentzen.ok, a.name
        assert result.is_isomorphism, a.name
        assert validate_algebra(result.dual.algebra).ok


def test_macneille_preserves_quasiequations():
    for a in SMALL:
        result = macneille(a)
        for rule_name in ("C", "Wk"):
            q = q_a_of(EX[rule_name])
            assert holds_quasieq(a, q) == holds_quasieq(result.dual.algebra, q)


def test_syntactic_membership():
    a, b = Var("a"), Var("b")
    assert syntactic_n((a,), ((), (), a)) == "proved"
    from actlat.syntax import Prod

    assert syntactic_n((a, b), ((), (), Prod(a, b))) == "proved"
    assert syntactic_n((a,), ((), (), b)) == "unknown"
