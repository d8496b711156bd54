"""One test per audit criterion, each printing its own pass/fail line and
enforcing the stated time budget.  Run with ``pytest tests/test_acceptance.py -v``
or through ``actlat corpus run``."""

import pytest

from actlat import corpus

SEED = 20240810

_BUDGETS = {
    1: 1.0,       # exact match, < 1 s
    2: 60.0,      # 200 + 50 seeded inputs, < 60 s
    3: 10.0,      # 3 accepted + 10 rejected, < 10 s
    4: 300.0,     # 25 goals both directions, < 5 min
    5: 300.0,     # no stated budget; keep it bounded
    6: 120.0,     # zero violations, < 2 min
    7: 120.0,     # zero violations, < 2 min
    8: 300.0,     # zero disagreements
    9: 300.0,     # zero violations
    10: 300.0,    # 100% on the goal corpus
}

_RESULTS = {}


def _run(number, runner, *args):
    result = runner(*args)
    _RESULTS[number] = result
    print(f"\n{'PASS' if result.passed else 'FAIL'} criterion {result.number} "
          f"({result.name}): {result.detail} [{result.seconds:.1f}s]")
    assert result.passed, result.detail
    assert result.seconds < _BUDGETS[number], (
        f"criterion {number} took {result.seconds:.1f}s, budget {_BUDGETS[number]}s"
    )


def test_criterion_01_rule_engine_fidelity():
    _run(1, corpus._crit_rule_engine)


def test_criterion_02_admissible_rules():
    _run(2, corpus._crit_admissibility, SEED)


def test_criterion_03_cyclic_progress_checker():
    _run(3, corpus._crit_progress)


def test_criterion_04_translation_equivalence():
    _run(4, corpus._crit_translation)


def test_criterion_05_projection_invariants():
    _run(5, corpus._crit_projection)


def test_criterion_06_soundness_audit():
    _run(6, corpus._crit_soundness)


def test_criterion_07_frame_suite():
    _run(7, corpus._crit_frames, SEED)


def test_criterion_08_quasiequation_transfer():
    _run(8, corpus._crit_transfer, SEED)


def test_criterion_09_completion_closure():
    _run(9, corpus._crit_macneille, SEED)


def test_criterion_10_empirical_cut_elimination():
    _run(10, corpus._crit_cut_elimination)
