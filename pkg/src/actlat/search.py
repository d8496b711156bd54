"""Bounded backward proof search producing cyclic proofs.

Goals are expanded backward through the rules in a fixed order: the identity
axiom, right principal rules, left principal rules with the left star rule
last, then user structural rules, then cut when enabled.  A goal equal to an
ancestor on the current path may close with a back-edge, but only when the
path segment in between applies the left star rule at least once (a cycle
without it can never progress).  Each complete candidate graph runs through
the global progress check; the first accepted one is returned.

The search is a semi-decision procedure: exhausted budgets yield an unknown
result, never a refutation.  Refutation is a separate counter-valuation
search in finite models.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .progress import check_cyclic_progress
from .proof_core import CyclicNode, CyclicProof, RuleApp
from .rules import (
    Instantiation,
    RuleSet,
    SchematicRule,
    classify,
    instantiate,
    match_conclusion,
    principal_position,
)
from .models import FiniteActionLattice, find_sequent_counterexample
from .syntax import (
    Formula,
    Join,
    LRes,
    Meet,
    One,
    Prod,
    RRes,
    Sequent,
    Star,
    Var,
    Zero,
)


@dataclass
class SearchConfig:
    depth: int = 40
    loop_window: int = 20
    visit_cap: int = 2000
    max_candidates: int = 64
    split_cap: int = 10**6
    with_cut: bool = False
    width_slack: int = 4          # premises may exceed the goal width by this much
    step_cap: int = 200_000       # total expansions before giving up
    semantic_prune: bool = True   # drop subgoals refuted by a sound counter-model

    def __post_init__(self):
        if min(self.depth, self.loop_window, self.visit_cap, self.max_candidates,
               self.width_slack + 1, self.step_cap) <= 0:
            raise ValueError("all search bounds must be positive")


@dataclass
class SearchResult:
    found: bool
    proof: CyclicProof | None = None
    reason: str = ""


@dataclass(frozen=True)
class _Cand:
    sequent: Sequent
    rule: str
    inst: Instantiation
    children: tuple


@dataclass(frozen=True)
class _Back:
    ancestor: int


def _splits(forms: tuple[Formula, ...]) -> Iterator[tuple[tuple, tuple]]:
    for k in range(len(forms) + 1):
        yield forms[:k], forms[k:]


def _subformulas(f: Formula) -> set[Formula]:
    out = {f}
    if isinstance(f, (Meet, Join, Prod, LRes, RRes)):
        out |= _subformulas(f.left) | _subformulas(f.right)
    elif isinstance(f, Star):
        out |= _subformulas(f.body)
    return out


def _expansions(goal: Sequent, rules: RuleSet, user: Sequence[SchematicRule],
                cfg: SearchConfig) -> Iterator[tuple[str, Instantiation, tuple[Sequent, ...]]]:
    lhs, rhs = goal.antecedent, goal.succedent

    def emit(name: str, inst: Instantiation):
        ri = instantiate(rules.resolve(name), inst)
        return name, inst, ri.premises

    # axioms
    if len(lhs) == 1 and isinstance(rhs, Var) and lhs[0] == rhs:
        yield emit("id", Instantiation(fmap={"a": rhs}))
    for i, f in enumerate(lhs):
        if isinstance(f, Zero):
            yield emit("zeroL", Instantiation(fmap={"b": rhs},
                                              smap={"Gamma": lhs[:i], "Delta": lhs[i + 1:]}))
    # right rules
    if isinstance(rhs, One) and not lhs:
        yield emit("oneR", Instantiation())
    if isinstance(rhs, Meet):
        yield emit("meetR", Instantiation(fmap={"b0": rhs.left, "b1": rhs.right},
                                          smap={"Gamma": lhs}))
    if isinstance(rhs, Join):
        yield emit("joinR0", Instantiation(fmap={"b0": rhs.left, "b1": rhs.right},
                                           smap={"Gamma": lhs}))
        yield emit("joinR1", Instantiation(fmap={"b0": rhs.left, "b1": rhs.right},
                                           smap={"Gamma": lhs}))
    if isinstance(rhs, Prod):
        for gamma, delta in _splits(lhs):
            yield emit("prodR", Instantiation(fmap={"b0": rhs.left, "b1": rhs.right},
                                              smap={"Gamma": gamma, "Delta": delta}))
    if isinstance(rhs, LRes):
        yield emit("lresR", Instantiation(fmap={"b0": rhs.left, "b1": rhs.right},
                                          smap={"Gamma": lhs}))
    if isinstance(rhs, RRes):
        yield emit("rresR", Instantiation(fmap={"b0": rhs.left, "b1": rhs.right},
                                          smap={"Gamma": lhs}))
    if isinstance(rhs, Star):
        if not lhs:
            yield emit("starR0", Instantiation(fmap={"b": rhs.body}))
        for gamma, delta in _splits(lhs):
            yield emit("starR1", Instantiation(fmap={"b": rhs.body},
                                               smap={"Gamma": gamma, "Delta": delta}))
    # left rules other than the star rule
    for i, f in enumerate(lhs):
        gamma, delta = lhs[:i], lhs[i + 1:]
        if isinstance(f, One):
            yield emit("oneL", Instantiation(fmap={"b": rhs},
                                             smap={"Gamma": gamma, "Delta": delta}))
        elif isinstance(f, Meet):
            base = {"a0": f.left, "a1": f.right, "b": rhs}
            ctx = {"Gamma": gamma, "Delta": delta}
            yield emit("meetL0", Instantiation(fmap=dict(base), smap=dict(ctx)))
            yield emit("meetL1", Instantiation(fmap=dict(base), smap=dict(ctx)))
        elif isinstance(f, Join):
            yield emit("joinL", Instantiation(fmap={"a0": f.left, "a1": f.right, "b": rhs},
                                              smap={"Gamma": gamma, "Delta": delta}))
        elif isinstance(f, Prod):
            yield emit("prodL", Instantiation(fmap={"a0": f.left, "a1": f.right, "b": rhs},
                                              smap={"Gamma": gamma, "Delta": delta}))
        elif isinstance(f, LRes):
            # conclusion Gamma, Delta', f, Sigma |- b: split the left context
            for g2, d2 in _splits(gamma):
                yield emit("lresL", Instantiation(
                    fmap={"a0": f.left, "a1": f.right, "b": rhs},
                    smap={"Gamma": g2, "Delta": d2, "Sigma": delta}))
        elif isinstance(f, RRes):
            for d2, s2 in _splits(delta):
                yield emit("rresL", Instantiation(
                    fmap={"a0": f.right, "a1": f.left, "b": rhs},
                    smap={"Gamma": gamma, "Delta": d2, "Sigma": s2}))
    # the left star rule, last of the principal rules
    for i, f in enumerate(lhs):
        if isinstance(f, Star):
            yield emit("starL", Instantiation(fmap={"a": f.body, "b": rhs},
                                              smap={"Gamma": lhs[:i], "Delta": lhs[i + 1:]}))
    # user structural rules, in the given order
    for rule in user:
        for inst in match_conclusion(rule, goal, cfg.split_cap):
            missing_f, missing_s = rule.metavariable_names()
            if set(inst.fmap) < missing_f or set(inst.smap) < missing_s:
                continue  # premise-only metavariables are not searchable
            ri = instantiate(rule, inst)
            yield rule.name, inst, ri.premises
    # cut, with cut formulas drawn from subformulas of the goal
    if cfg.with_cut:
        pool = sorted(
            set().union(*(_subformulas(f) for f in lhs + (rhs,))),
            key=str,
        )
        cut = rules.resolve("Cut")
        for gamma, rest in _splits(lhs):
            for delta, pi in _splits(rest):
                for alpha in pool:
                    inst = Instantiation(fmap={"a": alpha, "b": rhs},
                                         smap={"Gamma": gamma, "Delta": delta, "Pi": pi})
                    ri = instantiate(cut, inst)
                    yield "Cut", inst, ri.premises


def _to_cyclic(cand: _Cand, rules: RuleSet) -> CyclicProof:
    nodes: dict[str, CyclicNode] = {}
    counter = itertools.count()

    def build(c: _Cand, stack: list[str]) -> str:
        nid = f"s{next(counter)}"
        stack.append(nid)
        child_ids = []
        for child in c.children:
            if isinstance(child, _Back):
                child_ids.append(stack[child.ancestor])
            else:
                child_ids.append(build(child, stack))
        stack.pop()
        rule = rules.resolve(c.rule)
        nodes[nid] = CyclicNode(
            c.sequent, RuleApp(rule.name, c.inst, principal_position(rule, c.inst)),
            tuple(child_ids),
        )
        return nid

    root = build(cand, [])
    return CyclicProof(nodes, root)


class _StepsExhausted(Exception):
    pass


def _pruning_models(user_rules, cfg) -> list[FiniteActionLattice]:
    """Finite models whose failures soundly rule subgoals out.  A model only
    qualifies when it satisfies the quasiequations of every active
    structural rule (built-in rules and cut are sound in any model)."""
    from .models import holds_quasieq, two_chain
    from .rules import q_of

    if not cfg.semantic_prune:
        return []
    model = two_chain()
    for rule in user_rules:
        if not classify(rule).structural:
            return []
        if not holds_quasieq(model, q_of(rule)):
            return []
    return [model]


def prove(goal: Sequent, user_rules: Sequence[SchematicRule] = (),
          cfg: SearchConfig | None = None, rules: RuleSet | None = None) -> SearchResult:
    """Search for a cyclic proof of the goal.

    Returns the first candidate accepted by the progress check; budget
    exhaustion gives an unknown result, never a refutation.
    """
    cfg = cfg or SearchConfig()
    rules = rules or RuleSet(list(user_rules))
    visits: dict[Sequent, int] = {}
    steps = [0]
    max_width = goal.width + cfg.width_slack
    pruning = _pruning_models(user_rules, cfg)

    def viable(s: Sequent) -> bool:
        if s.width > max_width:
            return False
        return all(find_sequent_counterexample(m, s) is None for m in pruning)

    def candidates(s: Sequent, depth: int, path: list[tuple[Sequent, str]]):
        # path holds exactly one (sequent, rule) entry per ancestor node, so
        # back-edge indices line up with the stack the graph builder keeps
        visits[s] = visits.get(s, 0) + 1
        if visits[s] > cfg.visit_cap:
            return
        lo = max(0, len(path) - cfg.loop_window)
        for i in range(lo, len(path)):
            anc, _ = path[i]
            if anc == s and any(r == "starL" for _, r in path[i:]):
                yield _Back(i)
        if depth <= 0:
            return
        for name, inst, premises in _expansions(s, rules, user_rules, cfg):
            steps[0] += 1
            if steps[0] > cfg.step_cap:
                raise _StepsExhausted
            if any(p == s for p in premises):
                continue  # a premise equal to its conclusion can never progress
            if not all(viable(p) for p in premises):
                continue
            path.append((s, name))
            try:
                yield from _combine(s, name, inst, premises, 0, (), depth, path)
            finally:
                path.pop()

    def _combine(s, name, inst, premises, idx, done, depth, path):
        if idx == len(premises):
            yield _Cand(s, name, inst, done)
            return
        for sub in candidates(premises[idx], depth - 1, path):
            yield from _combine(s, name, inst, premises, idx + 1, done + (sub,), depth, path)

    if not viable(goal):
        return SearchResult(False, None, "goal fails in a sound finite counter-model")
    from .proof_core import check_cyclic_local

    produced = 0
    try:
        for cand in candidates(goal, cfg.depth, []):
            if isinstance(cand, _Back):
                continue
            produced += 1
            proof = _to_cyclic(cand, rules)
            if check_cyclic_local(proof, rules).ok and \
                    check_cyclic_progress(proof, rules).accepted:
                return SearchResult(True, proof)
            if produced >= cfg.max_candidates:
                return SearchResult(False, None, "candidate budget exhausted")
    except _StepsExhausted:
        return SearchResult(False, None, "step budget exhausted")
    return SearchResult(False, None, "search space exhausted within bounds")


@dataclass
class RefuteResult:
    refuted: bool
    model: str = ""
    valuation: tuple = ()


def refute(goal: Sequent, models: Sequence[FiniteActionLattice]) -> RefuteResult:
    """Look for a finite counter-model among the given models.  The caller
    is responsible for only passing models of the active structural rules."""
    for a in models:
        witness = find_sequent_counterexample(a, goal)
        if witness is not None:
            return RefuteResult(True, a.name, witness)
    return RefuteResult(False)
