"""Translations between the cyclic and the infinitary proof system.

Both directions work through a lazy preproof interface: a tree exposed by
expanding node addresses (tuples of child indices) on demand.  That one
interface covers finite-graph cyclic proofs, wellfounded trees with
infinitary nodes, and the genuinely non-regular outputs of the translations.

Cyclic to wellfounded: a proof is first read as a preproof with the
right-child product rule available, each left star node is replaced by a
modified infinitary node whose premise family projects the unfolding premise
at every depth, the result is materialized eagerly between infinitary nodes,
and finally the modified nodes are flattened to the standard infinitary rule
by product and unit inversions.

Wellfounded to cyclic-system: each infinitary node becomes an infinite left
star ladder whose spine keeps the starred formula principal at every step,
so every branch into the ladder is progressing by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .progress import check_cyclic_progress
from .proof_core import (
    CyclicNode,
    CyclicProof,
    OmegaFamily,
    ProofError,
    ResourceLimit,
    RuleApp,
    WfProof,
    check_local,
    to_standard_omega,
)
from .rules import (
    Instantiation,
    RuleSet,
    SchematicRule,
    ancestry_for_children,
    classify,
    instantiate_conclusion,
    instantiate_premise,
    layout,
    principal_position,
)
from .syntax import Sequent, Star, power_formula

StarAssignment = dict[int, int]


class AddressError(ValueError):
    pass


class AssignmentError(ValueError):
    pass


class UniformityError(AssertionError):
    """The projected instance fails to re-instantiate its rule; this signals
    a defect in the rule engine, not in the input proof."""


def validate_assignment(f: StarAssignment, s: Sequent) -> None:
    for pos, value in f.items():
        if value is None:
            continue
        if not 0 <= pos < s.width:
            raise AssignmentError(f"assigned position {pos} outside the antecedent")
        if not isinstance(s.formula_at(pos), Star):
            raise AssignmentError(f"assigned position {pos} does not hold a starred formula")
        if value < 0:
            raise AssignmentError("assigned values are naturals")


def project_sequent(s: Sequent, f: StarAssignment) -> Sequent:
    """Replace each assigned starred occurrence by the packed finite power."""
    validate_assignment(f, s)
    lhs = list(s.antecedent)
    for pos, value in f.items():
        lhs[pos] = power_formula(lhs[pos].body, value)
    return Sequent(tuple(lhs), s.succedent)


def evolve_assignment(
    f: StarAssignment,
    rule: SchematicRule,
    inst: Instantiation,
    child_index: int,
) -> StarAssignment:
    """Carry an assignment from a conclusion to one premise along immediate
    ancestry; positions with no ancestor in the premise drop out.

    Only allowed for linear rules, the id axiom, or principal rules whose
    principal occurrence is unassigned.
    """
    flags = classify(rule)
    principal = principal_position(rule, inst)
    if not (flags.linear or rule.name == "id" or principal is not None):
        raise AssignmentError(f"cannot evolve through {rule.name}")
    if principal is not None and principal in f:
        raise AssignmentError("the principal occurrence is assigned; use projection")
    out: StarAssignment = {}
    for (_, q_premise), q_conclusion in ancestry_for_children(rule, inst, [child_index]):
        if q_conclusion in f and q_premise >= 0:
            if q_premise in out and out[q_premise] != f[q_conclusion]:
                raise AssignmentError("conflicting ancestor assignments")
            out[q_premise] = f[q_conclusion]
    return out


def project_instantiation(
    rule: SchematicRule, inst: Instantiation, f: StarAssignment
) -> Instantiation:
    """Apply an assignment inside the images of the conclusion's sequence
    metavariables."""
    origins, _, _ = layout(rule.conclusion, inst)
    out = inst.copy()
    for pos, value in f.items():
        origin = origins[pos]
        if origin.kind != "svar":
            raise AssignmentError(
                f"assigned occurrence {pos} is not inside a sequence metavariable of {rule.name}"
            )
        image = out.smap[origin.name]
        target = image[origin.offset]
        if not isinstance(target, Star):
            raise AssignmentError(f"occurrence {pos} does not hold a starred formula")
        out.smap[origin.name] = (
            image[:origin.offset] + (power_formula(target.body, value),) + image[origin.offset + 1:]
        )
    return out


def check_rule_uniformity(
    rule: SchematicRule, inst: Instantiation, f: StarAssignment, rules: RuleSet | None = None
):
    """Project an instance and assert the result instantiates the same rule.

    Returns (projected instantiation, projected premises, projected
    conclusion); a mismatch raises, signalling a rule-engine bug.
    """
    conclusion = instantiate_conclusion(rule, inst)
    validate_assignment(f, conclusion)
    projected = project_instantiation(rule, inst, f)
    want_conclusion = project_sequent(conclusion, f)
    got_conclusion = instantiate_conclusion(rule, projected)
    if got_conclusion != want_conclusion:
        raise UniformityError(
            f"projected conclusion of {rule.name} is {got_conclusion}, expected {want_conclusion}"
        )
    premises = []
    if not rule.is_omega:
        for i in range(len(rule.premises)):
            fi = evolve_assignment(f, rule, inst, i)
            want = project_sequent(instantiate_premise(rule, inst, i), fi)
            got = instantiate_premise(rule, projected, i)
            if got != want:
                raise UniformityError(
                    f"projected premise {i} of {rule.name} is {got}, expected {want}"
                )
            premises.append(got)
    return projected, tuple(premises), got_conclusion


# ---------------------------------------------------------------------------
# Lazy preproofs.


@dataclass(frozen=True)
class NodeView:
    sequent: Sequent
    app: RuleApp
    child_indices: tuple[int, ...] | None  # None: a child for every natural


class LazyPreproof:
    """Expand-on-demand preproof; re-expansion of an address is stable."""

    rules: RuleSet

    def node_at(self, addr: tuple[int, ...]) -> NodeView:
        raise NotImplementedError

    def child_view(self, view: NodeView) -> tuple[int, ...] | None:
        return view.child_indices


def _indices_for(rules: RuleSet, app: RuleApp) -> tuple[int, ...] | None:
    return rules.resolve(app.rule).child_indices()


class WfLazy(LazyPreproof):
    def __init__(self, proof: WfProof, rules: RuleSet | None = None):
        self.proof = proof
        self.rules = rules or RuleSet()
        self._memo: dict[tuple[int, ...], WfProof] = {(): proof}

    def _node(self, addr: tuple[int, ...]) -> WfProof:
        if addr in self._memo:
            return self._memo[addr]
        parent = self._node(addr[:-1])
        step = addr[-1]
        if parent.is_omega:
            node = parent.children(step)
        else:
            indices = _indices_for(self.rules, parent.app)
            if step not in indices:
                raise AddressError(f"no child {step} at {addr[:-1]}")
            node = parent.children[indices.index(step)]
        self._memo[addr] = node
        return node

    def node_at(self, addr):
        node = self._node(tuple(addr))
        return NodeView(node.sequent, node.app,
                        None if node.is_omega else _indices_for(self.rules, node.app))


class CyclicLazy(LazyPreproof):
    def __init__(self, proof: CyclicProof, rules: RuleSet | None = None):
        self.proof = proof
        self.rules = rules or RuleSet()
        self._memo: dict[tuple[int, ...], str] = {(): proof.root}

    def _node_id(self, addr: tuple[int, ...]) -> str:
        if addr in self._memo:
            return self._memo[addr]
        parent_id = self._node_id(addr[:-1])
        parent = self.proof.node(parent_id)
        indices = _indices_for(self.rules, parent.app)
        if indices is None:
            raise ProofError("infinitary rules cannot occur in a cyclic proof")
        step = addr[-1]
        if step not in indices:
            raise AddressError(f"no child {step} at {addr[:-1]}")
        nid = parent.children[indices.index(step)]
        self._memo[addr] = nid
        return nid

    def node_at(self, addr):
        node = self.proof.node(self._node_id(tuple(addr)))
        return NodeView(node.sequent, node.app, _indices_for(self.rules, node.app))


class SubtreeLazy(LazyPreproof):
    def __init__(self, src: LazyPreproof, base: tuple[int, ...]):
        self.src = src
        self.base = base
        self.rules = src.rules

    def node_at(self, addr):
        return self.src.node_at(self.base + tuple(addr))


def as_lazy(proof, rules: RuleSet | None = None) -> LazyPreproof:
    if isinstance(proof, LazyPreproof):
        return proof
    if isinstance(proof, CyclicProof):
        return CyclicLazy(proof, rules)
    if isinstance(proof, WfProof):
        return WfLazy(proof, rules)
    raise TypeError(f"not a proof: {proof!r}")


# ---------------------------------------------------------------------------
# Projection.


class ProjectedLazy(LazyPreproof):
    """The f-projection of a preproof.

    Node addresses coincide with source addresses: the replaced left star
    steps keep their child index (0 for the vanishing power, 1 through the
    right-child product rule), and every other node keeps its own indices.
    """

    def __init__(self, src: LazyPreproof, f: StarAssignment, rules: RuleSet | None = None):
        self.src = src
        self.rules = rules or src.rules
        self.f0 = dict(f)
        self._states: dict[tuple[int, ...], StarAssignment] = {}

    def _case(self, view: NodeView, f: StarAssignment) -> tuple[str, int | None]:
        if view.app.rule == "starL":
            k = view.app.principal
            if k in f:
                return ("zero", k) if f[k] == 0 else ("succ", k)
        return ("copy", None)

    def _state(self, addr: tuple[int, ...]) -> StarAssignment:
        if addr in self._states:
            return self._states[addr]
        if not addr:
            f = dict(self.f0)
            validate_assignment(f, self.src.node_at(()).sequent)
        else:
            parent, step = addr[:-1], addr[-1]
            fp = self._state(parent)
            view = self.src.node_at(parent)
            case, k = self._case(view, fp)
            if case == "zero":
                if step != 0:
                    raise AddressError(f"no child {step} at {parent}")
                f = {p - (p > k): v for p, v in fp.items() if p != k}
            elif case == "succ":
                if step != 1:
                    raise AddressError(f"no child {step} at {parent}")
                f = {p + (p > k): v for p, v in fp.items() if p != k}
                f[k + 1] = fp[k] - 1
            else:
                rule = self.rules.resolve(view.app.rule)
                f = evolve_assignment(fp, rule, view.app.inst, step)
        self._states[addr] = f
        return f

    def node_at(self, addr):
        addr = tuple(addr)
        f = self._state(addr)
        view = self.src.node_at(addr)
        case, k = self._case(view, f)
        if case == "copy":
            rule = self.rules.resolve(view.app.rule)
            if not f:
                return view
            projected, _, conclusion = check_rule_uniformity(rule, view.app.inst, f, self.rules)
            app = RuleApp(rule.name, projected, principal_position(rule, projected))
            return NodeView(conclusion, app, view.child_indices)
        sequent = project_sequent(view.sequent, f)
        alpha = view.app.inst.fmap["a"]
        before, after = sequent.antecedent[:k], sequent.antecedent[k + 1:]
        if case == "zero":
            inst = Instantiation(fmap={"b": sequent.succedent},
                                 smap={"Gamma": before, "Delta": after})
            app = RuleApp("oneL", inst, k)
            return NodeView(sequent, app, (0,))
        n = f[k]
        inst = Instantiation(
            fmap={"a0": alpha, "a1": power_formula(alpha, n - 1), "b": sequent.succedent},
            smap={"Gamma": before, "Delta": after},
        )
        app = RuleApp("prodL1", inst, k)
        return NodeView(sequent, app, (1,))


def project_proof(proof, f: StarAssignment, rules: RuleSet | None = None) -> ProjectedLazy:
    """The f-projection: assigned left star steps become unit or right-child
    product steps over the projection of the matching premise; everything
    else is copied with the assignment carried along ancestry."""
    src = as_lazy(proof, rules)
    return ProjectedLazy(src, f, rules or src.rules)


def project_single(proof, k: int, n: int, rules: RuleSet | None = None) -> ProjectedLazy:
    """Projection by the singleton assignment sending occurrence k to n."""
    return project_proof(proof, {k: n}, rules)


# ---------------------------------------------------------------------------
# The cyclic-to-infinitary reading.


class OmLazy(LazyPreproof):
    """Replace every left star node by a modified infinitary node whose
    premise family projects the unfolding premise at each depth."""

    def __init__(self, src: LazyPreproof, rules: RuleSet | None = None):
        self.src = src
        self.rules = rules or src.rules
        self._subs: dict[tuple[tuple[int, ...], int], OmLazy] = {}

    def _omega_child(self, src_addr: tuple[int, ...], step: int) -> "OmLazy":
        key = (src_addr, step)
        if key not in self._subs:
            view = self.src.node_at(src_addr)
            k = view.app.principal
            sub = SubtreeLazy(self.src, src_addr + (1,))
            projected = ProjectedLazy(sub, {k + 1: step - 1}, self.rules)
            self._subs[key] = OmLazy(projected, self.rules)
        return self._subs[key]

    def node_at(self, addr):
        addr = tuple(addr)
        cur: tuple[int, ...] = ()
        i = 0
        while i < len(addr):
            view = self.src.node_at(cur)
            step = addr[i]
            if view.app.rule == "starL":
                if step == 0:
                    cur += (0,)
                else:
                    return self._omega_child(cur, step).node_at(addr[i + 1:])
            else:
                indices = view.child_indices
                if indices is not None and step not in indices:
                    raise AddressError(f"no child {step} at {addr[:i]}")
                cur += (step,)
            i += 1
        view = self.src.node_at(cur)
        if view.app.rule == "starL":
            rule = self.rules.resolve("starLomegaM")
            app = RuleApp("starLomegaM", view.app.inst,
                          principal_position(rule, view.app.inst))
            return NodeView(view.sequent, app, None)
        return view


def om(proof, rules: RuleSet | None = None) -> OmLazy:
    src = as_lazy(proof, rules)
    return OmLazy(src, rules or src.rules)


def path(proof: LazyPreproof, branch) -> list[int]:
    """Re-read a branch of an infinitary proof as a branch of its source:
    entering a premise family goes to the unfolding premise, the base premise
    stays first, and everything else is copied."""
    out = []
    addr: tuple[int, ...] = ()
    for step in branch:
        view = proof.node_at(addr)
        if view.child_indices is None:
            out.append(0 if step == 0 else 1)
        else:
            out.append(step)
        addr += (step,)
    return out


# ---------------------------------------------------------------------------
# Full pipelines.


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    def spend(self, addr):
        self.spent += 1
        if self.spent > self.limit:
            raise ResourceLimit(
                f"materialization exceeded {self.limit} nodes", tuple(addr)
            )


def _materialize(lazy: LazyPreproof, addr: tuple[int, ...], plain: tuple[int, ...],
                 budget: _Budget, fuel: int) -> WfProof:
    """plain tracks positions in the built tree (tuple slots and family
    indices), which is what serialized family addresses refer to."""
    budget.spend(addr)
    view = lazy.node_at(addr)
    if view.child_indices is None:
        family = OmegaFamily(
            lambda n: _materialize(lazy, addr + (n,), plain + (n,), _Budget(fuel), fuel),
            schema="projected",
            params={"address": list(plain)},
        )
        return WfProof(view.sequent, view.app, family)
    children = tuple(
        _materialize(lazy, addr + (i,), plain + (slot,), budget, fuel)
        for slot, i in enumerate(view.child_indices)
    )
    return WfProof(view.sequent, view.app, children)


def _used_rules_linear(p: CyclicProof, rules: RuleSet) -> None:
    builtin = set(rules.builtin)
    for node in p.nodes.values():
        rule = rules.resolve(node.app.rule)
        if rule.name in builtin:
            continue
        if not classify(rule).linear:
            raise ProofError(f"rule {rule.name} is not linear; translation requires linear rules")


def nwf_to_wf(p: CyclicProof, fuel: int = 100_000, rules: RuleSet | None = None) -> WfProof:
    """Translate an accepted cyclic proof into the standard infinitary
    wellfounded system, preserving the conclusion.

    Everything outside premise families is materialized eagerly (the
    translation only terminates because accepted inputs have no infinite
    branch after the rewrite); families stay lazy and each materialization is
    bounded by the fuel, with exhaustion reported as a resource limit rather
    than a validity verdict.
    """
    rules = rules or RuleSet()
    _used_rules_linear(p, rules)
    from .proof_core import check_cyclic_local

    local = check_cyclic_local(p, rules)
    if not local.ok:
        raise ProofError(f"input is not locally valid: {local.violation}")
    result = check_cyclic_progress(p, rules)
    if not result.accepted:
        raise ProofError(
            f"input fails the branch condition; counterexample cycle {list(result.counterexample or ())}"
        )
    lazy = om(CyclicLazy(p, rules), rules)
    materialized = _materialize(lazy, (), (), _Budget(fuel), fuel)
    return to_standard_omega(materialized, rules)


class LadderLazy(LazyPreproof):
    """Infinitary nodes unravelled into infinite left star ladders.

    The spine node at ladder depth j proves ``Gamma, alpha^(j), alpha*,
    Delta |- beta``; its first child is the translation of the j-th premise
    and its second child the next spine node, so the starred occurrence is
    principal at every spine step (a progressing thread by construction).
    """

    progress_certified = True

    def __init__(self, proof: WfProof, rules: RuleSet | None = None):
        self.proof = proof
        self.rules = rules or RuleSet()
        self._memo: dict[tuple[int, ...], tuple] = {}

    def _normalize(self, node: WfProof) -> tuple:
        if node.is_omega:
            if node.app.rule != "starLomega":
                raise ProofError(
                    f"only the standard infinitary rule can be unravelled, got {node.app.rule}"
                )
            return ("ladder", node, 0)
        return ("node", node)

    def _state(self, addr: tuple[int, ...]) -> tuple:
        if addr in self._memo:
            return self._memo[addr]
        if not addr:
            state = self._normalize(self.proof)
        else:
            parent = self._state(addr[:-1])
            step = addr[-1]
            if parent[0] == "ladder":
                _, node, j = parent
                if step == 0:
                    state = self._normalize(node.children(j))
                elif step == 1:
                    state = ("ladder", node, j + 1)
                else:
                    raise AddressError(f"no child {step} at {addr[:-1]}")
            else:
                node = parent[1]
                indices = _indices_for(self.rules, node.app)
                if step not in indices:
                    raise AddressError(f"no child {step} at {addr[:-1]}")
                state = self._normalize(node.children[indices.index(step)])
        self._memo[addr] = state
        return state

    def node_at(self, addr):
        state = self._state(tuple(addr))
        if state[0] == "node":
            node = state[1]
            return NodeView(node.sequent, node.app, _indices_for(self.rules, node.app))
        _, node, j = state
        inst = node.app.inst
        gamma = inst.smap["Gamma"]
        delta = inst.smap["Delta"]
        alpha = inst.fmap["a"]
        beta = inst.fmap["b"]
        star = Star(alpha)
        spine_inst = Instantiation(
            fmap={"a": alpha, "b": beta},
            smap={"Gamma": gamma + (alpha,) * j, "Delta": delta},
        )
        sequent = Sequent(gamma + (alpha,) * j + (star,) + delta, beta)
        app = RuleApp("starL", spine_inst, len(gamma) + j)
        return NodeView(sequent, app, (0, 1))


def wf_to_nwf(p: WfProof, rules: RuleSet | None = None) -> LadderLazy:
    return LadderLazy(p, rules)


# ---------------------------------------------------------------------------
# Bounded audits of lazy preproofs.


def iter_addresses(lazy: LazyPreproof, depth: int, omega_fuel: int = 3):
    """Breadth-first addresses of a lazy preproof down to the given depth;
    premise families are sampled up to omega_fuel."""
    frontier = [()]
    for _ in range(depth + 1):
        next_frontier = []
        for addr in frontier:
            yield addr
            view = lazy.node_at(addr)
            indices = view.child_indices
            if indices is None:
                indices = tuple(range(omega_fuel + 1))
            next_frontier.extend(addr + (i,) for i in indices)
        frontier = next_frontier


def check_lazy_prefix(lazy: LazyPreproof, depth: int, rules: RuleSet | None = None,
                      omega_fuel: int = 3):
    """Locally check every node of the prefix; returns (nodes checked, first
    violation or None)."""
    rules = rules or lazy.rules
    checked = 0
    for addr in iter_addresses(lazy, depth, omega_fuel):
        view = lazy.node_at(addr)
        rule = rules.resolve(view.app.rule)
        if view.child_indices is None:
            want = instantiate_conclusion(rule, view.app.inst)
            if want != view.sequent:
                return checked, (addr, "conclusion mismatch at infinitary node")
            for n in range(omega_fuel + 1):
                child = lazy.node_at(addr + (n,))
                expect = instantiate_premise(rule, view.app.inst, n)
                if child.sequent != expect:
                    return checked, (addr, f"premise {n} mismatch")
        else:
            child_sequents = tuple(
                lazy.node_at(addr + (i,)).sequent for i in view.child_indices
            )
            violation = check_local(view.sequent, view.app, child_sequents, rules)
            if violation is not None:
                return checked, (addr, str(violation))
        checked += 1
    return checked, None


def project_cyclic(p: CyclicProof, f: StarAssignment, rules: RuleSet | None = None) -> CyclicProof:
    """Regular form of the projection of a cyclic proof: states are (source
    node, assignment) pairs, of which there are finitely many."""
    rules = rules or RuleSet()
    lazy = CyclicLazy(p, rules)
    proj = ProjectedLazy(lazy, f, rules)

    def state_key(nid: str, g: StarAssignment):
        return (nid, tuple(sorted(g.items())))

    ids: dict = {}
    nodes: dict[str, CyclicNode] = {}
    order: list = []

    def visit(addr: tuple[int, ...]) -> str:
        nid = lazy._node_id(addr)
        g = proj._state(addr)
        key = state_key(nid, g)
        if key in ids:
            return ids[key]
        new_id = f"p{len(ids)}"
        ids[key] = new_id
        view = proj.node_at(addr)
        children = tuple(visit(addr + (i,)) for i in view.child_indices)
        nodes[new_id] = CyclicNode(view.sequent, view.app, children)
        order.append(new_id)
        return new_id

    import sys

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20_000))
    try:
        root = visit(())
    finally:
        sys.setrecursionlimit(old_limit)
    return CyclicProof(nodes, root)
