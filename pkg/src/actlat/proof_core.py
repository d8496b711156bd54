"""Proof objects and their local checking and admissible transformations.

Three proof representations:

* :class:`WfProof` — wellfounded trees; a node's children are either a finite
  tuple or an :class:`OmegaFamily`, a total generator of the countably many
  premises of an infinitary left star rule.
* :class:`CyclicProof` — a finite node graph with a root; back-edges encode
  regular non-wellfounded trees.  Edges to an existing node require the child
  node's sequent to equal the expected premise, which the local check
  enforces.
* lazy preproofs (see :mod:`actlat.translate`) — expand-on-demand views used
  by the translations, which can produce non-regular trees.

Bounded checking: infinitary nodes are audited for premise indices up to the
given fuel and the report carries a BOUNDED flag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .rules import (
    FVar,
    Instantiation,
    RuleError,
    RuleSet,
    SchematicRule,
    SVar,
    classify,
    instantiate,
    instantiate_conclusion,
    instantiate_premise,
    layout,
    principal_position,
)
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
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
)


class ProofError(ValueError):
    pass


class ResourceLimit(RuntimeError):
    def __init__(self, message: str, address: tuple[int, ...] | None = None):
        self.address = address
        super().__init__(message)


@dataclass(frozen=True)
class RuleApp:
    """A rule name, the instantiation used, and (for principal rules) the
    ground position of the introduced occurrence."""

    rule: str
    inst: Instantiation
    principal: int | None = None


def make_app(rules: RuleSet, name: str, inst: Instantiation) -> RuleApp:
    rule = rules.resolve(name)
    return RuleApp(rule.name, inst, principal_position(rule, inst))


class OmegaFamily:
    """Total generator of the premises of an infinitary node.

    Generators are memoized so re-invocation yields the same object; the
    optional schema tag names a registered closed form for serialization.
    """

    def __init__(self, generate: Callable[[int], "WfProof"], schema: str | None = None,
                 params: dict | None = None):
        self._generate = generate
        self._cache: dict[int, WfProof] = {}
        self.schema = schema
        self.params = params or {}

    def __call__(self, n: int) -> "WfProof":
        if n < 0:
            raise ProofError("premise indices are naturals")
        if n not in self._cache:
            self._cache[n] = self._generate(n)
        return self._cache[n]


@dataclass(frozen=True)
class WfProof:
    sequent: Sequent
    app: RuleApp
    children: tuple["WfProof", ...] | OmegaFamily = ()

    @property
    def is_omega(self) -> bool:
        return isinstance(self.children, OmegaFamily)


@dataclass(frozen=True)
class CyclicNode:
    sequent: Sequent
    app: RuleApp
    children: tuple[str, ...]


@dataclass(frozen=True)
class CyclicProof:
    nodes: Mapping[str, CyclicNode]
    root: str

    def node(self, node_id: str) -> CyclicNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise ProofError(f"unknown node id {node_id!r}")

    def rerooted(self, new_root: str) -> "CyclicProof":
        self.node(new_root)
        return CyclicProof(self.nodes, new_root)


# ---------------------------------------------------------------------------
# Local checking.


@dataclass(frozen=True)
class Violation:
    address: tuple | None
    premise_index: int | None
    expected: Sequent | None
    found: Sequent | None
    message: str

    def __str__(self) -> str:
        loc = f" at {list(self.address)}" if self.address is not None else ""
        return f"violation{loc}: {self.message}"


def check_local(
    sequent: Sequent,
    app: RuleApp,
    child_sequents: tuple[Sequent, ...],
    rules: RuleSet | None = None,
) -> Violation | None:
    """Compare a node against the instantiation of its rule.

    Returns None when the node is a correct instance, otherwise the first
    violation.  Infinitary rules are rejected here; their nodes are audited
    premise-wise by the bounded checkers.
    """
    rules = rules or RuleSet()
    try:
        rule = rules.resolve(app.rule)
    except RuleError as e:
        return Violation(None, None, None, None, str(e))
    if rule.is_omega:
        return Violation(None, None, None, None, f"rule {rule.name} needs bounded checking")
    try:
        ri = instantiate(rule, app.inst)
    except Exception as e:
        return Violation(None, None, None, None, f"bad instantiation of {rule.name}: {e}")
    if ri.conclusion != sequent:
        return Violation(
            None, None, ri.conclusion, sequent,
            f"conclusion of {rule.name} is {print_sequent(ri.conclusion)}, node has {print_sequent(sequent)}",
        )
    if len(ri.premises) != len(child_sequents):
        return Violation(
            None, None, None, None,
            f"rule {rule.name} has {len(ri.premises)} premises, node has {len(child_sequents)} children",
        )
    for i, (want, got) in enumerate(zip(ri.premises, child_sequents)):
        if want != got:
            return Violation(
                None, i, want, got,
                f"premise {i} of {rule.name} must be {print_sequent(want)}, child proves {print_sequent(got)}",
            )
    if app.principal != principal_position(rule, app.inst):
        return Violation(None, None, None, None, f"principal mark of {rule.name} is wrong")
    return None


def _check_omega_node(
    p: WfProof, fuel: int, rules: RuleSet, address: tuple
) -> tuple[Violation | None, list[tuple[tuple, WfProof]]]:
    rule = rules.resolve(p.app.rule)
    if not rule.is_omega:
        return (
            Violation(address, None, None, None, f"rule {rule.name} cannot take a premise family"),
            [],
        )
    try:
        want_conclusion = instantiate_conclusion(rule, p.app.inst)
    except Exception as e:
        return Violation(address, None, None, None, f"bad instantiation of {rule.name}: {e}"), []
    if want_conclusion != p.sequent:
        return (
            Violation(address, None, want_conclusion, p.sequent,
                      f"conclusion of {rule.name} does not match node"),
            [],
        )
    pending = []
    for n in range(fuel + 1):
        child = p.children(n)
        want = instantiate_premise(rule, p.app.inst, n)
        if child.sequent != want:
            return (
                Violation(address, n, want, child.sequent,
                          f"premise {n} of {rule.name} must be {print_sequent(want)}"),
                [],
            )
        pending.append((address + (n,), child))
    return None, pending


@dataclass
class WfReport:
    ok: bool
    nodes_checked: int
    bounded: bool
    violation: Violation | None = None

    def __str__(self) -> str:
        status = "ok" if self.ok else str(self.violation)
        tag = " [BOUNDED]" if self.bounded else ""
        return f"{status}; {self.nodes_checked} nodes checked{tag}"


def check_wf(p: WfProof, omega_fuel: int = 5, rules: RuleSet | None = None) -> WfReport:
    """Audit a wellfounded proof: every finite node exhaustively, every
    infinitary node for premises 0..omega_fuel."""
    if omega_fuel < 1:
        raise ValueError("omega_fuel must be >= 1")
    rules = rules or RuleSet()
    stack: list[tuple[tuple, WfProof]] = [((), p)]
    checked = 0
    bounded = False
    while stack:
        address, node = stack.pop()
        checked += 1
        if node.is_omega:
            bounded = True
            violation, pending = _check_omega_node(node, omega_fuel, rules, address)
            if violation:
                return WfReport(False, checked, bounded, violation)
            stack.extend(pending)
        else:
            violation = check_local(
                node.sequent, node.app, tuple(c.sequent for c in node.children), rules
            )
            if violation:
                return WfReport(
                    False, checked, bounded,
                    Violation(address, violation.premise_index, violation.expected,
                              violation.found, violation.message),
                )
            stack.extend((address + (i,), c) for i, c in enumerate(node.children))
    return WfReport(True, checked, bounded)


# ---------------------------------------------------------------------------
# Ordinal heights in Cantor normal form (polynomials in the first limit
# ordinal: terms (exponent, coefficient) with exponents descending).


@dataclass(frozen=True, order=False)
class Ordinal:
    terms: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def nat(n: int) -> "Ordinal":
        return Ordinal(((0, n),)) if n else Ordinal()

    @staticmethod
    def omega(exponent: int = 1, coefficient: int = 1) -> "Ordinal":
        return Ordinal(((exponent, coefficient),))

    def succ(self) -> "Ordinal":
        if self.terms and self.terms[-1][0] == 0:
            head, (e, c) = self.terms[:-1], self.terms[-1]
            return Ordinal(head + ((0, c + 1),))
        return Ordinal(self.terms + ((0, 1),))

    def as_int(self) -> int:
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.terms[0][0] == 0:
            return self.terms[0][1]
        raise ValueError("not a finite ordinal")

    def _key(self):
        return tuple((-e, c) for e, c in self.terms)

    def __lt__(self, other: "Ordinal") -> bool:
        # lexicographic on (exponent desc, coefficient) with shorter-is-less
        # when one is a prefix of the other
        a, b = self.terms, other.terms
        for (e1, c1), (e2, c2) in zip(a, b):
            if (e1, c1) != (e2, c2):
                return (e1, c1) < (e2, c2)
        return len(a) < len(b)

    def __le__(self, other: "Ordinal") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Ordinal") -> bool:
        return other < self

    def __ge__(self, other: "Ordinal") -> bool:
        return other <= self

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"w*{c}" if c != 1 else "w")
            else:
                parts.append(f"w^{e}*{c}" if c != 1 else f"w^{e}")
        return " + ".join(parts)


@dataclass(frozen=True)
class HeightResult:
    value: Ordinal
    approx: bool


def height(p: WfProof, omega_fuel: int = 5) -> HeightResult:
    """Tree height: leaves are 0, a node is one above its highest child.

    Exact for finitely branching proofs; for infinitary nodes only premises
    up to the fuel are sampled and the result carries an APPROX flag.
    """
    if p.is_omega:
        best = Ordinal()
        approx = True
        for n in range(omega_fuel + 1):
            sub = height(p.children(n), omega_fuel)
            if best < sub.value:
                best = sub.value
        return HeightResult(best.succ(), approx)
    if not p.children:
        return HeightResult(Ordinal(), False)
    best = Ordinal()
    approx = False
    for c in p.children:
        sub = height(c, omega_fuel)
        approx = approx or sub.approx
        if best < sub.value:
            best = sub.value
    return HeightResult(best.succ(), approx)


# ---------------------------------------------------------------------------
# Identity expansion.


def _leaf(rules: RuleSet, name: str, inst: Instantiation, sequent: Sequent) -> WfProof:
    return WfProof(sequent, make_app(rules, name, inst))


def id_expand(alpha: Formula, rules: RuleSet | None = None) -> WfProof:
    """A cut-free proof of ``alpha |- alpha`` by recursion on the formula.

    The star case is an infinitary node whose n-th premise stacks n
    right-star steps over the seed ``|- alpha*`` (schema tag ``tau_n``).
    """
    rules = rules or RuleSet()
    return _id_expand(alpha, rules)


def _id_expand(alpha: Formula, rules: RuleSet) -> WfProof:
    e: tuple[Formula, ...] = ()
    if isinstance(alpha, Var):
        return _leaf(rules, "id", Instantiation(fmap={"a": alpha}), Sequent((alpha,), alpha))
    if isinstance(alpha, Zero):
        inst = Instantiation(fmap={"b": alpha}, smap={"Gamma": e, "Delta": e})
        return _leaf(rules, "zeroL", inst, Sequent((alpha,), alpha))
    if isinstance(alpha, One):
        seed = _leaf(rules, "oneR", Instantiation(), Sequent(e, alpha))
        inst = Instantiation(fmap={"b": alpha}, smap={"Gamma": e, "Delta": e})
        return WfProof(Sequent((alpha,), alpha), make_app(rules, "oneL", inst), (seed,))
    if isinstance(alpha, Meet):
        l, r = alpha.left, alpha.right
        left = WfProof(
            Sequent((alpha,), l),
            make_app(rules, "meetL0", Instantiation(fmap={"a0": l, "a1": r, "b": l}, smap={"Gamma": e, "Delta": e})),
            (_id_expand(l, rules),),
        )
        right = WfProof(
            Sequent((alpha,), r),
            make_app(rules, "meetL1", Instantiation(fmap={"a0": l, "a1": r, "b": r}, smap={"Gamma": e, "Delta": e})),
            (_id_expand(r, rules),),
        )
        inst = Instantiation(fmap={"b0": l, "b1": r}, smap={"Gamma": (alpha,)})
        return WfProof(Sequent((alpha,), alpha), make_app(rules, "meetR", inst), (left, right))
    if isinstance(alpha, Join):
        l, r = alpha.left, alpha.right
        left = WfProof(
            Sequent((l,), alpha),
            make_app(rules, "joinR0", Instantiation(fmap={"b0": l, "b1": r}, smap={"Gamma": (l,)})),
            (_id_expand(l, rules),),
        )
        right = WfProof(
            Sequent((r,), alpha),
            make_app(rules, "joinR1", Instantiation(fmap={"b0": l, "b1": r}, smap={"Gamma": (r,)})),
            (_id_expand(r, rules),),
        )
        inst = Instantiation(fmap={"a0": l, "a1": r, "b": alpha}, smap={"Gamma": e, "Delta": e})
        return WfProof(Sequent((alpha,), alpha), make_app(rules, "joinL", inst), (left, right))
    if isinstance(alpha, Prod):
        l, r = alpha.left, alpha.right
        pair = WfProof(
            Sequent((l, r), alpha),
            make_app(rules, "prodR", Instantiation(fmap={"b0": l, "b1": r}, smap={"Gamma": (l,), "Delta": (r,)})),
            (_id_expand(l, rules), _id_expand(r, rules)),
        )
        inst = Instantiation(fmap={"a0": l, "a1": r, "b": alpha}, smap={"Gamma": e, "Delta": e})
        return WfProof(Sequent((alpha,), alpha), make_app(rules, "prodL", inst), (pair,))
    if isinstance(alpha, LRes):
        l, r = alpha.left, alpha.right
        use = WfProof(
            Sequent((l, alpha), r),
            make_app(rules, "lresL", Instantiation(
                fmap={"a0": l, "a1": r, "b": r},
                smap={"Gamma": e, "Delta": (l,), "Sigma": e},
            )),
            (_id_expand(l, rules), _id_expand(r, rules)),
        )
        inst = Instantiation(fmap={"b0": l, "b1": r}, smap={"Gamma": (alpha,)})
        return WfProof(Sequent((alpha,), alpha), make_app(rules, "lresR", inst), (use,))
    if isinstance(alpha, RRes):
        l, r = alpha.left, alpha.right  # alpha = l / r
        use = WfProof(
            Sequent((alpha, r), l),
            make_app(rules, "rresL", Instantiation(
                fmap={"a0": r, "a1": l, "b": l},
                smap={"Gamma": e, "Delta": (r,), "Sigma": e},
            )),
            (_id_expand(r, rules), _id_expand(l, rules)),
        )
        inst = Instantiation(fmap={"b0": r, "b1": l}, smap={"Gamma": (alpha,)})
        return WfProof(Sequent((alpha,), alpha), make_app(rules, "rresR", inst), (use,))
    if isinstance(alpha, Star):
        gamma = alpha.body
        inst = Instantiation(fmap={"a": gamma, "b": alpha}, smap={"Gamma": e, "Delta": e})
        family = OmegaFamily(
            lambda n: tau_n(gamma, n, rules),
            schema="tau_n",
            params={"body": print_formula(gamma)},
        )
        return WfProof(Sequent((alpha,), alpha), make_app(rules, "starLomega", inst), family)
    raise ProofError(f"cannot expand {alpha!r}")


def tau_n(gamma: Formula, n: int, rules: RuleSet | None = None) -> WfProof:
    """Proof of ``gamma^(n) |- gamma*``: n right-star steps over the seed."""
    rules = rules or RuleSet()
    star = Star(gamma)
    if n == 0:
        return _leaf(rules, "starR0", Instantiation(fmap={"b": gamma}), Sequent((), star))
    inst = Instantiation(fmap={"b": gamma}, smap={"Gamma": (gamma,), "Delta": (gamma,) * (n - 1)})
    return WfProof(
        Sequent((gamma,) * n, star),
        make_app(rules, "starR1", inst),
        (_id_expand(gamma, rules), tau_n(gamma, n - 1, rules)),
    )


# ---------------------------------------------------------------------------
# Admissible transformations.


def _first_last_svars(rule: SchematicRule) -> tuple[str, str]:
    lhs = rule.conclusion.lhs
    if not lhs or not isinstance(lhs[0], SVar) or not isinstance(lhs[-1], SVar):
        raise ProofError(f"rule {rule.name} has no context to widen")
    return lhs[0].name, lhs[-1].name


def _widen_inst(rule: SchematicRule, inst: Instantiation,
                sigma_l: tuple[Formula, ...], sigma_r: tuple[Formula, ...],
                beta: Formula) -> Instantiation:
    first, last = _first_last_svars(rule)
    rhs = rule.conclusion.rhs
    if not isinstance(rhs, FVar):
        raise ProofError(f"rule {rule.name} does not end in a metavariable succedent")
    out = inst.copy()
    if first == last:
        out.smap[first] = sigma_l + inst.smap[first] + sigma_r
    else:
        out.smap[first] = sigma_l + inst.smap[first]
        out.smap[last] = inst.smap[last] + sigma_r
    out.fmap[rhs.name] = beta
    return out


def zeroR_admit(
    p: WfProof,
    sigma_l: tuple[Formula, ...],
    sigma_r: tuple[Formula, ...],
    beta: Formula,
    rules: RuleSet | None = None,
) -> WfProof:
    """Turn a proof of ``Gamma |- 0`` into one of ``Sigma_l, Gamma, Sigma_r |- beta``.

    Works by recursion on the proof: the zero axiom and every left rule keep
    their shape with a widened context; premises whose succedent is the
    conclusion's succedent metavariable are transformed recursively, side
    premises are kept.  Requires the ambient structural rules to be analytic.
    """
    rules = rules or RuleSet()
    if p.sequent.succedent != Zero():
        raise ProofError("input must prove a sequent with succedent 0")
    return _zeroR(p, sigma_l, sigma_r, beta, rules)


_RIGHT_RULES = {"oneR", "meetR", "joinR0", "joinR1", "prodR", "lresR", "rresR", "starR0", "starR1"}


def _zeroR(p, sigma_l, sigma_r, beta, rules):
    rule = rules.resolve(p.app.rule)
    if rule.name == "id" or rule.name in _RIGHT_RULES:
        raise ProofError(f"impossible last rule {rule.name} in a proof of succedent 0")
    if rule.name not in {"zeroL", "oneL", "meetL0", "meetL1", "joinL", "prodL", "prodL1",
                         "lresL", "rresL", "starLomega", "starLomegaM", "starL"}:
        if not classify(rule).analytic:
            raise ProofError(f"structural rule {rule.name} must be analytic")
    rhs = rule.conclusion.rhs
    new_inst = _widen_inst(rule, p.app.inst, sigma_l, sigma_r, beta)
    new_sequent = Sequent(sigma_l + p.sequent.antecedent + sigma_r, beta)
    app = RuleApp(rule.name, new_inst, principal_position(rule, new_inst))
    if p.is_omega:
        # the widened family is a fresh generator with no closed form
        family = OmegaFamily(lambda n: _zeroR(p.children(n), sigma_l, sigma_r, beta, rules))
        return WfProof(new_sequent, app, family)
    new_children = []
    for i, child in enumerate(p.children):
        ms, _ = rule.premise_meta(i if rule.name != "prodL1" else 1)
        if ms.rhs == rhs:
            new_children.append(_zeroR(child, sigma_l, sigma_r, beta, rules))
        else:
            new_children.append(child)
    return WfProof(new_sequent, app, tuple(new_children))


def _splice_svar(inst: Instantiation, name: str, offset: int,
                 replacement: tuple[Formula, ...]) -> Instantiation:
    out = inst.copy()
    image = inst.smap[name]
    out.smap[name] = image[:offset] + replacement + image[offset + 1:]
    return out


def _invert_at(p: WfProof, pos: int, rules: RuleSet,
               peel: tuple[str, ...], replacement_of) -> WfProof:
    """Shared engine for product and unit left-inversion.

    ``peel`` names the rules whose principal introduction at ``pos`` is
    removed by returning the premise; ``replacement_of(f)`` gives the formula
    sequence that replaces the occurrence when pushing into the context.
    """
    rule = rules.resolve(p.app.rule)
    if rule.name in peel and p.app.principal == pos:
        child = p.children[0]
        return child
    replacement = replacement_of(p.sequent.formula_at(pos))
    origins, _, _ = layout(rule.conclusion, p.app.inst)
    origin = origins[pos]
    if origin.kind != "svar":
        raise ProofError(
            f"cannot push inversion through {rule.name}: occurrence {pos} is "
            f"not inside a sequence metavariable"
        )
    new_inst = _splice_svar(p.app.inst, origin.name, origin.offset, replacement)
    new_sequent = Sequent(
        p.sequent.antecedent[:pos] + replacement + p.sequent.antecedent[pos + 1:],
        p.sequent.succedent,
    )
    app = RuleApp(rule.name, new_inst, principal_position(rule, new_inst))

    def premise_positions(child_index: int) -> list[int]:
        ms, _ = rule.premise_meta(child_index)
        p_origins, _, _ = layout(ms, p.app.inst)
        return [q for q, o in enumerate(p_origins)
                if o.kind == "svar" and o.name == origin.name and o.offset == origin.offset]

    def transform_child(child: WfProof, child_index: int) -> WfProof:
        out = child
        for q in sorted(premise_positions(child_index), reverse=True):
            out = _invert_at(out, q, rules, peel, replacement_of)
        return out

    if p.is_omega:
        family = OmegaFamily(lambda n: transform_child(p.children(n), n))
        return WfProof(new_sequent, app, family)
    indices = rule.child_indices()
    new_children = tuple(
        transform_child(child, indices[i]) for i, child in enumerate(p.children)
    )
    return WfProof(new_sequent, app, new_children)


def dotL_invert(p: WfProof, pos: int, rules: RuleSet | None = None) -> WfProof:
    """Invert a left product introduction: from a proof whose antecedent has
    ``a . b`` at ``pos``, a proof with ``a, b`` there instead, never taller."""
    rules = rules or RuleSet()
    f = p.sequent.formula_at(pos)
    if not isinstance(f, Prod):
        raise ProofError(f"occurrence {pos} holds {print_formula(f)}, not a product")
    return _invert_at(p, pos, rules, ("prodL", "prodL1"),
                      lambda g: (g.left, g.right))


def oneL_invert(p: WfProof, pos: int, rules: RuleSet | None = None) -> WfProof:
    """Remove a unit occurrence from the antecedent (inverse of the left
    unit rule)."""
    rules = rules or RuleSet()
    f = p.sequent.formula_at(pos)
    if not isinstance(f, One):
        raise ProofError(f"occurrence {pos} holds {print_formula(f)}, not the unit")
    return _invert_at(p, pos, rules, ("oneL",), lambda g: ())


def to_standard_omega(p: WfProof, rules: RuleSet | None = None) -> WfProof:
    """Rewrite a proof using the modified infinitary rule and the right-child
    product rule into one over the standard infinitary system.

    Right-child product nodes are relabelled; each modified infinitary node
    becomes a standard one whose n-th premise flattens the packed power by
    n-1 product inversions and one unit inversion.
    """
    rules = rules or RuleSet()
    rule = rules.resolve(p.app.rule)
    if rule.name == "starLomegaM":
        inst = p.app.inst
        alpha = inst.fmap["a"]
        gamma_len = len(inst.smap["Gamma"])
        std = rules.resolve("starLomega")
        app = RuleApp("starLomega", inst, principal_position(std, inst))

        def premise(n: int) -> WfProof:
            if n == 0:
                return to_standard_omega(p.children(0), rules)
            q = to_standard_omega(p.children(n), rules)
            pos = gamma_len + 1
            for _ in range(n - 1):
                q = dotL_invert(q, pos, rules)
                pos += 1
            return oneL_invert(q, pos, rules)

        return WfProof(p.sequent, app, OmegaFamily(premise, schema=p.children.schema,
                                                   params=dict(p.children.params)))
    if p.is_omega:
        family = OmegaFamily(lambda n: to_standard_omega(p.children(n), rules),
                             schema=p.children.schema, params=dict(p.children.params))
        return WfProof(p.sequent, p.app, family)
    new_children = tuple(to_standard_omega(c, rules) for c in p.children)
    if rule.name == "prodL1":
        prod = rules.resolve("prodL")
        app = RuleApp("prodL", p.app.inst, principal_position(prod, p.app.inst))
        return WfProof(p.sequent, app, new_children)
    return WfProof(p.sequent, p.app, new_children)


# ---------------------------------------------------------------------------
# Cyclic proof validation.


@dataclass
class CyclicReport:
    ok: bool
    nodes_checked: int
    violation: Violation | None = None


def check_cyclic_local(p: CyclicProof, rules: RuleSet | None = None) -> CyclicReport:
    """Local validity of every node plus reachability from the root."""
    rules = rules or RuleSet()
    reached = set()
    stack = [p.root]
    checked = 0
    while stack:
        nid = stack.pop()
        if nid in reached:
            continue
        reached.add(nid)
        node = p.node(nid)
        child_sequents = tuple(p.node(c).sequent for c in node.children)
        violation = check_local(node.sequent, node.app, child_sequents, rules)
        if violation:
            return CyclicReport(False, checked,
                                Violation((nid,), violation.premise_index,
                                          violation.expected, violation.found,
                                          violation.message))
        checked += 1
        stack.extend(node.children)
    unreachable = set(p.nodes) - reached
    if unreachable:
        return CyclicReport(False, checked,
                            Violation(None, None, None, None,
                                      f"unreachable nodes: {sorted(unreachable)}"))
    return CyclicReport(True, checked)


# ---------------------------------------------------------------------------
# Proof files (JSON).


def _inst_to_json(inst: Instantiation) -> dict:
    out: dict = {}
    for name, f in inst.fmap.items():
        out[name] = print_formula(f)
    for name, fs in inst.smap.items():
        out[name] = [print_formula(f) for f in fs]
    return out


def _inst_from_json(data: dict) -> Instantiation:
    fmap: dict[str, Formula] = {}
    smap: dict[str, tuple[Formula, ...]] = {}
    for name, value in data.items():
        if isinstance(value, list):
            smap[name] = tuple(parse_formula(t) for t in value)
        else:
            fmap[name] = parse_formula(value)
    return Instantiation(fmap, smap)


def cyclic_to_json(p: CyclicProof, user_rule_names: Iterable[str] = ()) -> dict:
    nodes = {}
    for nid, node in p.nodes.items():
        nodes[nid] = {
            "sequent": print_sequent(node.sequent),
            "rule": node.app.rule,
            "principal": node.app.principal,
            "inst": _inst_to_json(node.app.inst),
            "children": list(node.children),
        }
    return {"system": "cyclic", "rules": sorted(set(user_rule_names)),
            "nodes": nodes, "root": p.root}


def wf_to_json(p: WfProof, user_rule_names: Iterable[str] = (),
               source: dict | None = None) -> dict:
    """Serialize a wellfounded proof; infinitary families must carry a
    registered schema tag (arbitrary generators exist only in memory)."""
    nodes: dict[str, dict] = {}
    counter = [0]

    def visit(node: WfProof) -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        entry = {
            "sequent": print_sequent(node.sequent),
            "rule": node.app.rule,
            "principal": node.app.principal,
            "inst": _inst_to_json(node.app.inst),
        }
        nodes[nid] = entry
        if node.is_omega:
            fam = node.children
            if fam.schema not in ("tau_n", "projected"):
                raise ProofError(
                    f"cannot serialize an infinitary family without a registered schema (got {fam.schema!r})"
                )
            entry["children"] = [{"omega_schema": fam.schema, "params": fam.params}]
        else:
            entry["children"] = [visit(c) for c in node.children]
        return nid

    root = visit(p)
    out = {"system": "womega", "rules": sorted(set(user_rule_names)), "nodes": nodes, "root": root}
    if source is not None:
        out["source"] = source
    return out


def _family_from_schema(schema: str, params: dict, rules: RuleSet,
                        source: dict | None) -> OmegaFamily:
    if schema == "tau_n":
        gamma = parse_formula(params["body"])
        return OmegaFamily(lambda n: tau_n(gamma, n, rules), schema="tau_n", params=params)
    if schema == "projected":
        if source is None:
            raise ProofError("projected families need the source cyclic proof embedded in the file")
        from .translate import nwf_to_wf  # deferred: translate depends on this module

        cyclic, _ = cyclic_from_json(source)
        translated = nwf_to_wf(cyclic, rules=rules)
        node = translated
        # addresses are plain child positions in the final wellfounded tree
        for step in params["address"]:
            node = node.children(step) if node.is_omega else node.children[step]
        if not node.is_omega:
            raise ProofError(f"address {params['address']} is not an infinitary node")
        return node.children
    raise ProofError(f"unknown omega schema {schema!r}")


def wf_from_json(data: dict, extra_rules: Iterable[SchematicRule] = ()) -> tuple[WfProof, RuleSet]:
    rules = RuleSet(list(extra_rules))
    for name in data.get("rules", []):
        rules.resolve(name)
    source = data.get("source")

    def build(nid: str) -> WfProof:
        entry = data["nodes"][nid]
        sequent = parse_sequent(entry["sequent"])
        inst = _inst_from_json(entry["inst"])
        app = RuleApp(entry["rule"], inst, entry.get("principal"))
        children = entry["children"]
        if len(children) == 1 and isinstance(children[0], dict):
            descriptor = children[0]
            fam = _family_from_schema(descriptor["omega_schema"],
                                      descriptor.get("params", {}), rules, source)
            return WfProof(sequent, app, fam)
        return WfProof(sequent, app, tuple(build(c) for c in children))

    return build(data["root"]), rules


def cyclic_from_json(data: dict, extra_rules: Iterable[SchematicRule] = ()) -> tuple[CyclicProof, RuleSet]:
    rules = RuleSet(list(extra_rules))
    nodes = {}
    for nid, entry in data["nodes"].items():
        inst = _inst_from_json(entry["inst"])
        app = RuleApp(entry["rule"], inst, entry.get("principal"))
        nodes[nid] = CyclicNode(parse_sequent(entry["sequent"]), app, tuple(entry["children"]))
    return CyclicProof(nodes, data["root"]), rules


def load_proof(path: str, extra_rules: Iterable[SchematicRule] = ()):
    """Load a proof file; returns (kind, proof, rules) with kind one of
    "cyclic", "womega", "nwf"."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    system = data.get("system")
    if system == "cyclic":
        proof, rules = cyclic_from_json(data, extra_rules)
        return "cyclic", proof, rules
    if system == "womega":
        proof, rules = wf_from_json(data, extra_rules)
        return "womega", proof, rules
    if system == "nwf":
        inner, rules = wf_from_json(data["source"], extra_rules)
        from .translate import wf_to_nwf

        return "nwf", wf_to_nwf(inner, rules=rules), rules
    raise ProofError(f"unknown proof system {system!r}")


def save_proof(path: str, data: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")
