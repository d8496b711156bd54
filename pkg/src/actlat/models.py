"""Finite action lattices as executable semantics.

A model is a finite carrier with explicit tables for the order, lattice
operations, monoid product, both residuals, and star.  Validation checks
every defining law exhaustively, including star-continuity: the star of each
element must equal the join of its finitely many distinct powers.

Validity queries evaluate formulas over all valuations at once with numpy
fancy indexing; large carriers are chunked over the first variable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .rules import Inequation, Quasiequation
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
    variables,
)

_GRID_LIMIT = 4_000_000
VAR_CAP = 4


class ModelError(ValueError):
    pass


@dataclass
class FiniteActionLattice:
    name: str
    elements: tuple[str, ...]
    le: np.ndarray          # (n, n) bool
    meet: np.ndarray        # (n, n) int
    join: np.ndarray        # (n, n) int
    prod: np.ndarray        # (n, n) int
    lres: np.ndarray        # (n, n) int;  lres[x, z] = x \ z
    rres: np.ndarray        # (n, n) int;  rres[z, y] = z / y
    star: np.ndarray        # (n,) int
    zero: int
    one: int

    @property
    def size(self) -> int:
        return len(self.elements)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.le[x, y])


@dataclass
class LawViolation:
    law: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.law} fails at {self.witness}"


@dataclass
class AlgebraReport:
    violations: list[LawViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, witness: tuple) -> None:
        self.violations.append(LawViolation(law, witness))


def _first_bad(mask: np.ndarray) -> tuple:
    idx = np.argwhere(~mask)
    return tuple(int(v) for v in idx[0])


def star_by_powers(a: FiniteActionLattice, x: int) -> int:
    """Join of all distinct powers of x (stabilizes on a finite carrier)."""
    acc = a.one
    power = a.one
    seen = set()
    while power not in seen:
        seen.add(power)
        acc = int(a.join[acc, power])
        power = int(a.prod[power, x])
    return acc


def validate_algebra(a: FiniteActionLattice) -> AlgebraReport:
    """Check every defining law, reporting one witness per broken law."""
    report = AlgebraReport()
    n = a.size
    le = a.le
    # partial order
    if not le.diagonal().all():
        report.add("reflexivity", _first_bad(le.diagonal()))
    anti = ~(le & le.T) | np.eye(n, dtype=bool)
    if not anti.all():
        report.add("antisymmetry", _first_bad(anti))
    trans = ~(le[:, :, None] & le[None, :, :]) | le[:, None, :]
    if not trans.all():
        report.add("transitivity", _first_bad(trans))
    # meet is the greatest lower bound, join the least upper bound
    m = a.meet
    lower = le[m, np.arange(n)[None, :]] & le[m, np.arange(n)[:, None]]
    if not lower.all():
        report.add("meet is a lower bound", _first_bad(lower))
    greatest = ~(le[:, :, None] & le[:, None, :]) | le[:, m]
    if not greatest.all():
        report.add("meet is greatest", _first_bad(greatest))
    j = a.join
    upper = le[np.arange(n)[:, None], j] & le[np.arange(n)[None, :], j]
    if not upper.all():
        report.add("join is an upper bound", _first_bad(upper))
    least = ~(le[:, None, :] & le[None, :, :]) | le[j, :]
    if not least.all():
        report.add("join is least", _first_bad(least))
    # monoid
    p = a.prod
    assoc = p[p[:, :, None], np.arange(n)[None, None, :]] == p[np.arange(n)[:, None, None], p[None, :, :]]
    if not assoc.all():
        report.add("product associativity", _first_bad(assoc))
    if not (p[a.one, :] == np.arange(n)).all() or not (p[:, a.one] == np.arange(n)).all():
        report.add("product unit", (a.one,))
    # residuation: x . y <= z iff y <= x \ z iff x <= z / y
    xyz = le[p[:, :, None], np.arange(n)[None, None, :]]
    via_l = le[np.arange(n)[None, :, None], a.lres[np.arange(n)[:, None, None], np.arange(n)[None, None, :]]]
    via_r = le[np.arange(n)[:, None, None], a.rres[np.arange(n)[None, None, :], np.arange(n)[None, :, None]]]
    if not (xyz == via_l).all():
        report.add("left residuation", _first_bad(xyz == via_l))
    if not (xyz == via_r).all():
        report.add("right residuation", _first_bad(xyz == via_r))
    # least element
    if not le[a.zero, :].all():
        report.add("zero is least", _first_bad(le[a.zero, :]))
    # star axioms
    s = a.star
    ax1 = le[a.join[a.one, p[np.arange(n), s]], s]
    if not ax1.all():
        report.add("1 | x.x* <= x*", _first_bad(ax1))
    induct_l = ~le[p, np.arange(n)[None, :]] | le[p[s[:, None], np.arange(n)[None, :]], np.arange(n)[None, :]]
    if not induct_l.all():
        report.add("x.y <= y implies x*.y <= y", _first_bad(induct_l))
    yx = le[p, np.arange(n)[:, None]]
    yxs = le[p[np.arange(n)[:, None], s[None, :]], np.arange(n)[:, None]]
    induct_r = ~yx | yxs
    if not induct_r.all():
        report.add("y.x <= y implies y.x* <= y", _first_bad(induct_r))
    # star-continuity: star equals the join of all powers
    for x in range(n):
        if star_by_powers(a, x) != int(s[x]):
            report.add("star is the join of the powers", (x,))
            break
    return report


# ---------------------------------------------------------------------------
# Library models.


def _tables_from_ops(name, elems, leq, mul, unit, zero_el, star_fn=None) -> FiniteActionLattice:
    """Build explicit tables from callables over a finite carrier.

    meet/join are derived from the order (must exist), residuals from the
    product via the adjunction, star from the join of powers unless given.
    """
    n = len(elems)
    le = np.array([[leq(x, y) for y in elems] for x in elems], dtype=bool)

    def glb(i, j):
        candidates = [k for k in range(n) if le[k, i] and le[k, j]]
        best = [k for k in candidates if all(le[c, k] for c in candidates)]
        if len(best) != 1:
            raise ModelError(f"{name}: no meet for {elems[i]}, {elems[j]}")
        return best[0]

    def lub(i, j):
        candidates = [k for k in range(n) if le[i, k] and le[j, k]]
        best = [k for k in candidates if all(le[k, c] for c in candidates)]
        if len(best) != 1:
            raise ModelError(f"{name}: no join for {elems[i]}, {elems[j]}")
        return best[0]

    meet = np.array([[glb(i, j) for j in range(n)] for i in range(n)])
    join = np.array([[lub(i, j) for j in range(n)] for i in range(n)])
    index = {e: i for i, e in enumerate(elems)}
    prod = np.array([[index[mul(x, y)] for y in elems] for x in elems])

    def residual_l(i, k):
        candidates = [y for y in range(n) if le[prod[i, y], k]]
        best = [y for y in candidates if all(le[c, y] for c in candidates)]
        if len(best) != 1:
            raise ModelError(f"{name}: missing left residual")
        return best[0]

    def residual_r(k, j):
        candidates = [x for x in range(n) if le[prod[x, j], k]]
        best = [x for x in candidates if all(le[c, x] for c in candidates)]
        if len(best) != 1:
            raise ModelError(f"{name}: missing right residual")
        return best[0]

    lres = np.array([[residual_l(i, k) for k in range(n)] for i in range(n)])
    rres = np.array([[residual_r(k, j) for j in range(n)] for k in range(n)])
    out = FiniteActionLattice(
        name=name,
        elements=tuple(str(e) for e in elems),
        le=le, meet=meet, join=join, prod=prod, lres=lres, rres=rres,
        star=np.zeros(n, dtype=int), zero=index[zero_el], one=index[unit],
    )
    if star_fn is None:
        out.star = np.array([star_by_powers(out, x) for x in range(n)])
    else:
        out.star = np.array([index[star_fn(x)] for x in elems])
    return out


def two_chain() -> FiniteActionLattice:
    """The two-element chain with product = meet."""
    return _tables_from_ops("two_chain", (0, 1), lambda x, y: x <= y,
                            lambda x, y: min(x, y), 1, 0)


def three_chain() -> FiniteActionLattice:
    """The three-element chain with product = min and unit the top."""
    return _tables_from_ops("three_chain", (0, 1, 2), lambda x, y: x <= y,
                            lambda x, y: min(x, y), 2, 0)


def rel_algebra(k: int) -> FiniteActionLattice:
    """All binary relations on k points: union, intersection, composition,
    relational residuals, reflexive-transitive closure."""
    if not 1 <= k <= 3:
        raise ModelError("relation algebras are supported for 1 <= k <= 3")
    n = 1 << (k * k)
    rels = np.array([[[bool(r >> (i * k + j) & 1) for j in range(k)] for i in range(k)]
                     for r in range(n)])

    def pack(mat: np.ndarray) -> int:
        out = 0
        for i in range(k):
            for j in range(k):
                if mat[i, j]:
                    out |= 1 << (i * k + j)
        return out

    identity = pack(np.eye(k, dtype=bool))
    le = np.array([[r & ~s == 0 for s in range(n)] for r in range(n)])
    meet = np.array([[r & s for s in range(n)] for r in range(n)])
    join = np.array([[r | s for s in range(n)] for r in range(n)])
    prod = np.zeros((n, n), dtype=int)
    lres = np.zeros((n, n), dtype=int)
    rres = np.zeros((n, n), dtype=int)
    for r in range(n):
        R = rels[r]
        for s in range(n):
            S = rels[s]
            prod[r, s] = pack((R.astype(int) @ S.astype(int)) > 0)
            # r \ s: pairs (y, z) with R x y -> S x z for all x
            lres[r, s] = pack(~((R.astype(int).T @ (~S).astype(int)) > 0))
            # r / s: pairs (x, y) with S y z -> R x z for all z
            rres[r, s] = pack(~(((~R).astype(int) @ S.astype(int).T) > 0))

    def closure(r: int) -> int:
        cur = identity | r
        while True:
            nxt = cur | prod[cur, r]
            if nxt == cur:
                return cur
            cur = nxt

    star = np.array([closure(r) for r in range(n)])

    def rel_name(r: int) -> str:
        pairs = [f"{i}{j}" for i in range(k) for j in range(k) if r >> (i * k + j) & 1]
        return "{" + ",".join(pairs) + "}"

    return FiniteActionLattice(
        name=f"rel{k}",
        elements=tuple(rel_name(r) for r in range(n)),
        le=le, meet=meet, join=join, prod=prod, lres=lres, rres=rres,
        star=star, zero=0, one=identity,
    )


def truncated_words(max_len: int = 3, alphabet: str = "ab") -> FiniteActionLattice:
    """Sets of words shorter than max_len; concatenations that reach the
    bound are dropped, star is the join of the truncated powers."""
    words = [""]
    frontier = [""]
    for _ in range(max_len - 1):
        frontier = [w + ch for w in frontier for ch in alphabet]
        words.extend(frontier)
    index = {w: i for i, w in enumerate(words)}
    m = len(words)
    n = 1 << m

    def concat(x: int, y: int) -> int:
        out = 0
        for i in range(m):
            if not x >> i & 1:
                continue
            for j in range(m):
                if y >> j & 1:
                    w = words[i] + words[j]
                    if len(w) < max_len:
                        out |= 1 << index[w]
        return out

    le = np.array([[x & ~y == 0 for y in range(n)] for x in range(n)])
    meet = np.array([[x & y for y in range(n)] for x in range(n)])
    join = np.array([[x | y for y in range(n)] for x in range(n)])
    prod = np.array([[concat(x, y) for y in range(n)] for x in range(n)])
    # residuals: x \ z = union of singletons y with x . {y} <= z
    single_l = np.zeros((n, m), dtype=int)
    single_r = np.zeros((n, m), dtype=int)
    for x in range(n):
        for j in range(m):
            single_l[x, j] = concat(x, 1 << j)
            single_r[x, j] = concat(1 << j, x)
    lres = np.zeros((n, n), dtype=int)
    rres = np.zeros((n, n), dtype=int)
    for x in range(n):
        for z in range(n):
            acc = 0
            for j in range(m):
                if single_l[x, j] & ~z == 0:
                    acc |= 1 << j
            lres[x, z] = acc
            acc = 0
            for j in range(m):
                if single_r[x, j] & ~z == 0:
                    acc |= 1 << j
            rres[z, x] = acc

    def closure(x: int) -> int:
        cur = 1 << index[""]
        while True:
            nxt = cur | concat(cur, x)
            if nxt == cur:
                return cur
            cur = nxt

    star = np.array([closure(x) for x in range(n)])

    def set_name(x: int) -> str:
        inside = [words[i] if words[i] else "eps" for i in range(m) if x >> i & 1]
        return "{" + ",".join(inside) + "}"

    return FiniteActionLattice(
        name="trunc_words",
        elements=tuple(set_name(x) for x in range(n)),
        le=le, meet=meet, join=join, prod=prod, lres=lres, rres=rres,
        star=star, zero=0, one=1 << index[""],
    )


def library() -> dict[str, FiniteActionLattice]:
    """The bundled models used by the audits."""
    return {
        "two_chain": two_chain(),
        "three_chain": three_chain(),
        "rel1": rel_algebra(1),
        "rel2": rel_algebra(2),
        "trunc_words": truncated_words(),
    }


# ---------------------------------------------------------------------------
# Evaluation.


def eval_formula(a: FiniteActionLattice, valuation: dict[str, int], f: Formula) -> int:
    """Evaluate under a single valuation."""
    if isinstance(f, Var):
        try:
            return valuation[f.name]
        except KeyError:
            raise ModelError(f"valuation misses variable {f.name!r}")
    if isinstance(f, Zero):
        return a.zero
    if isinstance(f, One):
        return a.one
    if isinstance(f, Meet):
        return int(a.meet[eval_formula(a, valuation, f.left), eval_formula(a, valuation, f.right)])
    if isinstance(f, Join):
        return int(a.join[eval_formula(a, valuation, f.left), eval_formula(a, valuation, f.right)])
    if isinstance(f, Prod):
        return int(a.prod[eval_formula(a, valuation, f.left), eval_formula(a, valuation, f.right)])
    if isinstance(f, LRes):
        return int(a.lres[eval_formula(a, valuation, f.left), eval_formula(a, valuation, f.right)])
    if isinstance(f, RRes):
        return int(a.rres[eval_formula(a, valuation, f.left), eval_formula(a, valuation, f.right)])
    if isinstance(f, Star):
        return int(a.star[eval_formula(a, valuation, f.body)])
    raise ModelError(f"cannot evaluate {f!r}")


def _eval_grid(a: FiniteActionLattice, grids: dict[str, np.ndarray], f: Formula) -> np.ndarray:
    if isinstance(f, Var):
        return grids[f.name]
    if isinstance(f, Zero):
        return np.full((), a.zero)
    if isinstance(f, One):
        return np.full((), a.one)
    if isinstance(f, Star):
        return a.star[_eval_grid(a, grids, f.body)]
    table = {Meet: a.meet, Join: a.join, Prod: a.prod, LRes: a.lres, RRes: a.rres}[type(f)]
    return table[_eval_grid(a, grids, f.left), _eval_grid(a, grids, f.right)]


def _var_grids(n: int, names: list[str]) -> dict[str, np.ndarray]:
    k = len(names)
    grids = {}
    for axis, name in enumerate(names):
        shape = [1] * k
        shape[axis] = n
        grids[name] = np.arange(n).reshape(shape)
    return grids


def _check_all_valuations(a: FiniteActionLattice, names: list[str], predicate) -> tuple | None:
    """Run a vectorized predicate over all valuations; returns a witness
    valuation or None.  Chunks over the first variable on big grids."""
    n = a.size
    if len(names) > VAR_CAP and n ** len(names) > _GRID_LIMIT:
        raise ModelError(
            f"validity query over {len(names)} variables on a carrier of size {n} "
            f"exceeds the exhaustive budget (cap {VAR_CAP} variables)"
        )
    if names and n ** len(names) > _GRID_LIMIT:
        first, rest = names[0], names[1:]
        grids = _var_grids(n, rest)
        for v in range(n):
            grids[first] = np.full((), v)
            ok = predicate(grids)
            if not ok.all():
                idx = np.argwhere(~np.broadcast_to(ok, (n,) * len(rest)))
                witness = {first: v}
                witness.update({name: int(i) for name, i in zip(rest, idx[0])})
                return tuple(sorted(witness.items()))
        return None
    grids = _var_grids(n, names)
    ok = predicate(grids)
    if ok.all():
        return None
    idx = np.argwhere(~np.broadcast_to(ok, (n,) * len(names))) if names else [()]
    witness = {name: int(i) for name, i in zip(names, idx[0])}
    return tuple(sorted(witness.items()))


def sequent_inequation(s: Sequent) -> Inequation:
    """The inequation of a sequent: the antecedent product below the
    succedent (empty antecedent gives the unit)."""
    if not s.antecedent:
        lhs: Formula = One()
    else:
        lhs = s.antecedent[0]
        for f in s.antecedent[1:]:
            lhs = Prod(lhs, f)
    return Inequation(lhs, s.succedent)


def holds_sequent(a: FiniteActionLattice, s: Sequent) -> bool:
    return find_sequent_counterexample(a, s) is None


def find_sequent_counterexample(a: FiniteActionLattice, s: Sequent):
    ineq = sequent_inequation(s)
    names = sorted(variables(ineq.lhs) | variables(ineq.rhs))

    def predicate(grids):
        return a.le[_eval_grid(a, grids, ineq.lhs), _eval_grid(a, grids, ineq.rhs)]

    return _check_all_valuations(a, names, predicate)


def holds_quasieq(a: FiniteActionLattice, q: Quasiequation) -> bool:
    return find_quasieq_counterexample(a, q) is None


def find_quasieq_counterexample(a: FiniteActionLattice, q: Quasiequation):
    names = set()
    for iq in (*q.premises, q.conclusion):
        names |= variables(iq.lhs) | variables(iq.rhs)
    names = sorted(names)

    def predicate(grids):
        ok = a.le[_eval_grid(a, grids, q.conclusion.lhs), _eval_grid(a, grids, q.conclusion.rhs)]
        for p in q.premises:
            holds = a.le[_eval_grid(a, grids, p.lhs), _eval_grid(a, grids, p.rhs)]
            ok = ok | ~holds
        return ok

    return _check_all_valuations(a, names, predicate)


# ---------------------------------------------------------------------------
# Soundness audit.


@dataclass
class AuditViolation:
    model: str
    sequent: Sequent
    valuation: tuple

    def __str__(self) -> str:
        return f"{self.sequent} fails in {self.model} at {dict(self.valuation)}"


@dataclass
class AuditReport:
    checked: int = 0
    skipped_models: list[str] = field(default_factory=list)
    violations: list[AuditViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def soundness_audit(
    sequents,
    models,
    rule_quasieqs=(),
) -> AuditReport:
    """Every given sequent must hold in every model that satisfies the
    active rules' quasiequations; a hit flags a defect upstream (checker,
    search, or translation)."""
    report = AuditReport()
    for a in models:
        if any(not holds_quasieq(a, q) for q in rule_quasieqs):
            report.skipped_models.append(a.name)
            continue
        for s in sequents:
            witness = find_sequent_counterexample(a, s)
            report.checked += 1
            if witness is not None:
                report.violations.append(AuditViolation(a.name, s, witness))
    return report


# ---------------------------------------------------------------------------
# Model files.


def model_to_json(a: FiniteActionLattice) -> dict:
    return {
        "name": a.name,
        "elements": list(a.elements),
        "le": a.le.astype(int).tolist(),
        "meet": a.meet.tolist(),
        "join": a.join.tolist(),
        "prod": a.prod.tolist(),
        "lres": a.lres.tolist(),
        "rres": a.rres.tolist(),
        "star": a.star.tolist(),
        "zero": int(a.zero),
        "one": int(a.one),
    }


def model_from_json(data: dict) -> FiniteActionLattice:
    try:
        return FiniteActionLattice(
            name=data.get("name", "model"),
            elements=tuple(data["elements"]),
            le=np.array(data["le"], dtype=bool),
            meet=np.array(data["meet"]),
            join=np.array(data["join"]),
            prod=np.array(data["prod"]),
            lres=np.array(data["lres"]),
            rres=np.array(data["rres"]),
            star=np.array(data["star"]),
            zero=int(data["zero"]),
            one=int(data["one"]),
        )
    except KeyError as e:
        raise ModelError(f"model file misses field {e}")


def load_model(path: str) -> FiniteActionLattice:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(json.load(fh))


def save_model(path: str, a: FiniteActionLattice) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json(a), fh)
        fh.write("\n")
