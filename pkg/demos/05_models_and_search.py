# Finite action lattices as executable semantics, and backward proof search.

from actlat import (
    SearchConfig,
    example_structural_rules,
    holds_quasieq,
    holds_sequent,
    library,
    parse_sequent,
    prove,
    q_a_of,
    q_of,
    refute,
    rel_algebra,
    two_chain,
    validate_algebra,
)

# The library: two chains, relation algebras, and sets of short words.
for name, a in library().items():
    print(f"{name}: {a.size} elements, laws ok = {validate_algebra(a).ok}")

# Relation composition is not idempotent, so contraction fails there while
# the chains satisfy it.
qc = q_a_of(example_structural_rules()["C"])
print("contraction in two_chain:", holds_quasieq(two_chain(), qc))
print("contraction in rel2:     ", holds_quasieq(rel_algebra(2), qc))
# Cut is sound everywhere.
print("cut in rel2:", holds_quasieq(rel_algebra(2), q_of(example_structural_rules()["Cut"])))

# Validity of a sequent quantifies over all valuations at once.
print("a*, a* |- a* in rel2:", holds_sequent(rel_algebra(2), parse_sequent("a*, a* |- a*")))

# Backward search produces checked cyclic proofs; star goals close through
# back-edges.
result = prove(parse_sequent("a*, a* |- a*"))
print("proof found:", result.found, "with", len(result.proof.nodes), "nodes")

# Structural rules change what is provable: commuting a product needs
# exchange.
goal = parse_sequent("a . b |- b . a")
print("without exchange:", prove(goal, cfg=SearchConfig(depth=8)).found)
ex = example_structural_rules()
print("with exchange:   ", prove(goal, user_rules=[ex["e"]]).found)

# What search cannot prove, finite models often refute.
verdict = refute(goal, list(library().values())[:4])
print(f"refuted in {verdict.model} at {dict(verdict.valuation)}")
