# Translating between the cyclic system and the wellfounded infinitary one.

from actlat import (
    RuleSet,
    check_lazy_prefix,
    check_wf,
    nwf_to_wf,
    om,
    project_single,
    wf_to_nwf,
)
from actlat.corpus import canonical_star_id
from actlat.translate import path

rules = RuleSet()
cyc = canonical_star_id(rules)

# Projection replaces a starred occurrence by a chosen finite power.  With
# the power 0 the left-star step collapses to a unit step; with a positive
# power it becomes a right-child product step over a smaller projection,
# so the projected subtree is finite.
proj = project_single(cyc, 0, 2, rules)
addr = ()
while True:
    view = proj.node_at(addr)
    print("  " * len(addr) + f"{view.app.rule}: {view.sequent}")
    if not view.child_indices:
        break
    addr += (view.child_indices[-1],)

# The corecursive reading turns the left-star cycle into an infinitary node:
# family member i projects the unfolding premise at power i.
wide = om(cyc, rules)
print("root becomes:", wide.node_at(()).app.rule)
for i in range(3):
    print(f"family member {i + 1}:", wide.node_at((i + 1,)).sequent)

# Branches of the infinitary reading re-read as branches of the source.
print("path through family member 3:", path(wide, [3]))

# The full pipeline materializes the reading and flattens the packed powers,
# producing a standard infinitary wellfounded proof with the same conclusion.
wf = nwf_to_wf(cyc, rules=rules)
print("translated conclusion:", wf.sequent)
print("premise 2:", wf.children(2).sequent)
print("checks:", check_wf(wf, omega_fuel=5, rules=rules))

# The inverse direction unravels each infinitary node into an infinite
# left-star ladder; its spine keeps the star principal at every step, so the
# result satisfies the branch condition by construction.
ladder = wf_to_nwf(wf, rules)
for j in range(3):
    print("spine node", j, ":", ladder.node_at((1,) * j).sequent)
checked, violation = check_lazy_prefix(ladder, 5, rules)
print(f"prefix of depth 5: {checked} nodes, violation: {violation}")
