# Formulas and sequents: the term language and its text notation.

from actlat import (
    Prod,
    Star,
    Var,
    parse_formula,
    parse_sequent,
    power_formula,
    power_seq,
    print_formula,
    print_sequent,
)

# The connectives: & meet, | join, . product, \ and / residuals, postfix *,
# constants 0 and 1.  Star binds tightest, then product, then meet/join,
# then the residuals.
f = parse_formula("a \\ b . c*")
print("parsed:", f)
print("tree:  ", repr(f))

# Printing inserts only the parentheses the precedence forces.
g = Star(Prod(Var("a"), Var("b")))
print("minimal parens:", print_formula(g))

# Round trip: printing then parsing gives back the same tree.
assert parse_formula(print_formula(g)) == g

# Sequents: a comma-separated antecedent, a turnstile, one succedent.
s = parse_sequent("a*, b |- c")
print("sequent:", print_sequent(s))
print("width:", s.width, "| succedent (position -1):", s.formula_at(-1))

# Finite powers come in two forms: as a sequence of copies, and as a single
# right-nested formula with a trailing unit, so every positive power splits
# off one factor on the left.
a = Var("a")
print("a^(3) as a sequence:", [str(x) for x in power_seq(a, 3)])
print("a^3 as one formula: ", print_formula(power_formula(a, 3)))
