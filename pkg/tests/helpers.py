"""Shared generators for the test suite."""

import random

from actlat.syntax import Formula, Join, LRes, Meet, One, Prod, RRes, Star, Var, Zero

ATOMS = [Var("a"), Var("b"), Var("c"), Zero(), One()]


def random_formula(rng: random.Random, max_size: int, max_star_depth: int) -> Formula:
    if max_size <= 1:
        return rng.choice(ATOMS)
    choices = ["meet", "join", "prod", "lres", "rres", "atom"]
    if max_star_depth > 0:
        choices.append("star")
    op = rng.choice(choices)
    if op == "atom":
        return rng.choice(ATOMS)
    if op == "star":
        return Star(random_formula(rng, max_size - 1, max_star_depth - 1))
    k = rng.randint(1, max_size - 2) if max_size > 2 else 1
    left = random_formula(rng, k, max_star_depth)
    right = random_formula(rng, max_size - 1 - k, max_star_depth)
    node = {"meet": Meet, "join": Join, "prod": Prod, "lres": LRes, "rres": RRes}[op]
    return node(left, right)
