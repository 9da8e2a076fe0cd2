"""Seeded random formulas and sequents for the selftest corpora.

All sampling goes through random.Random instances handed in by the caller,
so identical seeds give identical corpora (and byte-identical reports).
"""

from __future__ import annotations

import random

from .formula import Formula, atom, bot, box, conj, disj, neg
from .sequent import EMPTY, Logic, Sequent, mset

__all__ = ["random_formula", "random_sequent", "random_modalized"]


def random_formula(rng: random.Random, names: list[str], max_weight: int,
                   max_box_depth: int = 2, bot_bias: float = 0.05) -> Formula:
    """A formula of weight <= max_weight and box depth <= max_box_depth."""
    if max_weight <= 1:
        if rng.random() < bot_bias:
            return bot()
        return atom(rng.choice(names))
    choices = ["atom", "not"]
    if max_weight >= 3:
        choices += ["and", "or"]
    if max_box_depth > 0:
        choices += ["box", "box"]
    kind = rng.choice(choices)
    if kind == "atom":
        if rng.random() < bot_bias:
            return bot()
        return atom(rng.choice(names))
    if kind == "not":
        return neg(random_formula(rng, names, max_weight - 1, max_box_depth, bot_bias))
    if kind == "box":
        return box(random_formula(rng, names, max_weight - 1, max_box_depth - 1,
                                  bot_bias))
    split = rng.randint(1, max_weight - 2)
    left = random_formula(rng, names, split, max_box_depth, bot_bias)
    right = random_formula(rng, names, max_weight - 1 - left.weight,
                           max_box_depth, bot_bias)
    if kind == "and":
        return conj(left, right)
    return disj(left, right)


def random_sequent(rng: random.Random, logic: Logic, names: list[str],
                   weight_cap: int = 25, max_box_depth: int = 3) -> Sequent:
    """An empty-storage sequent with total weight <= weight_cap."""
    n_ante = rng.randint(0, 2)
    n_succ = rng.randint(1 if n_ante == 0 else 0, 2)
    budget = weight_cap
    ante, succ = [], []
    for bucket, count in ((ante, n_ante), (succ, n_succ)):
        for _ in range(count):
            if budget <= 1:
                break
            w = rng.randint(1, max(1, min(budget, weight_cap // 2)))
            f = random_formula(rng, names, w, max_box_depth)
            if f.weight > budget:
                continue
            budget -= f.weight
            bucket.append(f)
    return Sequent(logic, mset(ante), mset(succ), EMPTY)


def random_modalized(rng: random.Random, var: str, names: list[str],
                     max_depth: int = 3, max_weight: int = 9) -> Formula:
    """A formula in which var occurs only under boxes (possibly not at all);
    sampling retries until var is modalized."""
    other = [n for n in names if n != var] or ["q"]
    for _ in range(64):
        f = random_formula(rng, other + [var], max_weight, max_depth)
        from .fixpoint import is_modalized
        if is_modalized(f, var):
            return f
    # Fall back to an explicitly guarded shape.
    body = random_formula(rng, other + [var], max_weight - 1, max_depth - 1)
    return box(body)
