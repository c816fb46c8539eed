"""Seeded random generation of formulas, judgements and problems.

Used by the rule-soundness fuzzer and by the test suite.  Everything is
a pure function of the supplied ``random.Random`` instance.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .syntax import (
    BOT,
    ONE,
    Formula,
    Judgement,
    Lollipop,
    Mult,
    Problem,
    Prop,
    Scalar,
    Tensor,
    conj,
    const,
    disj,
    iff,
    neg,
    top,
)

__all__ = [
    "DEFAULT_SCALARS",
    "random_formula",
    "random_pcf",
    "random_judgement",
    "random_problem",
]

DEFAULT_SCALARS: Tuple[Fraction, ...] = (
    Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3),
)


def random_formula(rng: random.Random, letters: Sequence[str], depth: int = 3,
                   scalars: Sequence[Fraction] = DEFAULT_SCALARS,
                   allow_mult: bool = True, allow_bot: bool = True) -> Formula:
    """A random formula, primitives plus occasional derived sugar."""
    leaves = ["prop", "one", "const"]
    if allow_bot:
        leaves.append("bot")
    if depth <= 0:
        kind = rng.choice(leaves)
    else:
        kinds = ["prop", "one", "scalar", "tensor", "tensor", "lolli", "lolli",
                 "neg", "conj", "disj", "iff", "const", "top"]
        if allow_bot:
            kinds.append("bot")
        if allow_mult:
            kinds += ["mult", "mult"]
        kind = rng.choice(kinds)
    if kind == "prop":
        return Prop(rng.choice(list(letters)))
    if kind == "one":
        return ONE
    if kind == "bot":
        return BOT
    if kind == "const":
        return const(rng.choice(list(scalars)))
    if kind == "top":
        return top()

    def sub():
        return random_formula(rng, letters, depth - 1, scalars, allow_mult, allow_bot)

    if kind == "scalar":
        return Scalar(rng.choice(list(scalars)), sub())
    if kind == "tensor":
        return Tensor(sub(), sub())
    if kind == "mult":
        return Mult(sub(), sub())
    if kind == "lolli":
        return Lollipop(sub(), sub())
    if kind == "neg":
        return neg(sub())
    if kind == "conj":
        return conj(sub(), sub())
    if kind == "disj":
        return disj(sub(), sub())
    return iff(sub(), sub())


def random_pcf(rng: random.Random, letters: Sequence[str], depth: int = 3,
               scalars: Sequence[Fraction] = DEFAULT_SCALARS,
               allow_mult: bool = True) -> Formula:
    """A random formula from the proper-canonical-form grammar (no ``bot``)."""
    if depth <= 0:
        kind = rng.choice(["prop", "prop", "one"])
    else:
        kinds = ["prop", "one", "scalar", "tensor", "tensor", "lolli"]
        if allow_mult:
            kinds.append("mult")
        kind = rng.choice(kinds)
    if kind == "prop":
        return Prop(rng.choice(list(letters)))
    if kind == "one":
        return ONE

    def sub():
        return random_pcf(rng, letters, depth - 1, scalars, allow_mult)

    if kind == "scalar":
        return Scalar(rng.choice(list(scalars)), sub())
    if kind == "tensor":
        return Tensor(sub(), sub())
    if kind == "mult":
        return Mult(sub(), sub())
    return Lollipop(sub(), sub())


def random_judgement(rng: random.Random, letters: Sequence[str], depth: int = 3,
                     scalars: Sequence[Fraction] = DEFAULT_SCALARS,
                     allow_mult: bool = True, allow_bot: bool = True,
                     max_antecedents: int = 2) -> Judgement:
    n = rng.randint(0, max_antecedents)
    ants = tuple(
        random_formula(rng, letters, depth, scalars, allow_mult, allow_bot)
        for _ in range(n))
    cons = random_formula(rng, letters, depth, scalars, allow_mult, allow_bot)
    return Judgement(ants, cons)


def random_problem(rng: random.Random, letters: Sequence[str], depth: int = 3,
                   scalars: Sequence[Fraction] = DEFAULT_SCALARS,
                   allow_mult: bool = True, allow_bot: bool = True,
                   max_judgements: int = 3, with_goal: bool = False) -> Problem:
    n = rng.randint(1, max_judgements)
    hyps = tuple(
        random_judgement(rng, letters, depth, scalars, allow_mult, allow_bot)
        for _ in range(n))
    goal = None
    if with_goal:
        goal = random_judgement(rng, letters, depth, scalars, allow_mult, allow_bot)
    return Problem(hyps, goal)
