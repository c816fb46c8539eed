"""Models, formula evaluation, judgement satisfaction and model sampling.

A model is a plain ``dict`` mapping letter names to :class:`~plq.quantale.Ext`
values.  Evaluation follows the quantale reading of the connectives:

* ``bot`` is ``inf``, ``I`` is ``1``;
* ``r * f`` multiplies (``0 * inf == 0``), ``f . g`` multiplies;
* ``f (+) g`` adds;
* ``f -o g`` is truncated subtraction ``value(g) - value(f)``.

A judgement ``Gamma |- psi`` is satisfied when the sum of the antecedent
values is numerically ``>=`` the consequent value (the empty sum is 0,
and ``inf >= inf`` holds).
"""

from __future__ import annotations

import random
from typing import Dict, Iterable, Optional, Sequence

from .quantale import EXT_ONE, EXT_ZERO, INF, Ext, parse_ext
from .syntax import (
    Bot,
    Formula,
    Judgement,
    Lollipop,
    Mult,
    One,
    Prop,
    Scalar,
    Tensor,
)

__all__ = [
    "Model",
    "MissingLetterError",
    "evaluate",
    "satisfies",
    "satisfies_all",
    "PROFILES",
    "sample_model",
    "parse_model",
    "format_model",
]

Model = Dict[str, Ext]


class MissingLetterError(KeyError):
    """A letter queried during evaluation has no assignment."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"letter {self.name!r} is not assigned by the model"


def evaluate(model: Model, f: Formula, _memo: Optional[dict] = None) -> Ext:
    """Value of ``f`` under ``model``; raises :class:`MissingLetterError`.

    Shared subtrees are evaluated once per call (the expansion of derived
    connectives reuses subterm objects heavily).
    """
    if _memo is None:
        _memo = {}
    key = id(f)
    hit = _memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(f, Prop):
        try:
            out = model[f.name]
        except KeyError:
            raise MissingLetterError(f.name) from None
    elif isinstance(f, Bot):
        out = INF
    elif isinstance(f, One):
        out = EXT_ONE
    elif isinstance(f, Scalar):
        out = Ext(f.coeff) * evaluate(model, f.body, _memo)
    elif isinstance(f, Tensor):
        out = evaluate(model, f.left, _memo) + evaluate(model, f.right, _memo)
    elif isinstance(f, Mult):
        out = evaluate(model, f.left, _memo) * evaluate(model, f.right, _memo)
    elif isinstance(f, Lollipop):
        out = evaluate(model, f.cons, _memo).truncsub(evaluate(model, f.ante, _memo))
    else:
        raise TypeError(f"not a formula: {f!r}")
    _memo[key] = (f, out)
    return out


def satisfies(model: Model, j: Judgement) -> bool:
    memo: dict = {}
    total = EXT_ZERO
    for a in j.antecedents:
        total = total + evaluate(model, a, memo)
        if total == INF:
            break
    return total >= evaluate(model, j.consequent, memo)


def satisfies_all(model: Model, judgements: Iterable[Judgement]) -> bool:
    return all(satisfies(model, j) for j in judgements)


# --------------------------------------------------------------------------
# Sampling

#: Value populations for :func:`sample_model`:
#: ``general``          zero 18%, infinity 18%, small positive rationals 64%
#: ``finite``           zero 25%, small positive rationals 75%
#: ``finite-positive``  small positive rationals only
PROFILES = ("general", "finite", "finite-positive")


def _positive_rational(rng: random.Random) -> Ext:
    from fractions import Fraction

    return Ext(Fraction(rng.randint(1, 8), rng.randint(1, 4)))


def sample_model(letters: Sequence[str], profile: str = "general",
                 seed: int = 0, rng: Optional[random.Random] = None) -> Model:
    """Deterministic random model over ``letters`` for the given profile."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    if rng is None:
        rng = random.Random(seed)
    model: Model = {}
    for name in letters:
        u = rng.random()
        if profile == "general":
            if u < 0.18:
                model[name] = EXT_ZERO
            elif u < 0.36:
                model[name] = INF
            else:
                model[name] = _positive_rational(rng)
        elif profile == "finite":
            if u < 0.25:
                model[name] = EXT_ZERO
            else:
                model[name] = _positive_rational(rng)
        else:
            model[name] = _positive_rational(rng)
    return model


# --------------------------------------------------------------------------
# Model files: one "IDENT = RAT|inf" per line, '#' comments


def parse_model(text: str) -> Model:
    model: Model = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, eq, value = line.partition("=")
        name = name.strip()
        if not eq or not name.isidentifier():
            raise ValueError(f"line {lineno}: expected 'letter = value', got {raw!r}")
        if name in model:
            raise ValueError(f"line {lineno}: duplicate assignment for {name!r}")
        try:
            model[name] = parse_ext(value)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return model


def format_model(model: Model) -> str:
    lines = [f"{name} = {model[name]}" for name in sorted(model)]
    return "\n".join(lines) + ("\n" if lines else "")
