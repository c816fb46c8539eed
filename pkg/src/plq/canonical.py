"""Canonical forms: the ``cf`` rewriting, form classification, constant folding.

A formula is in canonical form (CF) when it is ``bot`` or in proper
canonical form (PCF), the ``bot``-free fragment::

    theta := letter | I | r * theta | theta (+) theta
           | theta -o theta | theta . theta

PCF formulas without ``-o`` are in polynomial form; polynomial formulas
without ``.`` are in affine form.

``canonicalize`` pushes ``bot`` and the zero scalar outward by the fixed
case table (see the function docstring).  The rewrite preserves values
exactly on models that assign finite, strictly positive values to every
letter; the two standard mismatches are ``p -o bot`` at ``p = inf``
(0 vs inf) and ``p . bot`` at ``p = 0`` (0 vs inf).
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Optional

from .syntax import (
    BOT,
    ONE,
    ZERO,
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
    "FormClass",
    "canonicalize",
    "canonicalize_judgement",
    "classify",
    "is_canonical",
    "is_pcf",
    "is_polynomial_form",
    "is_affine_form",
    "fold_constants",
    "closed_value",
]


class FormClass(Enum):
    """Narrowest syntactic class of a formula; AFFINE < POLYNOMIAL < PCF."""

    CF_BOT = "cf-bot"
    PCF = "pcf"
    POLYNOMIAL = "polynomial"
    AFFINE = "affine"
    NONE = "none"


def canonicalize(f: Formula, memo: Optional[dict] = None) -> Formula:
    """The ``cf`` rewriting, case by case (``0`` is the formula ``0 * I``):

    * letters, ``bot``, ``I`` map to themselves;
    * ``r * f``: ``0`` if ``r = 0``; ``bot`` if ``r != 0`` and ``cf(f) = bot``;
      else ``r * cf(f)``;
    * ``f (+) g``: ``bot`` if either side's cf is ``bot``; else recurse;
    * ``f -o g``: ``0`` if ``cf(f) = bot``; ``bot`` if ``cf(f) != bot`` and
      ``cf(g) = bot``; else recurse;
    * ``f . g``: ``0`` if either side's cf is the formula ``0`` (checked
      syntactically, exactly); ``bot`` if either side's cf is ``bot``;
      else recurse.
    """
    if memo is None:
        memo = {}
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(f, (Prop, Bot, One)):
        out = f
    elif isinstance(f, Scalar):
        if f.coeff == 0:
            out = ZERO
        else:
            body = canonicalize(f.body, memo)
            if body == BOT:
                out = BOT
            else:
                out = f if body is f.body else Scalar(f.coeff, body)
    elif isinstance(f, Tensor):
        left = canonicalize(f.left, memo)
        right = canonicalize(f.right, memo)
        if left == BOT or right == BOT:
            out = BOT
        else:
            out = f if left is f.left and right is f.right else Tensor(left, right)
    elif isinstance(f, Lollipop):
        ante = canonicalize(f.ante, memo)
        cons = canonicalize(f.cons, memo)
        if ante == BOT:
            out = ZERO
        elif cons == BOT:
            out = BOT
        else:
            out = f if ante is f.ante and cons is f.cons else Lollipop(ante, cons)
    elif isinstance(f, Mult):
        left = canonicalize(f.left, memo)
        right = canonicalize(f.right, memo)
        if left == ZERO or right == ZERO:
            out = ZERO
        elif left == BOT or right == BOT:
            out = BOT
        else:
            out = f if left is f.left and right is f.right else Mult(left, right)
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = (f, out)
    return out


def canonicalize_judgement(j: Judgement, memo: Optional[dict] = None) -> Judgement:
    if memo is None:
        memo = {}
    ants = tuple(canonicalize(a, memo) for a in j.antecedents)
    cons = canonicalize(j.consequent, memo)
    if all(a is b for a, b in zip(ants, j.antecedents)) and cons is j.consequent:
        return j
    return Judgement(ants, cons)


def _scan(f: Formula, memo: dict) -> tuple:
    """(has_bot, has_lolli, has_mult) with shared-subtree caching."""
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(f, Bot):
        out = (True, False, False)
    elif isinstance(f, (One, Prop)):
        out = (False, False, False)
    elif isinstance(f, Scalar):
        out = _scan(f.body, memo)
    else:
        if isinstance(f, Lollipop):
            a = _scan(f.ante, memo)
            b = _scan(f.cons, memo)
        else:
            a = _scan(f.left, memo)
            b = _scan(f.right, memo)
        out = (
            a[0] or b[0],
            a[1] or b[1] or isinstance(f, Lollipop),
            a[2] or b[2] or isinstance(f, Mult),
        )
    memo[key] = (f, out)
    return out


def classify(f: Formula) -> FormClass:
    """Narrowest class of ``f``; ``NONE`` when ``bot`` occurs below the root."""
    if isinstance(f, Bot):
        return FormClass.CF_BOT
    bot, lolli, mult = _scan(f, {})
    if bot:
        return FormClass.NONE
    if lolli:
        return FormClass.PCF
    if mult:
        return FormClass.POLYNOMIAL
    return FormClass.AFFINE


def is_canonical(f: Formula) -> bool:
    return classify(f) is not FormClass.NONE


def is_pcf(f: Formula) -> bool:
    return classify(f) in (FormClass.PCF, FormClass.POLYNOMIAL, FormClass.AFFINE)


def is_polynomial_form(f: Formula) -> bool:
    return classify(f) in (FormClass.POLYNOMIAL, FormClass.AFFINE)


def is_affine_form(f: Formula) -> bool:
    return classify(f) is FormClass.AFFINE


# --------------------------------------------------------------------------
# Constant folding


def closed_value(f: Formula, memo: Optional[dict] = None) -> Optional[Fraction]:
    """Exact value of a letter-free, ``bot``-free formula; ``None`` otherwise."""
    if memo is None:
        memo = {}
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    out: Optional[Fraction]
    if isinstance(f, One):
        out = Fraction(1)
    elif isinstance(f, (Prop, Bot)):
        out = None
    elif isinstance(f, Scalar):
        v = closed_value(f.body, memo)
        out = None if v is None else f.coeff * v
    elif isinstance(f, Tensor):
        a = closed_value(f.left, memo)
        b = closed_value(f.right, memo)
        out = None if a is None or b is None else a + b
    elif isinstance(f, Mult):
        a = closed_value(f.left, memo)
        b = closed_value(f.right, memo)
        out = None if a is None or b is None else a * b
    elif isinstance(f, Lollipop):
        a = closed_value(f.ante, memo)
        b = closed_value(f.cons, memo)
        out = None if a is None or b is None else max(b - a, Fraction(0))
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = (f, out)
    return out


def fold_constants(f: Formula, memo: Optional[dict] = None,
                   values: Optional[dict] = None) -> Formula:
    """Replace every letter-free, ``bot``-free subformula by its constant.

    Value-preserving in every model (closed PCF subformulas evaluate to the
    same finite rational under any assignment).  Applied after ``cf`` this
    removes closed ``-o`` nests, which keeps the elimination phase of the
    reductions linear on inputs with many decided letters.
    """
    if memo is None:
        memo = {}
    if values is None:
        values = {}
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    value = closed_value(f, values)
    if value is not None:
        if isinstance(f, Scalar) and f.body is ONE:
            out = f
        elif isinstance(f, One):
            out = f
        else:
            out = Scalar(value, ONE)
    elif isinstance(f, (Prop, Bot, One)):
        out = f
    elif isinstance(f, Scalar):
        body = fold_constants(f.body, memo, values)
        out = f if body is f.body else Scalar(f.coeff, body)
    elif isinstance(f, Tensor):
        left = fold_constants(f.left, memo, values)
        right = fold_constants(f.right, memo, values)
        out = f if left is f.left and right is f.right else Tensor(left, right)
    elif isinstance(f, Mult):
        left = fold_constants(f.left, memo, values)
        right = fold_constants(f.right, memo, values)
        out = f if left is f.left and right is f.right else Mult(left, right)
    else:
        ante = fold_constants(f.ante, memo, values)
        cons = fold_constants(f.cons, memo, values)
        out = f if ante is f.ante and cons is f.cons else Lollipop(ante, cons)
    memo[key] = (f, out)
    return out
