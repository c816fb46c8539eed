"""Abstract syntax, parsing and printing of formulas, judgements and problems.

Stored syntax uses the seven primitive constructors only::

    bot | I | letter | r * f | f (+) g | f -o g | f . g

Derived connectives are expanded when a formula is built or parsed:

* ``top``       is ``bot -o bot``
* ``~f``        is ``f -o bot``
* ``f /\\ g``   is ``f (+) (f -o g)``
* ``f \\/ g``   is ``((g -o f) -o f) /\\ ((f -o g) -o g)``
* ``f o-o g``   is ``(f -o g) /\\ (g -o f)``
* a bare rational ``r`` is ``r * I``

Surface grammar (precedence low to high, binary operators left
associative; ``~`` may start any implication-level expression and binds
everything to its right)::

    formula := imp
    imp     := "~" imp | lat (("-o" | "o-o") ("~" imp | lat))*
    lat     := tens (("/\\" | "\\/") tens)*
    tens    := prod ("(+)" prod)*
    prod    := atom ("." atom)*
    atom    := "bot" | "top" | "I" | RAT ["*" prod] | IDENT | "(" formula ")"

A judgement line is ``[formula ("," formula)*] "|-" formula``.  A problem
file holds one judgement per line, ``#`` comments, and at most one line
``goal: <judgement>``.

User letters match ``[a-zA-Z][a-zA-Z0-9_]*`` and never start with ``_``;
names of the shape ``_<k>`` are reserved for machinery that needs fresh
letters.  ``bot``, ``top``, ``I`` and ``inf`` are reserved words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Union

from .quantale import format_rational, parse_rational

__all__ = [
    "Formula",
    "Bot",
    "One",
    "Prop",
    "Scalar",
    "Tensor",
    "Lollipop",
    "Mult",
    "BOT",
    "ONE",
    "ZERO",
    "Judgement",
    "Problem",
    "const",
    "top",
    "neg",
    "conj",
    "disj",
    "iff",
    "fresh_name",
    "is_fresh_name",
    "ParseError",
    "ReservedNameError",
    "parse_formula",
    "parse_judgement",
    "parse_problem",
    "format_formula",
    "format_judgement",
    "format_problem",
    "formula_size",
    "collapse",
    "letters_of",
    "judgement_letters",
    "substitute",
    "count_lollipops",
    "has_bot",
    "has_lollipop",
    "has_mult",
]


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Bot:
    def __repr__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class One:
    def __repr__(self) -> str:
        return "I"


@dataclass(frozen=True)
class Prop:
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Scalar:
    coeff: Fraction
    body: "Formula"

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff < 0:
            raise ValueError("scalar coefficients must be nonnegative")

    def __repr__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Tensor:
    left: "Formula"
    right: "Formula"

    def __repr__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Lollipop:
    ante: "Formula"
    cons: "Formula"

    def __repr__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Mult:
    left: "Formula"
    right: "Formula"

    def __repr__(self) -> str:
        return format_formula(self)


Formula = Union[Bot, One, Prop, Scalar, Tensor, Lollipop, Mult]

BOT = Bot()
ONE = One()
ZERO = Scalar(Fraction(0), ONE)  # "the formula 0", i.e. 0 * I


def const(r) -> Scalar:
    """The constant formula ``r``, shorthand for ``r * I``."""
    return Scalar(Fraction(r), ONE)


def top() -> Lollipop:
    return Lollipop(BOT, BOT)


def neg(f: Formula) -> Lollipop:
    return Lollipop(f, BOT)


def conj(f: Formula, g: Formula) -> Tensor:
    return Tensor(f, Lollipop(f, g))


def disj(f: Formula, g: Formula) -> Tensor:
    left = Lollipop(Lollipop(g, f), f)
    right = Lollipop(Lollipop(f, g), g)
    return conj(left, right)


def iff(f: Formula, g: Formula) -> Tensor:
    return conj(Lollipop(f, g), Lollipop(g, f))


_USER_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
_FRESH_NAME_RE = re.compile(r"_[0-9]+\Z")
RESERVED_WORDS = frozenset({"bot", "top", "I", "inf"})


def fresh_name(index: int) -> str:
    return f"_{index}"


def is_fresh_name(name: str) -> bool:
    return name.startswith("_")


@dataclass(frozen=True)
class Judgement:
    """``phi_1, ..., phi_n |- psi`` with antecedent order and multiplicity kept."""

    antecedents: tuple
    consequent: Formula

    def __post_init__(self):
        object.__setattr__(self, "antecedents", tuple(self.antecedents))

    def __repr__(self) -> str:
        return format_judgement(self)


@dataclass(frozen=True)
class Problem:
    """A hypothesis set plus an optional goal judgement."""

    hypotheses: tuple
    goal: Optional[Judgement] = None

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))


# --------------------------------------------------------------------------
# Lexer


class ParseError(ValueError):
    """Malformed input; carries the offending position."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.pos = pos
        self.text = text
        super().__init__(f"at position {pos}: {message}")


class ReservedNameError(ParseError):
    """Identifier in the reserved ``_`` fresh-letter namespace."""


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<rat>\d+(?:/\d+)?)
    | (?P<tensor>\(\+\))
    | (?P<lpar>\()
    | (?P<rpar>\))
    | (?P<oo>o-o(?![a-zA-Z0-9_]))
    | (?P<lolli>-o)
    | (?P<ident>[a-zA-Z_][a-zA-Z0-9_]*)
    | (?P<and>/\\)
    | (?P<or>\\/)
    | (?P<turnstile>\|-)
    | (?P<dot>\.)
    | (?P<star>\*)
    | (?P<tilde>~)
    | (?P<comma>,)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", self.text, tok[2])
        return tok

    def at(self, kind: str) -> bool:
        return self.peek()[0] == kind

    # formula := imp
    def formula(self) -> Formula:
        return self.imp()

    def imp(self) -> Formula:
        if self.at("tilde"):
            self.next()
            return neg(self.imp())
        node = self.lat()
        while self.peek()[0] in ("lolli", "oo"):
            kind, _, _ = self.next()
            if self.at("tilde"):
                self.next()
                rhs = neg(self.imp())
            else:
                rhs = self.lat()
            node = Lollipop(node, rhs) if kind == "lolli" else iff(node, rhs)
        return node

    def lat(self) -> Formula:
        node = self.tens()
        while self.peek()[0] in ("and", "or"):
            kind, _, _ = self.next()
            rhs = self.tens()
            node = conj(node, rhs) if kind == "and" else disj(node, rhs)
        return node

    def tens(self) -> Formula:
        node = self.prod()
        while self.at("tensor"):
            self.next()
            node = Tensor(node, self.prod())
        return node

    def prod(self) -> Formula:
        node = self.atom()
        while self.at("dot"):
            self.next()
            node = Mult(node, self.atom())
        return node

    def atom(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "rat":
            self.next()
            r = parse_rational(value)
            if self.at("star"):
                self.next()
                return Scalar(r, self.prod())
            return const(r)
        if kind == "ident":
            self.next()
            if value == "bot":
                return BOT
            if value == "top":
                return top()
            if value == "I":
                return ONE
            if value.startswith("_"):
                raise ReservedNameError(
                    f"identifier {value!r} is in the reserved fresh-letter namespace",
                    self.text,
                    pos,
                )
            if value in RESERVED_WORDS:
                raise ParseError(f"{value!r} is a reserved word", self.text, pos)
            return Prop(value)
        if kind == "lpar":
            self.next()
            node = self.formula()
            self.expect("rpar")
            return node
        raise ParseError(f"expected a formula, found {value!r}", self.text, pos)

    def judgement(self) -> Judgement:
        antecedents = []
        if not self.at("turnstile"):
            antecedents.append(self.formula())
            while self.at("comma"):
                self.next()
                antecedents.append(self.formula())
        self.expect("turnstile")
        consequent = self.formula()
        return Judgement(tuple(antecedents), consequent)

    def finish(self):
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"trailing input {tok[1]!r}", self.text, tok[2])


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    node = p.formula()
    p.finish()
    return node


def parse_judgement(text: str) -> Judgement:
    p = _Parser(text)
    j = p.judgement()
    p.finish()
    return j


def parse_problem(text: str) -> Problem:
    """Parse a problem file: judgement lines, ``#`` comments, optional goal."""
    hypotheses = []
    goal = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("goal:"):
                if goal is not None:
                    raise ParseError("more than one goal line", line, 0)
                goal = parse_judgement(line[len("goal:"):])
            else:
                hypotheses.append(parse_judgement(line))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", raw, exc.pos) from None
    return Problem(tuple(hypotheses), goal)


# --------------------------------------------------------------------------
# Printing


def format_formula(f: Formula) -> str:
    """Fully parenthesized primitive syntax; parses back to an equal tree."""
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, One):
        return "I"
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Scalar):
        return f"({format_rational(f.coeff)} * {format_formula(f.body)})"
    if isinstance(f, Tensor):
        return f"({format_formula(f.left)} (+) {format_formula(f.right)})"
    if isinstance(f, Lollipop):
        return f"({format_formula(f.ante)} -o {format_formula(f.cons)})"
    if isinstance(f, Mult):
        return f"({format_formula(f.left)} . {format_formula(f.right)})"
    raise TypeError(f"not a formula: {f!r}")


def format_judgement(j: Judgement) -> str:
    ants = ", ".join(format_formula(a) for a in j.antecedents)
    sep = " " if ants else ""
    return f"{ants}{sep}|- {format_formula(j.consequent)}"


def format_problem(p: Problem) -> str:
    lines = [format_judgement(j) for j in p.hypotheses]
    if p.goal is not None:
        lines.append(f"goal: {format_judgement(p.goal)}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Structural measures and helpers


def formula_size(f: Formula) -> int:
    """Connective and letter count plus scalar coefficient bits.

    Every node counts one; a scalar node additionally counts the bits of
    its coefficient's numerator, plus the bits of the denominator when it
    is not 1 (integers are written without a denominator).
    """
    size = 0
    stack = [f]
    while stack:
        node = stack.pop()
        size += 1
        if isinstance(node, Scalar):
            size += node.coeff.numerator.bit_length()
            if node.coeff.denominator != 1:
                size += node.coeff.denominator.bit_length()
            stack.append(node.body)
        elif isinstance(node, (Tensor, Mult)):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Lollipop):
            stack.append(node.ante)
            stack.append(node.cons)
    return size


def collapse(j: Judgement) -> Judgement:
    """Fold the antecedent list into a single tensor antecedent.

    The empty list becomes the single antecedent ``0 * I`` (value 0 in
    every model, like the empty sum).
    """
    if len(j.antecedents) == 1:
        return j
    if not j.antecedents:
        return Judgement((ZERO,), j.consequent)
    acc = j.antecedents[0]
    for a in j.antecedents[1:]:
        acc = Tensor(acc, a)
    return Judgement((acc,), j.consequent)


def _iter_children(f: Formula) -> Iterator[Formula]:
    if isinstance(f, Scalar):
        yield f.body
    elif isinstance(f, (Tensor, Mult)):
        yield f.left
        yield f.right
    elif isinstance(f, Lollipop):
        yield f.ante
        yield f.cons


def letters_of(f: Formula) -> tuple:
    """Letter names in first-occurrence order (left to right)."""
    seen: dict = {}
    stack = [f]
    order = []
    while stack:
        node = stack.pop()
        if isinstance(node, Prop):
            if node.name not in seen:
                seen[node.name] = True
                order.append(node.name)
        else:
            stack.extend(reversed(list(_iter_children(node))))
    return tuple(order)


def judgement_letters(items: Iterable) -> tuple:
    """First-occurrence letter order over judgements and/or formulas."""
    seen: dict = {}
    order = []
    for item in items:
        formulas: Iterable[Formula]
        if isinstance(item, Judgement):
            formulas = (*item.antecedents, item.consequent)
        else:
            formulas = (item,)
        for g in formulas:
            for name in letters_of(g):
                if name not in seen:
                    seen[name] = True
                    order.append(name)
    return tuple(order)


def substitute(f: Formula, name: str, replacement: Formula, memo: Optional[dict] = None) -> Formula:
    """Replace every occurrence of the letter ``name``; shares untouched subtrees."""
    if memo is None:
        memo = {}
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(f, Prop):
        out = replacement if f.name == name else f
    elif isinstance(f, (Bot, One)):
        out = f
    elif isinstance(f, Scalar):
        body = substitute(f.body, name, replacement, memo)
        out = f if body is f.body else Scalar(f.coeff, body)
    elif isinstance(f, Tensor):
        left = substitute(f.left, name, replacement, memo)
        right = substitute(f.right, name, replacement, memo)
        out = f if left is f.left and right is f.right else Tensor(left, right)
    elif isinstance(f, Mult):
        left = substitute(f.left, name, replacement, memo)
        right = substitute(f.right, name, replacement, memo)
        out = f if left is f.left and right is f.right else Mult(left, right)
    elif isinstance(f, Lollipop):
        ante = substitute(f.ante, name, replacement, memo)
        cons = substitute(f.cons, name, replacement, memo)
        out = f if ante is f.ante and cons is f.cons else Lollipop(ante, cons)
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = (f, out)  # keep f alive so ids stay unique for this memo
    return out


def substitute_judgement(j: Judgement, name: str, replacement: Formula,
                         memo: Optional[dict] = None) -> Judgement:
    if memo is None:
        memo = {}
    ants = tuple(substitute(a, name, replacement, memo) for a in j.antecedents)
    cons = substitute(j.consequent, name, replacement, memo)
    if all(a is b for a, b in zip(ants, j.antecedents)) and cons is j.consequent:
        return j
    return Judgement(ants, cons)


def count_lollipops(f: Formula, memo: Optional[dict] = None) -> int:
    """Number of ``-o`` occurrences, counted as in the formula tree."""
    if memo is None:
        memo = {}
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    n = sum(count_lollipops(c, memo) for c in _iter_children(f))
    if isinstance(f, Lollipop):
        n += 1
    memo[key] = (f, n)
    return n


def _has_node(f: Formula, node_type, memo: dict) -> bool:
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    out = isinstance(f, node_type) or any(
        _has_node(c, node_type, memo) for c in _iter_children(f)
    )
    memo[key] = (f, out)
    return out


def has_bot(f: Formula) -> bool:
    return _has_node(f, Bot, {})


def has_lollipop(f: Formula) -> bool:
    return _has_node(f, Lollipop, {})


def has_mult(f: Formula) -> bool:
    return _has_node(f, Mult, {})
