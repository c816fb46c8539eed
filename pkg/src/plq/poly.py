"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is a mapping from exponent vectors (one natural per
variable, over a fixed variable tuple) to nonzero ``Fraction``
coefficients.  Extraction from a polynomial-form formula yields only
nonnegative coefficients; differences and certificate arithmetic may
carry negative ones.

Text rendering is ``c1*x^e1*y^e2 + c2*... `` with rational coefficients
always printed, ``^e`` omitted for exponent 1; the zero polynomial is
``0``.  Terms are ordered by descending total degree, then descending
exponent vector.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .quantale import format_rational
from .syntax import Formula, Mult, One, Prop, Scalar, Tensor, letters_of

__all__ = [
    "Poly",
    "NotPolynomialFormError",
    "to_poly",
    "poly_eq",
    "parse_poly",
]

Exponents = Tuple[int, ...]


class NotPolynomialFormError(ValueError):
    """Extraction attempted on a formula containing ``bot`` or ``-o``."""


class Poly:
    """Immutable sparse polynomial over a fixed variable order."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Optional[Mapping[Exponents, Fraction]] = None):
        object.__setattr__(self, "vars", tuple(vars))
        clean: Dict[Exponents, Fraction] = {}
        if terms:
            n = len(self.vars)
            for exps, coeff in terms.items():
                if len(exps) != n:
                    raise ValueError(
                        f"exponent vector {exps} does not match arity {n}")
                coeff = Fraction(coeff)
                if coeff != 0:
                    exps = tuple(int(e) for e in exps)
                    clean[exps] = clean.get(exps, Fraction(0)) + coeff
                    if clean[exps] == 0:
                        del clean[exps]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Poly values are immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls(vars)

    @classmethod
    def constant(cls, vars: Sequence[str], value) -> "Poly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): Fraction(value)})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Poly":
        vars = tuple(vars)
        idx = vars.index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(vars)))
        return cls(vars, {exps: Fraction(1)})

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> Optional[Fraction]:
        """The value when the polynomial is constant, else ``None``."""
        if not self.terms:
            return Fraction(0)
        zero = (0,) * len(self.vars)
        if set(self.terms) == {zero}:
            return self.terms[zero]
        return None

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- arithmetic ----------------------------------------------------------

    def _check_same_vars(self, other: "Poly"):
        if self.vars != other.vars:
            raise ValueError(
                f"variable orders differ: {self.vars} vs {other.vars}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same_vars(other)
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return Poly(self.vars, terms)

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_same_vars(other)
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Poly(self.vars, terms)

    def scale(self, value) -> "Poly":
        value = Fraction(value)
        return Poly(self.vars, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative exponent")
        out = Poly.constant(self.vars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for name, e in zip(self.vars, exps):
                if e:
                    term *= Fraction(point[name]) ** e
            total += term
        return total

    # -- alignment and equality ----------------------------------------------

    def with_vars(self, vars: Sequence[str]) -> "Poly":
        """Re-index over a superset variable order."""
        vars = tuple(vars)
        positions = []
        for name in self.vars:
            try:
                positions.append(vars.index(name))
            except ValueError:
                raise ValueError(f"variable {name!r} missing from {vars}") from None
        terms: Dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = [0] * len(vars)
            for pos, exp in zip(positions, exps):
                e[pos] = exp
            terms[tuple(e)] = coeff
        return Poly(vars, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        return poly_eq(self, other)

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # -- rendering -----------------------------------------------------------

    def _sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self._sorted_terms():
            factors = [format_rational(coeff) if coeff >= 0
                       else "-" + format_rational(-coeff)]
            for name, e in zip(self.vars, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"


def poly_eq(a: Poly, b: Poly) -> bool:
    """Coefficientwise equality after aligning variable orders."""
    merged = tuple(dict.fromkeys(a.vars + b.vars))
    return a.with_vars(merged).terms == b.with_vars(merged).terms


# --------------------------------------------------------------------------
# Extraction from polynomial-form formulas


def to_poly(f: Formula, variables: Optional[Sequence[str]] = None) -> Poly:
    """The polynomial of a polynomial-form formula.

    ``letter -> x``, ``I -> 1``, ``r * f -> r * [f]``, ``(+) -> +``,
    ``. -> *``.  For every finite model the formula's value equals the
    polynomial evaluated at the letter values.
    """
    if variables is None:
        variables = sorted(letters_of(f))
    vars = tuple(variables)

    def walk(g: Formula) -> Poly:
        if isinstance(g, Prop):
            return Poly.variable(vars, g.name)
        if isinstance(g, One):
            return Poly.constant(vars, 1)
        if isinstance(g, Scalar):
            return walk(g.body).scale(g.coeff)
        if isinstance(g, Tensor):
            return walk(g.left) + walk(g.right)
        if isinstance(g, Mult):
            return walk(g.left) * walk(g.right)
        raise NotPolynomialFormError(
            f"not in polynomial form (contains {type(g).__name__}): {g!r}")

    return walk(f)


# --------------------------------------------------------------------------
# Parsing the rendered syntax (used by certificate files)

_TERM_FACTOR_RE = re.compile(
    r"\s*(?P<coeff>-?\d+(?:/\d+)?)\s*\Z|\s*(?P<var>[a-zA-Z_][a-zA-Z0-9_]*)(?:\^(?P<exp>\d+))?\s*\Z")


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    """Parse the :meth:`Poly.render` syntax over the given variable order."""
    vars = tuple(variables)
    terms: Dict[Exponents, Fraction] = {}
    body = text.strip()
    if body == "0":
        return Poly.zero(vars)
    # normalize "a - b" into "a + -b" at top level
    body = re.sub(r"(?<=[^+*^\s])\s*-\s*", " + -", body)
    for raw_term in body.split("+"):
        raw_term = raw_term.strip()
        if not raw_term:
            raise ValueError(f"empty term in polynomial: {text!r}")
        coeff = Fraction(1)
        exps = [0] * len(vars)
        for factor in raw_term.split("*"):
            m = _TERM_FACTOR_RE.match(factor)
            if m is None:
                raise ValueError(f"bad factor {factor!r} in polynomial {text!r}")
            if m.group("coeff") is not None:
                coeff *= Fraction(m.group("coeff"))
            else:
                name = m.group("var")
                if name not in vars:
                    raise ValueError(f"unknown variable {name!r} in polynomial {text!r}")
                exps[vars.index(name)] += int(m.group("exp") or 1)
        exps_t = tuple(exps)
        terms[exps_t] = terms.get(exps_t, Fraction(0)) + coeff
    return Poly(vars, terms)
