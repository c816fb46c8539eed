"""Polynomial inequality systems: bounded witness search and SMT-LIB emission.

A :class:`PolySystem` holds constraints ``poly >= 0`` / ``poly > 0`` over
variables that are implicitly nonnegative.  :func:`poly_feasible` is a
sound, incomplete satisfier: it answers with an exactly re-checked
rational witness or not at all (``None`` means unknown, never
infeasible).  Refutations are delegated to an external solver through
:func:`emit_etr`, which renders the system in SMT-LIB 2 (logic QF_NRA)
with one fixed, byte-stable formatting.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Poly

__all__ = ["PolyConstraint", "PolySystem", "SearchBudget", "poly_feasible", "emit_etr"]


@dataclass(frozen=True)
class PolyConstraint:
    poly: Poly
    strict: bool = False  # poly > 0 instead of poly >= 0

    def holds(self, point: Dict[str, Fraction]) -> bool:
        v = self.poly.evaluate(point)
        return v > 0 if self.strict else v >= 0


@dataclass(frozen=True)
class PolySystem:
    variables: Tuple[str, ...]
    constraints: Tuple[PolyConstraint, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if c.poly.vars != self.variables:
                raise ValueError("constraint variable order differs from the system's")

    def holds(self, point: Dict[str, Fraction]) -> bool:
        return (all(Fraction(point[v]) >= 0 for v in self.variables)
                and all(c.holds(point) for c in self.constraints))


@dataclass(frozen=True)
class SearchBudget:
    """Bounds for the witness search: denominators <= ``max_den``,
    magnitudes <= ``max_mag``, at most ``grid_cap`` grid points, then
    ``samples`` seeded random points."""

    max_den: int = 4
    max_mag: int = 4
    grid_cap: int = 20000
    samples: int = 300
    seed: int = 0


def _grid_values(budget: SearchBudget) -> List[Fraction]:
    values = {Fraction(0)}
    for den in range(1, budget.max_den + 1):
        for num in range(0, budget.max_mag * den + 1):
            values.add(Fraction(num, den))
    return sorted(values)


def poly_feasible(system: PolySystem, budget: Optional[SearchBudget] = None
                  ) -> Optional[Dict[str, Fraction]]:
    """An exact witness, or ``None`` (unknown).  Deterministic given the
    budget's seed; every returned point re-verifies every constraint in
    exact arithmetic."""
    if budget is None:
        budget = SearchBudget()
    n = len(system.variables)
    if n == 0:
        point: Dict[str, Fraction] = {}
        return point if system.holds(point) else None
    values = _grid_values(budget)
    produced = 0
    for combo in itertools.product(values, repeat=n):
        if produced >= budget.grid_cap:
            break
        produced += 1
        point = dict(zip(system.variables, combo))
        if system.holds(point):
            assert system.holds(point)
            return point
    rng = random.Random(budget.seed)
    for _ in range(budget.samples):
        point = {
            v: Fraction(rng.randint(0, budget.max_mag * budget.max_den),
                        rng.randint(1, budget.max_den))
            for v in system.variables
        }
        if system.holds(point):
            assert system.holds(point)
            return point
    return None


# --------------------------------------------------------------------------
# SMT-LIB 2 emission (QF_NRA), one canonical rendering


def _smt_coeff(c: Fraction) -> str:
    if c >= 0:
        if c.denominator == 1:
            return str(c.numerator)
        return f"(/ {c.numerator} {c.denominator})"
    return f"(- {_smt_coeff(-c)})"


def _smt_monomial(vars: Sequence[str], exps: Sequence[int], coeff: Fraction) -> str:
    symbols: List[str] = []
    for name, e in zip(vars, exps):
        symbols.extend([name] * e)
    if not symbols:
        return _smt_coeff(coeff)
    body = symbols[0] if len(symbols) == 1 else "(* " + " ".join(symbols) + ")"
    if coeff == 1:
        return body
    return f"(* {_smt_coeff(coeff)} " + " ".join(symbols) + ")"


def _smt_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    terms = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    rendered = [_smt_monomial(p.vars, exps, coeff) for exps, coeff in terms]
    if len(rendered) == 1:
        return rendered[0]
    return "(+ " + " ".join(rendered) + ")"


def emit_etr(system: PolySystem) -> str:
    """Deterministic SMT-LIB 2 text: declarations, nonnegativity, one
    assertion per constraint, ``(check-sat)``."""
    lines = ["(set-logic QF_NRA)"]
    for v in system.variables:
        lines.append(f"(declare-fun {v} () Real)")
    for v in system.variables:
        lines.append(f"(assert (>= {v} 0))")
    for c in system.constraints:
        op = ">" if c.strict else ">="
        lines.append(f"(assert ({op} {_smt_poly(c.poly)} 0))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
