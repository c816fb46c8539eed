"""The natural-deduction rule catalog and schema instantiation.

Every rule is a schema over metavariables: formulas (``phi``, ``psi``,
``theta``), contexts (``Gamma``, ``Delta`` — formula lists), scalars
(``r``, ``s`` — nonnegative rationals) and a parameter ``op`` for the two
parameterized families.  :func:`instantiate_rule` turns a rule plus a
complete substitution into fully concrete premises and a conclusion.

Catalog summary (33 entries; bidirectional rules appear as _fwd/_bwd):

* structural:  id, cut, weak, perm
* lattice:     top, bot, and1..3, or1..3
* quantale:    wem, tot, tensor1_fwd/_bwd, tensor2_fwd/_bwd, tensor3,
               lolli1, lolli2, lolli3, one_rule
* product:     P1..P9 (P7_fwd/P7_bwd); P4 takes ``op`` in
               {tensor, and, or, lolli}; P9 takes ``op`` in
               {plus, monus, max, min} plus scalars ``r``, ``s``

Two schemas carry a note where the implemented form departs from the
way they are usually stated:

* P1 is implemented as ``|- r*phi o-o r.phi`` (the constant-multiplication
  reading); statements of it sometimes show mismatched letters.
* P4 with ``op = lolli`` and P9 with ``op = monus`` carry the side premise
  ``|- ~~theta`` (resp. ``|- ~~phi``).  Without it the equivalences fail
  on infinite assignments: for ``theta = inf`` and ``0 < a < b < inf``,
  ``theta.(phi -o psi)`` is ``inf`` while ``theta.phi -o theta.psi`` is
  ``inf - inf = 0``; likewise ``(r - s)*phi`` vs ``s.phi -o r.phi`` for
  ``r > s > 0`` at ``phi = inf``.  The premise restores soundness over
  all models, the same device the lolli2/lolli3 rules use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Tuple

from .syntax import (
    BOT,
    ONE,
    Formula,
    Judgement,
    Lollipop,
    Mult,
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
    "Rule",
    "RULES",
    "RULE_ORDER",
    "UnknownRuleError",
    "MissingBindingError",
    "IllegalParameterError",
    "instantiate_rule",
    "P4_OPS",
    "P9_OPS",
]


class UnknownRuleError(KeyError):
    def __init__(self, name: str):
        self.rule = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown rule {self.rule!r}"


class MissingBindingError(ValueError):
    def __init__(self, rule: str, name: str):
        self.rule = rule
        self.name = name
        super().__init__(f"rule {rule!r} needs a binding for {name!r}")


class IllegalParameterError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    """A schema: required metavariables plus a builder to concrete judgements."""

    name: str
    params: Tuple[Tuple[str, str], ...]  # (metavariable, kind); kind in
    #                                      {"formula", "context", "scalar", "op"}
    build: Callable[[Mapping], Tuple[Tuple[Judgement, ...], Judgement]]
    schema: str = ""
    note: str = ""

    def instantiate(self, subst: Mapping) -> Tuple[Tuple[Judgement, ...], Judgement]:
        for name, kind in self.params:
            if name not in subst:
                raise MissingBindingError(self.name, name)
            value = subst[name]
            if kind == "scalar" and Fraction(value) < 0:
                raise IllegalParameterError(
                    f"rule {self.name!r}: scalar {name} must be nonnegative")
        return self.build(subst)


P4_OPS = ("tensor", "and", "or", "lolli")
P9_OPS = ("plus", "monus", "max", "min")


def _ctx(value) -> Tuple[Formula, ...]:
    return tuple(value)


def _J(ants, cons) -> Judgement:
    return Judgement(tuple(ants), cons)


def _mul_const(r: Fraction, f: Formula) -> Mult:
    """The formula ``r.f``: multiplication by the constant formula ``r``."""
    return Mult(const(r), f)


def _build_catalog() -> Dict[str, Rule]:
    rules: Dict[str, Rule] = {}

    def add(name, params, build, schema, note=""):
        rules[name] = Rule(name, tuple(params), build, schema, note)

    F, C, S, O = "formula", "context", "scalar", "op"

    # -- logical deduction and structural rules ------------------------------
    add("id", [("phi", F)],
        lambda s: ((), _J([s["phi"]], s["phi"])),
        "phi |- phi")
    add("cut", [("Gamma", C), ("Delta", C), ("phi", F), ("psi", F)],
        lambda s: ((_J(_ctx(s["Gamma"]), s["phi"]),
                    _J(_ctx(s["Delta"]) + (s["phi"],), s["psi"])),
                   _J(_ctx(s["Gamma"]) + _ctx(s["Delta"]), s["psi"])),
        "Gamma |- phi ; Delta, phi |- psi => Gamma, Delta |- psi")
    add("weak", [("Gamma", C), ("phi", F), ("psi", F)],
        lambda s: ((_J(_ctx(s["Gamma"]), s["phi"]),),
                   _J(_ctx(s["Gamma"]) + (s["psi"],), s["phi"])),
        "Gamma |- phi => Gamma, psi |- phi")
    add("perm", [("Gamma", C), ("Delta", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (s["phi"], s["psi"]) + _ctx(s["Delta"]),
                       s["theta"]),),
                   _J(_ctx(s["Gamma"]) + (s["psi"], s["phi"]) + _ctx(s["Delta"]),
                      s["theta"])),
        "Gamma, phi, psi, Delta |- theta => Gamma, psi, phi, Delta |- theta")

    # -- lattice rules --------------------------------------------------------
    add("top", [("Gamma", C)],
        lambda s: ((), _J(_ctx(s["Gamma"]), top())),
        "Gamma |- top")
    add("bot", [("phi", F)],
        lambda s: ((), _J([BOT], s["phi"])),
        "bot |- phi")
    add("and1", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (s["phi"],), s["theta"]),),
                   _J(_ctx(s["Gamma"]) + (conj(s["phi"], s["psi"]),), s["theta"])),
        "Gamma, phi |- theta => Gamma, phi /\\ psi |- theta")
    add("and2", [("Gamma", C), ("phi", F), ("psi", F)],
        lambda s: ((_J(_ctx(s["Gamma"]), s["phi"]), _J(_ctx(s["Gamma"]), s["psi"])),
                   _J(_ctx(s["Gamma"]), conj(s["phi"], s["psi"]))),
        "Gamma |- phi ; Gamma |- psi => Gamma |- phi /\\ psi")
    add("and3", [("Gamma", C), ("phi", F), ("psi", F)],
        lambda s: ((_J(_ctx(s["Gamma"]), conj(s["phi"], s["psi"])),),
                   _J(_ctx(s["Gamma"]), s["psi"])),
        "Gamma |- phi /\\ psi => Gamma |- psi")
    add("or1", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (s["phi"],), s["theta"]),
                    _J(_ctx(s["Gamma"]) + (s["psi"],), s["theta"])),
                   _J(_ctx(s["Gamma"]) + (disj(s["phi"], s["psi"]),), s["theta"])),
        "Gamma, phi |- theta ; Gamma, psi |- theta => Gamma, phi \\/ psi |- theta")
    add("or2", [("Gamma", C), ("phi", F), ("psi", F)],
        lambda s: ((_J(_ctx(s["Gamma"]), s["phi"]),),
                   _J(_ctx(s["Gamma"]), disj(s["phi"], s["psi"]))),
        "Gamma |- phi => Gamma |- phi \\/ psi")
    add("or3", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (disj(s["phi"], s["psi"]),), s["theta"]),),
                   _J(_ctx(s["Gamma"]) + (s["psi"],), s["theta"])),
        "Gamma, phi \\/ psi |- theta => Gamma, psi |- theta")

    # -- Lawvere quantale rules ------------------------------------------------
    add("wem", [("phi", F)],
        lambda s: ((), _J((), disj(neg(s["phi"]), neg(neg(s["phi"]))))),
        "|- (~phi) \\/ (~~phi)")
    add("tot", [("phi", F), ("psi", F)],
        lambda s: ((), _J((), disj(Lollipop(s["phi"], s["psi"]),
                                   Lollipop(s["psi"], s["phi"])))),
        "|- (phi -o psi) \\/ (psi -o phi)")
    add("tensor1_fwd", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (s["phi"], s["psi"]), s["theta"]),),
                   _J(_ctx(s["Gamma"]) + (Tensor(s["phi"], s["psi"]),), s["theta"])),
        "Gamma, phi, psi |- theta => Gamma, phi (+) psi |- theta")
    add("tensor1_bwd", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (Tensor(s["phi"], s["psi"]),), s["theta"]),),
                   _J(_ctx(s["Gamma"]) + (s["phi"], s["psi"]), s["theta"])),
        "Gamma, phi (+) psi |- theta => Gamma, phi, psi |- theta")
    add("tensor2_fwd", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (Tensor(s["phi"], s["psi"]),), s["theta"]),),
                   _J(_ctx(s["Gamma"]) + (s["phi"],), Lollipop(s["psi"], s["theta"]))),
        "Gamma, phi (+) psi |- theta => Gamma, phi |- psi -o theta")
    add("tensor2_bwd", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (s["phi"],), Lollipop(s["psi"], s["theta"])),),
                   _J(_ctx(s["Gamma"]) + (Tensor(s["phi"], s["psi"]),), s["theta"])),
        "Gamma, phi |- psi -o theta => Gamma, phi (+) psi |- theta")
    add("tensor3", [("phi", F), ("psi", F)],
        lambda s: ((_J([Tensor(s["phi"], s["phi"])], Tensor(s["psi"], s["psi"])),),
                   _J([s["phi"]], s["psi"])),
        "phi (+) phi |- psi (+) psi => phi |- psi")
    add("lolli1", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (Lollipop(s["phi"], s["theta"]),), s["psi"]),
                    _J([s["theta"]], s["phi"])),
                   _J(_ctx(s["Gamma"]) + (s["theta"],), Tensor(s["phi"], s["psi"]))),
        "Gamma, phi -o theta |- psi ; theta |- phi => Gamma, theta |- phi (+) psi")
    add("lolli2", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (s["theta"],), Tensor(s["phi"], s["psi"])),
                    _J((), neg(neg(s["phi"])))),
                   _J(_ctx(s["Gamma"]) + (Lollipop(s["phi"], s["theta"]),), s["psi"])),
        "Gamma, theta |- phi (+) psi ; |- ~~phi => Gamma, phi -o theta |- psi")
    add("lolli3", [("Gamma", C), ("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((_J(_ctx(s["Gamma"]) + (s["theta"],), Tensor(s["phi"], s["psi"])),
                    _J((), neg(neg(s["theta"])))),
                   _J(_ctx(s["Gamma"]) + (Lollipop(s["phi"], s["theta"]),), s["psi"])),
        "Gamma, theta |- phi (+) psi ; |- ~~theta => Gamma, phi -o theta |- psi")
    add("one_rule", [],
        lambda s: ((_J((), disj(ONE, neg(ONE))),), _J((), BOT)),
        "|- I \\/ ~I => |- bot")

    # -- product rules ----------------------------------------------------------
    add("P1", [("r", S), ("phi", F)],
        lambda s: ((), _J((), iff(Scalar(Fraction(s["r"]), s["phi"]),
                                  _mul_const(Fraction(s["r"]), s["phi"])))),
        "|- r*phi o-o r.phi",
        note="constant-multiplication reading; sometimes stated with "
             "mismatched letters on the right-hand side")
    add("P2", [("phi", F), ("psi", F), ("theta", F)],
        lambda s: ((), _J((), iff(Mult(s["phi"], Mult(s["psi"], s["theta"])),
                                  Mult(Mult(s["phi"], s["psi"]), s["theta"])))),
        "|- phi.(psi.theta) o-o (phi.psi).theta")
    add("P3", [("phi", F), ("psi", F)],
        lambda s: ((), _J((), iff(Mult(s["phi"], s["psi"]),
                                  Mult(s["psi"], s["phi"])))),
        "|- phi.psi o-o psi.phi")

    def build_p4(s):
        op = s["op"]
        if op not in P4_OPS:
            raise IllegalParameterError(f"P4 op must be one of {P4_OPS}, got {op!r}")
        theta, phi, psi = s["theta"], s["phi"], s["psi"]
        combine = {"tensor": Tensor, "and": conj, "or": disj, "lolli": Lollipop}[op]
        lhs = Mult(theta, combine(phi, psi))
        rhs = combine(Mult(theta, phi), Mult(theta, psi))
        premises = ()
        if op == "lolli":
            premises = (_J((), neg(neg(theta))),)
        return premises, _J((), iff(lhs, rhs))

    add("P4", [("op", O), ("theta", F), ("phi", F), ("psi", F)], build_p4,
        "|- theta.(phi <> psi) o-o theta.phi <> theta.psi   "
        "(<> in {(+), /\\, \\/, -o}; for -o with the premise |- ~~theta)",
        note="the -o case needs theta finite: at theta = inf and "
             "0 < phi < psi the two sides are inf and 0")
    add("P5", [("phi", F)],
        lambda s: ((), _J((), iff(Mult(ONE, s["phi"]), s["phi"]))),
        "|- I.phi o-o phi")
    add("P6", [("phi", F)],
        lambda s: ((), _J((), _mul_const(Fraction(0), s["phi"]))),
        "|- 0.phi")
    add("P7_fwd", [("phi", F), ("psi", F)],
        lambda s: ((_J((), Mult(s["phi"], s["psi"])),),
                   _J((), disj(s["phi"], s["psi"]))),
        "|- phi.psi => |- phi \\/ psi")
    add("P7_bwd", [("phi", F), ("psi", F)],
        lambda s: ((_J((), disj(s["phi"], s["psi"])),),
                   _J((), Mult(s["phi"], s["psi"]))),
        "|- phi \\/ psi => |- phi.psi")
    add("P8", [("phi", F), ("psi", F)],
        lambda s: ((_J([Mult(s["phi"], s["psi"])], ONE),),
                   _J([Mult(s["phi"], BOT)], BOT)),
        "phi.psi |- I => phi.bot |- bot")

    def build_p9(s):
        op = s["op"]
        if op not in P9_OPS:
            raise IllegalParameterError(f"P9 op must be one of {P9_OPS}, got {op!r}")
        r, sc = Fraction(s["r"]), Fraction(s["s"])
        phi = s["phi"]
        rp = _mul_const(r, phi)
        sp = _mul_const(sc, phi)
        premises = ()
        if op == "plus":
            combined, rhs = r + sc, Tensor(rp, sp)
        elif op == "monus":
            combined, rhs = max(r - sc, Fraction(0)), Lollipop(sp, rp)
            premises = (_J((), neg(neg(phi))),)
        elif op == "max":
            combined, rhs = max(r, sc), conj(rp, sp)
        else:
            combined, rhs = min(r, sc), disj(rp, sp)
        return premises, _J((), iff(_mul_const(combined, phi), rhs))

    add("P9", [("op", O), ("r", S), ("s", S), ("phi", F)], build_p9,
        "|- (r <.> s).phi o-o r.phi <> s.phi   "
        "((<.>, <>) in {(+, (+)), (monus, -o flipped), (max, /\\), (min, \\/)}; "
        "the monus case carries the premise |- ~~phi)",
        note="the monus case needs phi finite: at phi = inf and r > s > 0 "
             "the two sides are inf and 0")

    return rules


RULES: Dict[str, Rule] = _build_catalog()

#: Audit/report order: the catalog in its displayed order.
RULE_ORDER: Tuple[str, ...] = tuple(RULES)


def instantiate_rule(rule, subst: Mapping) -> Tuple[Tuple[Judgement, ...], Judgement]:
    """Premises and conclusion of ``rule`` under a complete substitution.

    ``rule`` may be a :class:`Rule` or a catalog name.
    """
    if isinstance(rule, str):
        try:
            rule = RULES[rule]
        except KeyError:
            raise UnknownRuleError(rule) from None
    return rule.instantiate(subst)
