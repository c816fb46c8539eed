"""Randomized soundness auditing of the rule catalog.

For every rule (parameterized families once per parameter choice) the
auditor draws random instantiations (formula depth <= 3, at most 3
letters, scalars from {0, 1/2, 1, 2, 3}) and, for each instantiation,
evaluates premises and conclusion under random general-profile models
(zeros and infinities included).  An instance+model where every premise
is satisfied but the conclusion is not is reported as a violation; a
sound rule reports none.

Audits are deterministic: each (rule, instance) pair derives its own
seed from the top-level seed, so the work could be sharded without
changing the findings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .randgen import DEFAULT_SCALARS, random_formula
from .rules import P4_OPS, P9_OPS, RULE_ORDER, RULES, Rule
from .semantics import Model, sample_model, satisfies
from .syntax import Judgement, judgement_letters

__all__ = ["Violation", "AuditEntry", "AuditReport", "audit_rule", "audit_rules",
           "lolli2_without_side_premise"]

_AUDIT_LETTERS = ("p", "q", "r")


@dataclass(frozen=True)
class Violation:
    rule: str
    instance: int
    premises: Tuple[Judgement, ...]
    conclusion: Judgement
    model: Model


@dataclass
class AuditEntry:
    rule: str
    instances: int = 0
    models: int = 0
    premise_hits: int = 0  # models where all premises held
    violations: List[Violation] = field(default_factory=list)


@dataclass
class AuditReport:
    entries: Dict[str, AuditEntry] = field(default_factory=dict)

    @property
    def violations(self) -> List[Violation]:
        return [v for e in self.entries.values() for v in e.violations]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        lines = []
        for name, e in self.entries.items():
            status = "ok" if not e.violations else f"{len(e.violations)} VIOLATIONS"
            lines.append(
                f"{name:18s} instances={e.instances:4d} models={e.models:6d} "
                f"premises-held={e.premise_hits:6d} {status}")
        total = len(self.violations)
        lines.append(f"total violations: {total}")
        return "\n".join(lines)


def _random_subst(rule: Rule, rng: random.Random, scalars, depth: int,
                  fixed_op: Optional[str]) -> dict:
    subst: dict = {}
    for name, kind in rule.params:
        if kind == "formula":
            subst[name] = random_formula(rng, _AUDIT_LETTERS, depth, scalars)
        elif kind == "context":
            subst[name] = tuple(
                random_formula(rng, _AUDIT_LETTERS, depth, scalars)
                for _ in range(rng.randint(0, 2)))
        elif kind == "scalar":
            subst[name] = rng.choice(list(scalars))
        elif kind == "op":
            ops = P4_OPS if rule.name.startswith("P4") else P9_OPS
            subst[name] = fixed_op if fixed_op is not None else rng.choice(list(ops))
    return subst


def audit_rule(rule: Rule, samples: int = 100, models_per_instance: int = 50,
               seed: int = 0, scalars: Sequence[Fraction] = DEFAULT_SCALARS,
               depth: int = 3, fixed_op: Optional[str] = None,
               label: Optional[str] = None) -> AuditEntry:
    """Audit a single rule schema; see the module docstring."""
    entry = AuditEntry(label or rule.name)
    for instance in range(samples):
        rng = random.Random(f"{seed}:{entry.rule}:{instance}")
        subst = _random_subst(rule, rng, scalars, depth, fixed_op)
        premises, conclusion = rule.instantiate(subst)
        letters = judgement_letters((*premises, conclusion))
        entry.instances += 1
        for _ in range(models_per_instance):
            model = sample_model(letters, "general", rng=rng)
            entry.models += 1
            if all(satisfies(model, p) for p in premises):
                entry.premise_hits += 1
                if not satisfies(model, conclusion):
                    entry.violations.append(
                        Violation(entry.rule, instance, premises, conclusion, model))
    return entry


def audit_rules(samples: int = 100, models_per_instance: int = 50, seed: int = 0,
                rules: Optional[Sequence[str]] = None,
                scalars: Sequence[Fraction] = DEFAULT_SCALARS,
                depth: int = 3) -> AuditReport:
    """Audit the whole catalog; parameter choices are audited separately."""
    report = AuditReport()
    names = tuple(rules) if rules is not None else RULE_ORDER
    for name in names:
        rule = RULES[name]
        param_ops: Tuple[Optional[str], ...] = (None,)
        if name == "P4":
            param_ops = P4_OPS
        elif name == "P9":
            param_ops = P9_OPS
        for op in param_ops:
            label = name if op is None else f"{name}[{op}]"
            entry = audit_rule(rule, samples, models_per_instance, seed,
                               scalars, depth, fixed_op=op, label=label)
            report.entries[label] = entry
    return report


def lolli2_without_side_premise() -> Rule:
    """lolli2 with its finiteness premise dropped; unsound, for control runs."""
    base = RULES["lolli2"]

    def build(s):
        premises, conclusion = base.build(s)
        return premises[:1], conclusion

    return Rule("lolli2_no_side", base.params, build,
                schema="Gamma, theta |- phi (+) psi => Gamma, phi -o theta |- psi",
                note="control variant: drops |- ~~phi, so it is unsound")
