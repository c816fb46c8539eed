"""Proof scripts and the proof checker.

A proof script is a numbered sequence of lines, each carrying a concrete
judgement and a justification: either ``hyp`` (a syntactic member of the
supplied hypothesis set) or a rule name with premise line references and
an explicit substitution.  The checker never searches for matches: a
line checks iff its rule instantiates, under the given substitution, to
exactly the line's judgement with premises exactly equal to the
referenced lines.  All matching is syntactic on primitive ASTs; no
normalization is applied anywhere.

Proof file format (one line per step, ``#`` comments)::

    <n>: <judgement> ; hyp
    <n>: <judgement> ; <rule-name> [from n1, n2] [with x := v, y := w, ...]

Bindings: formula metavariables take a formula, ``Gamma``/``Delta`` take
a comma-separated formula list (possibly empty), ``r``/``s`` take a
rational literal, ``op`` takes a parameter name.  A binding's value runs
until the next ``<metavariable> :=`` or the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .quantale import parse_rational
from .rules import (
    RULES,
    IllegalParameterError,
    MissingBindingError,
    Rule,
    UnknownRuleError,
    instantiate_rule,
)
from .syntax import Judgement, ParseError, format_judgement, parse_formula, parse_judgement

__all__ = [
    "ProofLine",
    "ProofScript",
    "ProofCheckError",
    "BadPremiseRefError",
    "PremiseMismatchError",
    "ConclusionMismatchError",
    "ProofSyntaxError",
    "check_step",
    "check_proof",
    "parse_proof",
    "format_proof",
]


@dataclass(frozen=True)
class ProofLine:
    number: int
    judgement: Judgement
    rule: Optional[str]  # None encodes a hypothesis line
    premises: Tuple[int, ...] = ()
    subst: Mapping = field(default_factory=dict)

    @property
    def is_hypothesis(self) -> bool:
        return self.rule is None


@dataclass(frozen=True)
class ProofScript:
    lines: Tuple[ProofLine, ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))


class ProofCheckError(ValueError):
    """A proof line failed to check; carries the line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class BadPremiseRefError(ProofCheckError):
    pass


class PremiseMismatchError(ProofCheckError):
    pass


class ConclusionMismatchError(ProofCheckError):
    pass


class ProofSyntaxError(ValueError):
    pass


def check_step(script: ProofScript, index: int, hypotheses: Sequence[Judgement]) -> None:
    """Check line ``index`` (0-based) against the earlier lines.

    Raises a :class:`ProofCheckError` subclass on failure; returns
    ``None`` when the line is justified.
    """
    line = script.lines[index]
    if line.is_hypothesis:
        if any(line.judgement == h for h in hypotheses):
            return
        raise ProofCheckError(
            line.number,
            f"judgement {format_judgement(line.judgement)} is not a hypothesis")
    try:
        rule = RULES[line.rule]
    except KeyError:
        raise UnknownRuleError(line.rule) from None
    try:
        premises, conclusion = instantiate_rule(rule, line.subst)
    except (MissingBindingError, IllegalParameterError) as exc:
        raise ProofCheckError(line.number, str(exc)) from exc
    if conclusion != line.judgement:
        raise ConclusionMismatchError(
            line.number,
            f"rule {rule.name} concludes {format_judgement(conclusion)}, "
            f"line states {format_judgement(line.judgement)}")
    if len(line.premises) != len(premises):
        raise BadPremiseRefError(
            line.number,
            f"rule {rule.name} has {len(premises)} premise(s), "
            f"{len(line.premises)} referenced")
    for ref, wanted in zip(line.premises, premises):
        pos = ref - 1
        if not (0 <= pos < index) or script.lines[pos].number != ref:
            raise BadPremiseRefError(
                line.number, f"premise reference {ref} is not an earlier line")
        got = script.lines[pos].judgement
        if got != wanted:
            raise PremiseMismatchError(
                line.number,
                f"premise {ref} is {format_judgement(got)}, "
                f"rule {rule.name} needs {format_judgement(wanted)}")


def check_proof(script: ProofScript, hypotheses: Sequence[Judgement] = ()) -> None:
    """Check the whole script; raises on the first failing line."""
    for i, line in enumerate(script.lines):
        if line.number != i + 1:
            raise ProofCheckError(line.number, f"expected line number {i + 1}")
        check_step(script, i, hypotheses)


# --------------------------------------------------------------------------
# Proof files

_META_NAMES = ("Gamma", "Delta", "phi", "psi", "theta", "op", "r", "s")
_BINDING_RE = re.compile(
    r"\b(" + "|".join(_META_NAMES) + r")\s*:=")
_KINDS = {name: kind for rule in RULES.values() for name, kind in rule.params}


def _parse_bindings(rule: Rule, text: str, lineno: int) -> Dict:
    matches = list(_BINDING_RE.finditer(text))
    if not matches:
        raise ProofSyntaxError(f"line {lineno}: empty 'with' clause")
    head = text[: matches[0].start()].strip().rstrip(",").strip()
    if head:
        raise ProofSyntaxError(f"line {lineno}: stray text {head!r} before bindings")
    kinds = dict(rule.params)
    subst: Dict = {}
    for k, m in enumerate(matches):
        name = m.group(1)
        end = matches[k + 1].start() if k + 1 < len(matches) else len(text)
        value = text[m.end(): end].strip().rstrip(",").strip()
        kind = kinds.get(name, _KINDS.get(name, "formula"))
        try:
            if kind == "context":
                items = [v for v in _split_commas(value) if v.strip()]
                subst[name] = tuple(parse_formula(v) for v in items)
            elif kind == "scalar":
                subst[name] = parse_rational(value)
            elif kind == "op":
                subst[name] = value
            else:
                subst[name] = parse_formula(value)
        except (ParseError, ValueError) as exc:
            raise ProofSyntaxError(
                f"line {lineno}: bad value for {name!r}: {exc}") from None
    return subst


def _split_commas(text: str):
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield text[start:i]
            start = i + 1
    yield text[start:]


def parse_proof(text: str) -> ProofScript:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        number_text, colon, rest = body.partition(":")
        if not colon or not number_text.strip().isdigit():
            raise ProofSyntaxError(f"line {lineno}: expected '<n>: ...'")
        number = int(number_text)
        judgement_text, semi, just = rest.partition(";")
        if not semi:
            raise ProofSyntaxError(f"line {lineno}: missing '; <justification>'")
        try:
            judgement = parse_judgement(judgement_text)
        except ParseError as exc:
            raise ProofSyntaxError(f"line {lineno}: {exc}") from None
        just = just.strip()
        if just == "hyp":
            lines.append(ProofLine(number, judgement, None))
            continue
        m = re.match(
            r"(?P<rule>[A-Za-z0-9_]+)"
            r"(?:\s+from\s+(?P<refs>\d+(?:\s*,\s*\d+)*))?"
            r"(?:\s+with\s+(?P<with>.*))?\s*\Z",
            just,
        )
        if m is None:
            raise ProofSyntaxError(f"line {lineno}: bad justification {just!r}")
        rule_name = m.group("rule")
        rule = RULES.get(rule_name)
        if rule is None:
            raise UnknownRuleError(rule_name)
        refs = tuple(int(x) for x in re.split(r"\s*,\s*", m.group("refs"))) \
            if m.group("refs") else ()
        subst = _parse_bindings(rule, m.group("with"), lineno) if m.group("with") else {}
        for name, kind in rule.params:
            if kind == "context" and name not in subst:
                subst[name] = ()  # omitted contexts default to empty
        lines.append(ProofLine(number, judgement, rule_name, refs, subst))
    return ProofScript(tuple(lines))


def format_proof(script: ProofScript) -> str:
    from .quantale import format_rational
    from .syntax import format_formula

    out = []
    for line in script.lines:
        if line.is_hypothesis:
            out.append(f"{line.number}: {format_judgement(line.judgement)} ; hyp")
            continue
        parts = [f"{line.number}: {format_judgement(line.judgement)} ; {line.rule}"]
        if line.premises:
            parts.append("from " + ", ".join(str(r) for r in line.premises))
        if line.subst:
            bindings = []
            for name, kind in RULES[line.rule].params:
                value = line.subst[name]
                if kind == "context":
                    bindings.append(
                        f"{name} := " + ", ".join(format_formula(v) for v in value))
                elif kind == "scalar":
                    bindings.append(f"{name} := {format_rational(value)}")
                elif kind == "op":
                    bindings.append(f"{name} := {value}")
                else:
                    bindings.append(f"{name} := {format_formula(value)}")
            parts.append("with " + ", ".join(bindings))
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"
