"""Verification of cone-form nonnegativity certificates.

For hypothesis polynomial pairs ``(t_i, u_i)`` (read ``t_i - u_i >= 0``)
over variables ``x_1..x_m`` (read ``x_j >= 0``) and a goal pair
``(t, u)``, a certificate exhibits polynomials from the cone generated by
the hypothesis differences and the variables: each cone polynomial is a
sum of terms ``sigma_alpha * prod_i (t_i - u_i)^alpha_i * prod_j
x_j^alpha_{n+j}`` where ``alpha`` ranges over bit vectors of length
``n + m`` and ``sigma_alpha`` is a positively weighted sum of squares.

Variants (``s`` is the certificate's integer exponent; ``h`` and ``h'``
are the two cone polynomials):

* ``null``:  verify ``h * t == h * u + (t - u)^(2s) + h'`` with ``s >= 0``
  (``s = 0`` contributes the constant 1);
* ``null2``: verify ``h * t == h * u + 1 + h'``;
* ``weak``:  experimental; verify ``h + (u - t)^(2s) == 0`` with
  ``s >= 1`` and ``h'`` required empty.

``Valid`` means the polynomial identity holds exactly (coefficientwise)
and all structural invariants pass; on the hypothesis region a valid
``null``/``null2`` certificate forces ``t - u >= 0``.

Certificate file format (``#`` comments)::

    variant: null | null2 | weak
    s: <integer>
    h1:
    alpha=<bits>; squares=(w1, poly1)(w2, poly2)...
    ...
    h2:
    ...

``alpha`` has one bit per hypothesis followed by one bit per variable;
weights are positive rationals; polynomials use the shared rendering
(``c*x^e*y + ...``) over the system's variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .poly import Poly, parse_poly, poly_eq
from .quantale import format_rational

__all__ = [
    "ConeTerm",
    "Certificate",
    "CertificateError",
    "ArityMismatchError",
    "NonPositiveWeightError",
    "Verdict",
    "cone_polynomial",
    "check_certificate",
    "parse_certificate",
    "format_certificate",
]

VARIANTS = ("null", "null2", "weak")


class CertificateError(ValueError):
    pass


class ArityMismatchError(CertificateError):
    pass


class NonPositiveWeightError(CertificateError):
    pass


@dataclass(frozen=True)
class ConeTerm:
    alpha: Tuple[int, ...]  # one bit per hypothesis, then one per variable
    squares: Tuple[Tuple[Fraction, Poly], ...]  # positively weighted squares


@dataclass(frozen=True)
class Certificate:
    variant: str
    s: int
    h1: Tuple[ConeTerm, ...]
    h2: Tuple[ConeTerm, ...] = ()

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise CertificateError(f"unknown variant {self.variant!r}")


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


def cone_polynomial(terms: Sequence[ConeTerm], hyp_diffs: Sequence[Poly],
                    variables: Sequence[str]) -> Poly:
    """Sum of ``(sum w*base^2) * prod diffs^alpha * prod vars^alpha``."""
    vars = tuple(variables)
    n, m = len(hyp_diffs), len(vars)
    total = Poly.zero(vars)
    for term in terms:
        if len(term.alpha) != n + m:
            raise ArityMismatchError(
                f"alpha length {len(term.alpha)} != hypotheses + variables = {n + m}")
        sigma = Poly.zero(vars)
        for weight, base in term.squares:
            if weight <= 0:
                raise NonPositiveWeightError(f"square weight {weight} is not positive")
            base = base.with_vars(vars)
            sigma = sigma + (base * base).scale(weight)
        product = sigma
        for i, bit in enumerate(term.alpha[:n]):
            if bit:
                product = product * hyp_diffs[i].with_vars(vars)
        for j, bit in enumerate(term.alpha[n:]):
            if bit:
                product = product * Poly.variable(vars, vars[j])
        total = total + product
    return total


def check_certificate(hyps: Sequence[Tuple[Poly, Poly]], goal: Tuple[Poly, Poly],
                      cert: Certificate,
                      variables: Optional[Sequence[str]] = None) -> Verdict:
    """Verify the certificate's polynomial identity exactly."""
    if variables is None:
        seen: dict = {}
        for t, u in list(hyps) + [goal]:
            for v in t.vars + u.vars:
                seen.setdefault(v, True)
        variables = tuple(seen)
    vars = tuple(variables)
    diffs = [t.with_vars(vars) - u.with_vars(vars) for t, u in hyps]
    t, u = goal[0].with_vars(vars), goal[1].with_vars(vars)
    h1 = cone_polynomial(cert.h1, diffs, vars)
    h2 = cone_polynomial(cert.h2, diffs, vars)

    if cert.variant == "null":
        if cert.s < 0:
            return Verdict(False, "null variant needs s >= 0 (negative s is null2)")
        lhs = h1 * t
        rhs = h1 * u + (t - u) ** (2 * cert.s) + h2
        if poly_eq(lhs, rhs):
            return Verdict(True)
        return Verdict(False,
                       f"identity fails: {lhs.render()} != {rhs.render()}")
    if cert.variant == "null2":
        lhs = h1 * t
        rhs = h1 * u + Poly.constant(vars, 1) + h2
        if poly_eq(lhs, rhs):
            return Verdict(True)
        return Verdict(False,
                       f"identity fails: {lhs.render()} != {rhs.render()}")
    # weak (experimental): h + (u - t)^(2s) == 0
    if cert.s < 1:
        return Verdict(False, "weak variant needs s >= 1")
    if cert.h2:
        return Verdict(False, "weak variant uses a single cone polynomial")
    lhs = h1 + (u - t) ** (2 * cert.s)
    if lhs.is_zero:
        return Verdict(True)
    return Verdict(False, f"identity fails: {lhs.render()} != 0")


# --------------------------------------------------------------------------
# Certificate files

_SQUARES_RE = re.compile(r"\(\s*([^,()]+)\s*,\s*([^()]*)\s*\)")


def parse_certificate(text: str, variables: Sequence[str]) -> Certificate:
    vars = tuple(variables)
    variant: Optional[str] = None
    s: Optional[int] = None
    sections = {"h1": [], "h2": []}  # type: dict
    current: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("variant:"):
            variant = line.split(":", 1)[1].strip()
        elif line.startswith("s:"):
            s = int(line.split(":", 1)[1].strip())
        elif line in ("h1:", "h2:"):
            current = line[:-1]
        elif line.startswith("alpha="):
            if current is None:
                raise CertificateError(f"line {lineno}: cone term outside h1:/h2:")
            alpha_text, semi, squares_text = line.partition(";")
            bits = alpha_text.split("=", 1)[1].strip()
            if not semi or not re.fullmatch(r"[01]*", bits):
                raise CertificateError(f"line {lineno}: bad cone term {raw!r}")
            squares_text = squares_text.split("=", 1)[1] if "=" in squares_text \
                else squares_text
            squares = []
            for w_text, p_text in _SQUARES_RE.findall(squares_text):
                weight = Fraction(w_text.strip())
                squares.append((weight, parse_poly(p_text.strip() or "0", vars)))
            sections[current].append(
                ConeTerm(tuple(int(b) for b in bits), tuple(squares)))
        else:
            raise CertificateError(f"line {lineno}: cannot parse {raw!r}")
    if variant is None or s is None:
        raise CertificateError("certificate needs 'variant:' and 's:' lines")
    return Certificate(variant, s, tuple(sections["h1"]), tuple(sections["h2"]))


def format_certificate(cert: Certificate) -> str:
    lines = [f"variant: {cert.variant}", f"s: {cert.s}"]
    for name, terms in (("h1", cert.h1), ("h2", cert.h2)):
        lines.append(f"{name}:")
        for term in terms:
            squares = "".join(
                f"({format_rational(w)}, {p.render()})" for w, p in term.squares)
            lines.append(
                "alpha=" + "".join(str(b) for b in term.alpha) + "; squares=" + squares)
    return "\n".join(lines) + "\n"
