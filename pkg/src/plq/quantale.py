"""Exact arithmetic on the extended nonnegative rationals.

The truth values of the logic live in ``[0, oo]``: nonnegative rationals
plus a single absorbing infinity (the Lawvere quantale carrier, written
there with the order reversed).  Everything here is exact ``Fraction``
arithmetic; there is no floating point anywhere in the package.

Conventions, fixed once for the whole package:

* addition: ``inf`` absorbs;
* multiplication: ``0 * inf == inf * 0 == 0``, otherwise ``inf`` absorbs;
* truncated subtraction ``a.truncsub(b)``: ``0`` when ``a <= b`` (so
  ``inf - inf == 0``), ``a - b`` for finite ``a > b``, and ``inf`` when
  ``a`` is infinite and ``b`` is not;
* comparisons are total, with ``inf`` strictly above every finite value.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

__all__ = [
    "Ext",
    "INF",
    "EXT_ZERO",
    "EXT_ONE",
    "ext_add",
    "ext_mul",
    "ext_truncsub",
    "ext_min",
    "ext_max",
    "parse_rational",
    "format_rational",
    "parse_ext",
]

RatLike = Union[int, str, Fraction]

_INF_SENTINEL = object()


def parse_rational(text: str) -> Fraction:
    """Parse the literal syntax ``n`` or ``n/m`` (decimal digits only)."""
    body = text.strip()
    num, slash, den = body.partition("/")
    if not num.isdigit() or (slash and not den.isdigit()):
        raise ValueError(f"not a rational literal: {text!r}")
    if slash:
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_rational(value: Fraction) -> str:
    """Inverse of :func:`parse_rational` for nonnegative values."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Ext:
    """A value in ``[0, oo]``: a nonnegative ``Fraction`` or infinity.

    Instances are immutable and hashable; ``Ext(x) == Ext(y)`` iff the
    values coincide.  ``+`` and ``*`` follow the quantale conventions in
    the module docstring; ``min``/``max`` work through the total order.
    """

    __slots__ = ("num",)

    num: Optional[Fraction]  # None encodes infinity

    def __init__(self, value: Union[RatLike, None, object] = 0):
        if value is _INF_SENTINEL or value is None:
            object.__setattr__(self, "num", None)
            return
        if isinstance(value, Ext):
            object.__setattr__(self, "num", value.num)
            return
        if isinstance(value, str):
            value = parse_rational(value)
        num = Fraction(value)
        if num < 0:
            raise ValueError(f"extended value must be nonnegative: {num}")
        object.__setattr__(self, "num", num)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Ext values are immutable")

    @property
    def is_finite(self) -> bool:
        return self.num is not None

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def __add__(self, other: "Ext") -> "Ext":
        if self.num is None or other.num is None:
            return INF
        return Ext(self.num + other.num)

    def __mul__(self, other: "Ext") -> "Ext":
        if self.num == 0 or other.num == 0:
            return EXT_ZERO
        if self.num is None or other.num is None:
            return INF
        return Ext(self.num * other.num)

    def truncsub(self, other: "Ext") -> "Ext":
        """Truncated subtraction ``self - other`` (never negative)."""
        if self <= other:
            return EXT_ZERO
        if self.num is None:
            return INF
        # other < self and self finite, so other is finite too
        return Ext(self.num - other.num)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ext) and self.num == other.num

    def __lt__(self, other: "Ext") -> bool:
        if self.num is None:
            return False
        if other.num is None:
            return True
        return self.num < other.num

    def __le__(self, other: "Ext") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Ext") -> bool:
        return not self <= other

    def __ge__(self, other: "Ext") -> bool:
        return not self < other

    def __hash__(self) -> int:
        return hash(("Ext", self.num))

    def __str__(self) -> str:
        return "inf" if self.num is None else format_rational(self.num)

    def __repr__(self) -> str:
        return f"Ext({str(self)!r})"


INF = Ext(_INF_SENTINEL)
EXT_ZERO = Ext(0)
EXT_ONE = Ext(1)


def parse_ext(text: str) -> Ext:
    """Parse ``n``, ``n/m`` or ``inf`` (the model-file value syntax)."""
    if text.strip() == "inf":
        return INF
    return Ext(parse_rational(text))


def ext_add(a: Ext, b: Ext) -> Ext:
    return a + b


def ext_mul(a: Ext, b: Ext) -> Ext:
    return a * b


def ext_truncsub(a: Ext, b: Ext) -> Ext:
    return a.truncsub(b)


def ext_min(a: Ext, b: Ext) -> Ext:
    return a if a <= b else b


def ext_max(a: Ext, b: Ext) -> Ext:
    return b if a <= b else a
