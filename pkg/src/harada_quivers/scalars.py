"""Exact scalar fields: the rationals (via ``fractions.Fraction``) and GF(p).

Every linear-algebra routine in the package is written against a
:class:`Field` object, so switching a session from ``Q`` to ``GF(p)`` is a
matter of passing a different field.
"""
from __future__ import annotations

import functools
import re
from fractions import Fraction


class FieldMismatchError(TypeError):
    """Raised when scalars from two different fields are combined."""


class GFElement:
    """A residue modulo a prime, always stored in the range ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise FieldMismatchError(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        return GFElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return GFElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return GFElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return GFElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> GFElement:
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return GFElement(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * GFElement(self._coerce(other), self.p).inverse()

    def __rtruediv__(self, other):
        return GFElement(self._coerce(other), self.p) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GFElement({self.value}, {self.p})"

    def __str__(self):
        return f"{self.value} mod {self.p}"


class Field:
    """Interface shared by :data:`QQ` and :class:`PrimeField`."""

    name: str
    characteristic: int

    def __call__(self, x):  # pragma: no cover - overridden
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_zero(self, x) -> bool:
        return not x

    def inverse(self, x):
        return self.one / x

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return self.name


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_RESIDUE_RE = re.compile(r"^\s*([+-]?\d+)\s+mod\s+(\d+)\s*$")


class Rationals(Field):
    name = "Q"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, GFElement):
            raise FieldMismatchError("cannot move a GF(p) residue into Q")
        if isinstance(x, float):
            raise TypeError("floating point values are not exact scalars")
        return Fraction(x)

    def parse(self, text: str) -> Fraction:
        m = _RATIONAL_RE.match(text)
        if not m:
            if _RESIDUE_RE.match(text):
                raise ValueError(f"'{text.strip()}' is a prime-field literal but the field is Q")
            raise ValueError(f"not a rational literal: {text!r}")
        num, den = m.group(1), m.group(2)
        if den is not None and int(den) == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den) if den else 1)

    def format(self, x: Fraction) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> GFElement:
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise FieldMismatchError(f"GF({x.p}) element in {self.name}")
            return x
        if isinstance(x, Fraction):
            return GFElement(x.numerator, self.p) / GFElement(x.denominator, self.p)
        if isinstance(x, int) and not isinstance(x, bool):
            return GFElement(x, self.p)
        raise TypeError(f"cannot convert {x!r} to {self.name}")

    def parse(self, text: str) -> GFElement:
        m = _RESIDUE_RE.match(text)
        if m:
            if int(m.group(2)) != self.p:
                raise FieldMismatchError(f"literal {text.strip()!r} is not in {self.name}")
            return GFElement(int(m.group(1)), self.p)
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ValueError(f"not a field literal: {text!r}")
        num = GFElement(int(m.group(1)), self.p)
        return num / GFElement(int(m.group(2)), self.p) if m.group(2) else num

    def format(self, x: GFElement) -> str:
        return f"{self(x).value} mod {self.p}"

    def contains(self, x) -> bool:
        return isinstance(x, GFElement) and x.p == self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = Rationals()


@functools.lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str) -> Field:
    """Parse a command-line field selector: ``q`` or ``gf:<p>``."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    if s.startswith("gf:"):
        return GF(int(s[3:]))
    raise ValueError(f"unknown field {spec!r}; use 'q' or 'gf:<p>'")


def field_of(x) -> Field:
    if isinstance(x, GFElement):
        return GF(x.p)
    return QQ
