"""
Exact arithmetic in the coefficient field Q(i, sqrt 2).

An element is stored as four rationals (a, b, c, d) meaning
``a + b*i + c*r2 + d*i*r2`` with ``r2 = sqrt(2)``. Components are sympy ``MPQ``
values (gmpy2 when available, pure Python otherwise); nothing is ever
approximated.
"""
from __future__ import annotations

import re
from typing import Union

from sympy.external.gmpy import MPQ

from core.errors import DomainError

Scalar = Union["Coefficient", int, "MPQ"]

# --- Helper Functions ---

_ZERO_Q = MPQ(0)


def to_mpq(value) -> MPQ:
    """Converts an int, MPQ or ``"p/q"`` string to an MPQ."""
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            den_i = int(den)
            if den_i == 0:
                raise DomainError(f"zero denominator in {value!r}")
            return MPQ(int(num), den_i)
        return MPQ(int(text))
    return MPQ(value)


def fstr(x: MPQ) -> str:
    """Reduced fraction text: ``3/2``, ``-1``."""
    num, den = int(x.numerator), int(x.denominator)
    if den == 1:
        return str(num)
    return f"{num}/{den}"


class Coefficient:
    """An immutable element of Q(i, sqrt 2)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "a", to_mpq(a))
        object.__setattr__(self, "b", to_mpq(b))
        object.__setattr__(self, "c", to_mpq(c))
        object.__setattr__(self, "d", to_mpq(d))

    def __setattr__(self, name, value):
        raise AttributeError("Coefficient is immutable")

    @classmethod
    def _raw(cls, a: MPQ, b: MPQ, c: MPQ, d: MPQ) -> "Coefficient":
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "c", c)
        object.__setattr__(obj, "d", d)
        return obj

    @classmethod
    def coerce(cls, value: Scalar) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        return cls._raw(MPQ(value), _ZERO_Q, _ZERO_Q, _ZERO_Q)

    # --- Queries ---

    def components(self) -> tuple[MPQ, MPQ, MPQ, MPQ]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def rational(self) -> MPQ:
        if not self.is_rational():
            raise DomainError(f"{self} is not rational")
        return self.a

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Coefficient):
            return (self.a == other.a and self.b == other.b
                    and self.c == other.c and self.d == other.d)
        if isinstance(other, int) or isinstance(other, type(_ZERO_Q)):
            return self.a == other and not (self.b or self.c or self.d)
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d))

    # --- Field operations ---

    def __add__(self, other: Scalar) -> "Coefficient":
        o = Coefficient.coerce(other)
        return Coefficient._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "Coefficient":
        o = Coefficient.coerce(other)
        return Coefficient._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other: Scalar) -> "Coefficient":
        return Coefficient.coerce(other) - self

    def __neg__(self) -> "Coefficient":
        return Coefficient._raw(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other: Scalar) -> "Coefficient":
        o = Coefficient.coerce(other)
        if o.is_rational():
            q = o.a
            return Coefficient._raw(self.a * q, self.b * q, self.c * q, self.d * q)
        if self.is_rational():
            q = self.a
            return Coefficient._raw(o.a * q, o.b * q, o.c * q, o.d * q)
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = o.a, o.b, o.c, o.d
        # i^2 = -1, r2^2 = 2, (i*r2)^2 = -2
        return Coefficient._raw(
            a * e - b * f + 2 * c * g - 2 * d * h,
            a * f + b * e + 2 * c * h + 2 * d * g,
            a * g + c * e - b * h - d * f,
            a * h + d * e + b * g + c * f,
        )

    __rmul__ = __mul__

    def inv(self) -> "Coefficient":
        """Multiplicative inverse through the norm down to Q(i), then to Q."""
        if self.is_zero():
            raise DomainError("inverse of zero in Q(i, sqrt 2)")
        if self.is_rational():
            return Coefficient._raw(1 / self.a, _ZERO_Q, _ZERO_Q, _ZERO_Q)
        a, b, c, d = self.a, self.b, self.c, self.d
        # x = P + Q*r2 with P = a + b*i, Q = c + d*i; x * (P - Q*r2) = P^2 - 2 Q^2
        u = a * a - b * b - 2 * (c * c - d * d)
        v = 2 * a * b - 4 * c * d
        den = u * u + v * v
        norm_inv = Coefficient._raw(u / den, -v / den, _ZERO_Q, _ZERO_Q)
        return Coefficient._raw(a, b, -c, -d) * norm_inv

    def __truediv__(self, other: Scalar) -> "Coefficient":
        return self * Coefficient.coerce(other).inv()

    def __rtruediv__(self, other: Scalar) -> "Coefficient":
        return Coefficient.coerce(other) * self.inv()

    def conjugate(self) -> "Coefficient":
        """Complex conjugation (i -> -i)."""
        return Coefficient._raw(self.a, -self.b, self.c, -self.d)

    # --- Text ---

    def __str__(self) -> str:
        parts = []
        for value, unit in ((self.a, ""), (self.b, "i"), (self.c, "r2"), (self.d, "i*r2")):
            if not value:
                continue
            sign = "-" if value < 0 else "+"
            mag = -value if value < 0 else value
            if unit and mag == 1:
                body = unit
            elif unit:
                body = f"{fstr(mag)}*{unit}"
            else:
                body = fstr(mag)
            parts.append((sign, body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Coefficient({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Coefficient":
        """Inverse of ``str``; also accepts plain integers and fractions."""
        compact = re.sub(r"\s+", "", text)
        if not compact:
            raise DomainError("empty coefficient text")
        terms = re.findall(r"[+-]?[^+-]+", compact)
        if "".join(terms) != compact:
            raise DomainError(f"malformed coefficient {text!r}")
        comps = [_ZERO_Q, _ZERO_Q, _ZERO_Q, _ZERO_Q]
        for term in terms:
            sign = -1 if term.startswith("-") else 1
            body = term.lstrip("+-")
            if body.endswith("i*r2"):
                slot, mag = 3, body[:-4]
            elif body.endswith("r2"):
                slot, mag = 2, body[:-2]
            elif body.endswith("i"):
                slot, mag = 1, body[:-1]
            else:
                slot, mag = 0, body
            mag = mag.rstrip("*")
            if not re.fullmatch(r"(\d+(/\d+)?)?", mag) or (slot == 0 and not mag):
                raise DomainError(f"malformed coefficient term {term!r}")
            value = to_mpq(mag) if mag else MPQ(1)
            comps[slot] = comps[slot] + sign * value
        return cls._raw(*comps)


# --- Constants ---

ZERO = Coefficient()
ONE = Coefficient(1)
I = Coefficient(0, 1)
SQRT2 = Coefficient(0, 0, 1)
HALF = Coefficient(MPQ(1, 2))
INV_SQRT2 = Coefficient(0, 0, MPQ(1, 2))


# --- Named operations ---

def add(x: Scalar, y: Scalar) -> Coefficient:
    return Coefficient.coerce(x) + y


def mul(x: Scalar, y: Scalar) -> Coefficient:
    return Coefficient.coerce(x) * y


def neg(x: Scalar) -> Coefficient:
    return -Coefficient.coerce(x)


def inv(x: Scalar) -> Coefficient:
    return Coefficient.coerce(x).inv()
