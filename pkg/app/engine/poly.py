"""
Discrete Clifford-valued polynomials.

A term is xi_1^{a_1} ... xi_m^{a_m} [1] B with a right blade B. The coordinate
variables anticommute for distinct indices, so moving xi_j or d_j into
canonical position costs (-1)^{a_1 + ... + a_{j-1}}. The derivation d_j acts
by the closed form that follows from d_j xi_j - xi_j d_j = 1 and d_j [1] = 0.
"""
from __future__ import annotations

import logging
import re
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from core.errors import DomainError
from engine.clifford import (
    MV_ONE,
    Multivector,
    blade_mul,
    blade_str,
    parse_blade,
    passing_sign,
    split_terms,
)
from engine.scalar_field import ZERO, Coefficient, Scalar

log = logging.getLogger(__name__)

Alpha = tuple[int, ...]
TermKey = tuple[Alpha, int]


def unit_alpha(m: int, j: int) -> Alpha:
    return tuple(1 if s == j else 0 for s in range(1, m + 1))


def prefix_sign(alpha: Alpha, j: int) -> int:
    """(-1)^{a_1 + ... + a_{j-1}}."""
    return -1 if sum(alpha[: j - 1]) & 1 else 1


def alpha_str(alpha: Alpha) -> str:
    parts = []
    for j, a in enumerate(alpha, start=1):
        if a == 1:
            parts.append(f"x{j}")
        elif a > 1:
            parts.append(f"x{j}^{a}")
    return " ".join(parts)


@lru_cache(maxsize=None)
def monomials(m: int, degree: int) -> tuple[Alpha, ...]:
    """All exponent vectors of the given degree, in lexicographic order."""
    if m == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(m - 1, degree - first):
            out.append((first,) + rest)
    return tuple(sorted(out))


def monomials_up_to(m: int, max_degree: int) -> tuple[Alpha, ...]:
    out: list[Alpha] = []
    for d in range(max_degree + 1):
        out.extend(monomials(m, d))
    return tuple(out)


class Poly:
    """Finite map (exponent vector, blade) -> Coefficient over m coordinates."""

    __slots__ = ("m", "_terms")

    def __init__(self, m: int, terms: Optional[Mapping[TermKey, Scalar]] = None):
        if m < 1:
            raise DomainError(f"dimension must be >= 1, got {m}")
        self.m = m
        clean: dict[TermKey, Coefficient] = {}
        if terms:
            for (alpha, mask), coef in terms.items():
                if len(alpha) != m:
                    raise DomainError(f"exponent vector {alpha} does not have length {m}")
                c = Coefficient.coerce(coef)
                if c:
                    clean[(tuple(alpha), mask)] = c
        self._terms = clean

    @classmethod
    def _wrap(cls, m: int, terms: dict[TermKey, Coefficient]) -> "Poly":
        obj = object.__new__(cls)
        obj.m = m
        obj._terms = terms
        return obj

    # --- Constructors ---

    @classmethod
    def zero(cls, m: int) -> "Poly":
        return cls(m)

    @classmethod
    def ground(cls, m: int, w: Multivector = MV_ONE) -> "Poly":
        """The ground state [1] with right Clifford factor w."""
        zero = (0,) * m
        return cls._wrap(m, {(zero, mask): c for mask, c in w.items()})

    @classmethod
    def monomial(cls, alpha: Iterable[int], mask: int = 0, coef: Scalar = 1) -> "Poly":
        alpha = tuple(alpha)
        return cls(len(alpha), {(alpha, mask): coef})

    # --- Queries ---

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coefficient(self, alpha: Alpha, mask: int) -> Coefficient:
        return self._terms.get((alpha, mask), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def degrees(self) -> set[int]:
        return {sum(alpha) for alpha, _ in self._terms}

    def degree(self) -> int:
        """Homogeneous degree; raises when the polynomial is not homogeneous."""
        ds = self.degrees()
        if len(ds) != 1:
            raise DomainError(f"polynomial is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def as_vector(self) -> dict[TermKey, Coefficient]:
        return dict(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.m == other.m and self._terms == other._terms
        return NotImplemented

    __hash__ = None

    def ratio_to(self, other: "Poly") -> Optional[Coefficient]:
        """c with self == c * other, or None."""
        if other.is_zero() or self._terms.keys() != other._terms.keys():
            return None
        first = min(other._terms)
        c = self._terms[first] / other._terms[first]
        for key, coef in other._terms.items():
            if self._terms[key] != c * coef:
                return None
        return c

    # --- Arithmetic ---

    def _check_same(self, other: "Poly") -> None:
        if self.m != other.m:
            raise DomainError(f"polynomials over m = {self.m} and m = {other.m}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        out = dict(self._terms)
        for key, coef in other._terms.items():
            s = out.get(key, ZERO) + coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly._wrap(self.m, out)

    def __neg__(self) -> "Poly":
        return Poly._wrap(self.m, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scale(self, value: Scalar) -> "Poly":
        c = Coefficient.coerce(value)
        if not c:
            return Poly.zero(self.m)
        return Poly._wrap(self.m, {k: v * c for k, v in self._terms.items()})

    def __rmul__(self, value: Scalar) -> "Poly":
        return self.scale(value)

    def __mul__(self, other):
        """Right multiplication by a Multivector, or scaling."""
        if isinstance(other, Multivector):
            return right_mul(self, other)
        return self.scale(other)

    # --- Text ---

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        rendered = []
        for alpha, mask in sorted(self._terms):
            mono = alpha_str(alpha)
            mono = f"{mono} [1]" if mono else "[1]"
            rendered.append(f"({self._terms[(alpha, mask)]}) * {mono} | {blade_str(mask)}")
        return " + ".join(rendered)

    def __repr__(self) -> str:
        return f"Poly(m={self.m}, {str(self)!r})"

    @classmethod
    def parse(cls, text: str, m: int) -> "Poly":
        text = text.strip()
        if text == "0":
            return cls.zero(m)
        acc = cls.zero(m)
        for term in split_terms(text):
            match = re.fullmatch(r"\((.*)\)\s*\*\s*(.*?)\s*\[1\]\s*\|\s*(.*)", term)
            if not match:
                raise DomainError(f"malformed polynomial term {term!r}")
            alpha = [0] * m
            for token in match.group(2).split():
                var = re.fullmatch(r"x(\d+)(?:\^(\d+))?", token)
                if not var or not 1 <= int(var.group(1)) <= m:
                    raise DomainError(f"malformed variable {token!r}")
                alpha[int(var.group(1)) - 1] += int(var.group(2) or 1)
            coef = Coefficient.parse(match.group(1))
            acc = acc + cls(m, {(tuple(alpha), parse_blade(match.group(3))): coef})
        return acc


def _check_coordinate(f: Poly, j: int) -> None:
    if not 1 <= j <= f.m:
        raise DomainError(f"coordinate {j} out of range 1..{f.m}")


def _collect(m: int, pieces: Iterable[tuple[TermKey, Coefficient]]) -> Poly:
    out: dict[TermKey, Coefficient] = {}
    for key, coef in pieces:
        s = out.get(key, ZERO) + coef
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return Poly._wrap(m, out)


# --- Coordinate operators ---

def xi_mul(j: int, f: Poly) -> Poly:
    """Left multiplication by xi_j."""
    _check_coordinate(f, j)

    def pieces():
        for (alpha, mask), c in f.items():
            raised = alpha[: j - 1] + (alpha[j - 1] + 1,) + alpha[j:]
            yield (raised, mask), c * prefix_sign(alpha, j)

    return _collect(f.m, pieces())


def d_apply(j: int, f: Poly) -> Poly:
    """The derivation d_j through its closed form."""
    _check_coordinate(f, j)

    def pieces():
        for (alpha, mask), c in f.items():
            a_j = alpha[j - 1]
            if a_j == 0:
                continue
            lowered = alpha[: j - 1] + (a_j - 1,) + alpha[j:]
            yield (lowered, mask), c * (prefix_sign(alpha, j) * a_j)

    return _collect(f.m, pieces())


def dirac(f: Poly) -> Poly:
    """d = sum_j d_j; lowers the degree by one."""
    acc = Poly.zero(f.m)
    for j in range(1, f.m + 1):
        acc = acc + d_apply(j, f)
    return acc


def laplacian(f: Poly) -> Poly:
    return dirac(dirac(f))


def xi_vector(f: Poly) -> Poly:
    """xi = sum_j xi_j."""
    acc = Poly.zero(f.m)
    for j in range(1, f.m + 1):
        acc = acc + xi_mul(j, f)
    return acc


def euler(f: Poly) -> Poly:
    """E = sum_j xi_j d_j, which multiplies each term by its degree."""
    return _collect(f.m, (((alpha, mask), c * sum(alpha)) for (alpha, mask), c in f.items()))


def right_mul(f: Poly, w: Multivector) -> Poly:
    """Replaces every right blade B by the expansion of B w."""

    def pieces():
        for (alpha, mask), c in f.items():
            for wm, wc in w.items():
                cw = c * wc
                for out_mask, sign in blade_mul(mask, wm):
                    yield (alpha, out_mask), cw * sign

    return _collect(f.m, pieces())


def alpha_passing_sign(w: Multivector, alpha: Alpha) -> int:
    """prod_j sigma_j^{a_j}; every coordinate with a_j > 0 must pass."""
    sign = 1
    for j, a in enumerate(alpha, start=1):
        if a and passing_sign(w, j) == -1 and a & 1:
            sign = -sign
    return sign


def left_mul_passable(w: Multivector, f: Poly) -> Poly:
    """w f, with w moved through the xi-monomial and absorbed on the right of [1]."""

    def pieces():
        for (alpha, mask), c in f.items():
            cs = c * alpha_passing_sign(w, alpha)
            for wm, wc in w.items():
                cw = cs * wc
                for out_mask, sign in blade_mul(wm, mask):
                    yield (alpha, out_mask), cw * sign

    return _collect(f.m, pieces())


# --- Basic monogenic builders ---

def _alternating(k: int, m: int, start_minus: bool) -> Poly:
    if m < 2:
        raise DomainError(f"g_k and f_k need m >= 2, got {m}")
    if k < 0:
        raise DomainError(f"degree must be >= 0, got {k}")
    f = Poly.ground(m)
    # factors are applied right to left; position t from the left is (xi_2 - xi_1) when t and start agree
    for t in range(k - 1, -1, -1):
        minus = (t % 2 == 0) == start_minus
        step = xi_mul(2, f)
        step = step - xi_mul(1, f) if minus else step + xi_mul(1, f)
        f = step
    return f


@lru_cache(maxsize=None)
def g_poly(k: int, m: int) -> Poly:
    """g_k = (xi_2 - xi_1)(xi_2 + xi_1)(xi_2 - xi_1) ... [1], k factors."""
    return _alternating(k, m, start_minus=True)


@lru_cache(maxsize=None)
def f_poly(k: int, m: int) -> Poly:
    """f_k = (xi_2 + xi_1)(xi_2 - xi_1)(xi_2 + xi_1) ... [1], k factors."""
    return _alternating(k, m, start_minus=False)
