"""
The split Clifford algebra C_{2m,0} on forward/backward generators e_j^+, e_j^-.

Relations: {e_j^+, e_l^-} = delta_{jl}, every other anticommutator vanishes.

A blade is a canonical word of distinct generators stored as a bit mask:
bit 2(j-1) is e_j^+ and bit 2(j-1)+1 is e_j^-, so the canonical order is
e_1^+ < e_1^- < e_2^+ < ... < e_m^-. Products are normal ordered by inserting
the generators of the right operand one at a time, tracking the sign and
the contraction term produced by a matched e_j^- e_j^+ pair.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional

from core.errors import DomainError, NotPassable
from engine.scalar_field import I, ONE, ZERO, Coefficient, Scalar

log = logging.getLogger(__name__)

# --- Blade helpers ---

PLUS = "+"
MINUS = "-"


def _popcount(x: int) -> int:
    return bin(x).count("1")


def gen_bit(j: int, sign: str) -> int:
    """Bit index of e_j^sign (j is 1-based)."""
    if j < 1:
        raise DomainError(f"coordinate index must be >= 1, got {j}")
    if sign not in (PLUS, MINUS):
        raise DomainError(f"generator sign must be '+' or '-', got {sign!r}")
    return 2 * (j - 1) + (0 if sign == PLUS else 1)


def blade_bits(mask: int) -> Iterator[int]:
    p = 0
    while mask:
        if mask & 1:
            yield p
        mask >>= 1
        p += 1


def blade_str(mask: int) -> str:
    """``e1+ e1- e3+``; the empty blade is ``1``."""
    if not mask:
        return "1"
    return " ".join(f"e{p // 2 + 1}{PLUS if p % 2 == 0 else MINUS}" for p in blade_bits(mask))


_GEN_TOKEN = re.compile(r"e(\d+)([+-])")


def parse_blade(text: str) -> int:
    text = text.strip()
    if text == "1":
        return 0
    mask, last = 0, -1
    for token in text.split():
        match = _GEN_TOKEN.fullmatch(token)
        if not match:
            raise DomainError(f"malformed generator {token!r}")
        p = GeneratorId(int(match.group(1)), match.group(2)).bit
        if p <= last:
            raise DomainError(f"blade {text!r} is not in canonical order")
        mask |= 1 << p
        last = p
    return mask


def _insert(mask: int, p: int) -> tuple[tuple[int, int], ...]:
    """Right multiplication of a blade by the single generator with bit p."""
    if (mask >> p) & 1:
        if p % 2 == 0 and (mask >> (p + 1)) & 1:
            # e_j^+ e_j^- e_j^+ = e_j^+
            beyond = _popcount(mask >> (p + 2))
            return ((mask & ~(1 << (p + 1)), -1 if beyond & 1 else 1),)
        return ()
    above = _popcount(mask >> (p + 1))
    out = [(mask | (1 << p), -1 if above & 1 else 1)]
    if p % 2 == 0 and (mask >> (p + 1)) & 1:
        # e_j^- e_j^+ = 1 - e_j^+ e_j^-: the contraction drops the pair
        beyond = _popcount(mask >> (p + 2))
        out.append((mask & ~(1 << (p + 1)), -1 if beyond & 1 else 1))
    return tuple(out)


@lru_cache(maxsize=1 << 20)
def blade_mul(x: int, y: int) -> tuple[tuple[int, int], ...]:
    """Normal-ordered product of two blades as ((mask, integer coefficient), ...)."""
    terms: dict[int, int] = {x: 1}
    for p in blade_bits(y):
        nxt: dict[int, int] = {}
        for mask, coef in terms.items():
            for out_mask, sign in _insert(mask, p):
                nxt[out_mask] = nxt.get(out_mask, 0) + coef * sign
        terms = {k: v for k, v in nxt.items() if v}
        if not terms:
            break
    return tuple(sorted(terms.items()))


def split_terms(text: str, sep: str = " + ") -> list[str]:
    """Splits on ``sep`` outside parentheses."""
    parts, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            parts.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


# --- Domain types ---

@dataclass(frozen=True)
class GeneratorId:
    """A forward (+) or backward (-) generator e_j^sign."""
    j: int
    sign: str

    def __post_init__(self):
        gen_bit(self.j, self.sign)

    @property
    def bit(self) -> int:
        return gen_bit(self.j, self.sign)

    def __str__(self) -> str:
        return f"e{self.j}{self.sign}"


class Multivector:
    """Finite Coefficient-weighted sum of blades; immutable and hashable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Scalar]] = None):
        clean: dict[int, Coefficient] = {}
        if terms:
            for mask, coef in terms.items():
                c = Coefficient.coerce(coef)
                if c:
                    clean[mask] = c
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, terms: dict[int, Coefficient]) -> "Multivector":
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # --- Constructors ---

    @classmethod
    def scalar(cls, value: Scalar) -> "Multivector":
        return cls({0: value})

    @classmethod
    def blade(cls, mask: int, coef: Scalar = ONE) -> "Multivector":
        return cls({mask: coef})

    @classmethod
    def gen(cls, j: int, sign: str) -> "Multivector":
        return cls({1 << gen_bit(j, sign): ONE})

    # --- Queries ---

    def items(self) -> Iterable[tuple[int, Coefficient]]:
        return self._terms.items()

    def blades(self) -> list[int]:
        return sorted(self._terms)

    def coefficient(self, mask: int) -> Coefficient:
        return self._terms.get(mask, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(mask == 0 for mask in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Multivector):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def ratio_to(self, other: "Multivector") -> Optional[Coefficient]:
        """c with self == c * other, or None."""
        if other.is_zero():
            return None
        if self._terms.keys() != other._terms.keys():
            return None
        first = min(other._terms)
        c = self._terms[first] / other._terms[first]
        for mask, coef in other._terms.items():
            if self._terms[mask] != c * coef:
                return None
        return c

    # --- Arithmetic ---

    def __add__(self, other: "Multivector") -> "Multivector":
        out = dict(self._terms)
        for mask, coef in other._terms.items():
            s = out.get(mask, ZERO) + coef
            if s:
                out[mask] = s
            else:
                out.pop(mask, None)
        return Multivector._wrap(out)

    def __neg__(self) -> "Multivector":
        return Multivector._wrap({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def scale(self, value: Scalar) -> "Multivector":
        c = Coefficient.coerce(value)
        if not c:
            return Multivector._wrap({})
        return Multivector._wrap({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return mv_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # --- Text ---

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({self._terms[k]}) {blade_str(k)}" for k in sorted(self._terms))

    def __repr__(self) -> str:
        return f"Multivector({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Multivector":
        text = text.strip()
        if text == "0":
            return cls()
        acc = cls()
        for term in split_terms(text):
            match = re.fullmatch(r"\((.*)\)\s*(.*)", term)
            if not match:
                raise DomainError(f"malformed multivector term {term!r}")
            acc = acc + cls.blade(parse_blade(match.group(2)), Coefficient.parse(match.group(1)))
        return acc


MV_ZERO = Multivector()
MV_ONE = Multivector.scalar(ONE)


@lru_cache(maxsize=1 << 16)
def mv_mul(x: Multivector, y: Multivector) -> Multivector:
    """Associative product in C_{2m,0}."""
    if x.is_zero() or y.is_zero():
        return MV_ZERO
    out: dict[int, Coefficient] = {}
    for xm, xc in x.items():
        for ym, yc in y.items():
            c = xc * yc
            for mask, sign in blade_mul(xm, ym):
                term = c * sign
                s = out.get(mask, ZERO) + term
                if s:
                    out[mask] = s
                else:
                    out.pop(mask, None)
    return Multivector._wrap(out)


def product(factors: Iterable[Multivector]) -> Multivector:
    acc = MV_ONE
    for f in factors:
        acc = mv_mul(acc, f)
    return acc


# --- Named elements ---

def e_vec(j: int) -> Multivector:
    """e_j = e_j^+ + e_j^-."""
    return Multivector.gen(j, PLUS) + Multivector.gen(j, MINUS)


def e_perp(j: int) -> Multivector:
    """e_j^perp = e_j^+ - e_j^-."""
    return Multivector.gen(j, PLUS) - Multivector.gen(j, MINUS)


def e_wedge(j: int) -> Multivector:
    """e_j^+ ^ e_j^- = e_j^+ e_j^- - e_j^- e_j^+."""
    p, q = Multivector.gen(j, PLUS), Multivector.gen(j, MINUS)
    return p * q - q * p


@lru_cache(maxsize=None)
def v_element(a: int, b: int) -> Multivector:
    """V_{a,b} = e_a e_b e_a^perp e_b^perp, checked against -e_a^perp e_a e_b^perp e_b."""
    if a == b:
        raise DomainError(f"V_{{a,b}} needs distinct indices, got a = b = {a}")
    direct = product((e_vec(a), e_vec(b), e_perp(a), e_perp(b)))
    paired = -product((e_perp(a), e_vec(a), e_perp(b), e_vec(b)))
    if direct != paired:
        raise DomainError(f"the two forms of V_{{{a},{b}}} disagree")
    return direct


def named(kind: str, *indices: int) -> Multivector:
    """Named constants: ``e``, ``e_perp``, ``wedge``, ``plus``, ``minus``, ``V``."""
    builders = {
        "e": e_vec,
        "e_perp": e_perp,
        "wedge": e_wedge,
        "plus": lambda j: Multivector.gen(j, PLUS),
        "minus": lambda j: Multivector.gen(j, MINUS),
        "V": v_element,
    }
    if kind not in builders:
        raise DomainError(f"unknown named element {kind!r}")
    return builders[kind](*indices)


# --- Idempotents ---

class Factor(str, Enum):
    """Per-coordinate idempotent factor."""
    L_PLUS = "L+"
    L_MINUS = "L-"
    M_PLUS = "M+"
    M_MINUS = "M-"

    @property
    def sign_grade(self) -> int:
        """|F|: 0 for L+ and M-, 1 for L- and M+."""
        return 0 if self in (Factor.L_PLUS, Factor.M_MINUS) else 1

    @property
    def family_grade(self) -> int:
        """||F||: 0 for the L family, 1 for the M family."""
        return 0 if self.value[0] == "L" else 1

    @property
    def is_plus(self) -> bool:
        return self.value[1] == "+"

    def tilde(self) -> "Factor":
        return {
            Factor.L_PLUS: Factor.L_MINUS,
            Factor.L_MINUS: Factor.L_PLUS,
            Factor.M_PLUS: Factor.M_MINUS,
            Factor.M_MINUS: Factor.M_PLUS,
        }[self]


FACTOR_ORDER = (Factor.L_PLUS, Factor.L_MINUS, Factor.M_PLUS, Factor.M_MINUS)


@dataclass(frozen=True)
class IdempotentSpec:
    """F = F_1 F_2 ... F_m, one factor per coordinate (coordinate 1 first)."""
    factors: tuple[Factor, ...]

    @property
    def m(self) -> int:
        return len(self.factors)

    def factor(self, s: int) -> Factor:
        self._check(s)
        return self.factors[s - 1]

    def sign_grade(self, s: int) -> int:
        return self.factor(s).sign_grade

    def family_grade(self, s: int) -> int:
        return self.factor(s).family_grade

    def grade_sum(self, *coords: int) -> int:
        """sum of |F_s| + ||F_s|| over the given coordinates."""
        return sum(self.sign_grade(s) + self.family_grade(s) for s in coords)

    def _check(self, s: int) -> None:
        if not 1 <= s <= self.m:
            raise DomainError(f"coordinate {s} out of range 1..{self.m}")

    def tilde(self, s: int) -> "IdempotentSpec":
        self._check(s)
        items = list(self.factors)
        items[s - 1] = items[s - 1].tilde()
        return IdempotentSpec(tuple(items))

    def flip_range(self, s1: int, s2: int) -> "IdempotentSpec":
        """F^{s1,s2}: tilde on every position s1..s2."""
        self._check(s1)
        self._check(s2)
        if not s1 < s2:
            raise DomainError(f"flip range needs s1 < s2, got {s1}, {s2}")
        items = list(self.factors)
        for s in range(s1, s2 + 1):
            items[s - 1] = items[s - 1].tilde()
        return IdempotentSpec(tuple(items))

    def minus_count(self) -> int:
        return sum(1 for f in self.factors if not f.is_plus)

    def __str__(self) -> str:
        return " ".join(f.value for f in self.factors)

    @classmethod
    def parse(cls, text: str, m: Optional[int] = None) -> "IdempotentSpec":
        tokens = text.split()
        try:
            factors = tuple(Factor(t) for t in tokens)
        except ValueError:
            raise DomainError(f"malformed idempotent spec {text!r}; tokens are L+ L- M+ M-")
        if not factors:
            raise DomainError("empty idempotent spec")
        if m is not None and len(factors) != m:
            raise DomainError(f"spec {text!r} has {len(factors)} factors, expected m = {m}")
        return cls(factors)

    @classmethod
    def uniform(cls, m: int, factor: Factor = Factor.L_PLUS) -> "IdempotentSpec":
        return cls((factor,) * m)


def spec_tilde(spec: IdempotentSpec, s: int) -> IdempotentSpec:
    return spec.tilde(s)


def spec_flip_range(spec: IdempotentSpec, s1: int, s2: int) -> IdempotentSpec:
    return spec.flip_range(s1, s2)


@lru_cache(maxsize=None)
def factor_element(factor: Factor, s: int, m: int) -> Multivector:
    """
    The Clifford element of one factor at coordinate s.

    Odd coordinates carry i on both families, even coordinates carry none;
    the last coordinate of an odd dimension carries i on L only.
    """
    if not 1 <= s <= m:
        raise DomainError(f"coordinate {s} out of range 1..{m}")
    plus, minus = Multivector.gen(s, PLUS), Multivector.gen(s, MINUS)
    if m % 2 == 1 and s == m:
        unit = I if factor.family_grade == 0 else ONE
    else:
        unit = I if s % 2 == 1 else ONE
    sign = 1 if factor.is_plus else -1
    if factor.family_grade == 0:
        return plus * minus + plus.scale(unit * sign)
    return minus * plus + minus.scale(unit * sign)


@lru_cache(maxsize=4096)
def idem_realize(spec: IdempotentSpec) -> Multivector:
    """The ordered product F_1 F_2 ... F_m."""
    m = spec.m
    return product(factor_element(f, s, m) for s, f in enumerate(spec.factors, start=1))


# --- Passability ---

@lru_cache(maxsize=4096)
def passing_sign(w: Multivector, j: int) -> int:
    """
    sigma with w e_j^s = sigma e_j^s w for both s; this is the sign picked up
    when w moves through xi_j.
    """
    allowed = {1, -1}
    for sign in (PLUS, MINUS):
        g = Multivector.gen(j, sign)
        left, right = w * g, g * w
        ok = set()
        if left == right:
            ok.add(1)
        if left == -right:
            ok.add(-1)
        allowed &= ok
    if not allowed:
        raise NotPassable(f"{w} does not pass coordinate {j} with a uniform sign")
    return 1 if 1 in allowed else -1
