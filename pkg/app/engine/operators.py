"""
Composable linear operators on discrete Clifford-valued polynomials.

Every operator built from the primitives acts on a basis element
xi^alpha [1] B as a finite sum of terms  c * xi^alpha' [1] (l B r), with Clifford
factors l on the left of B and r on its right. ``OperatorExpr.table(alpha)``
returns that sum with B left symbolic, keyed by (alpha', l, r).

The split algebra is a full matrix algebra, so the maps B -> b1 B b2 over pairs
of blades are linearly independent; two operators therefore agree on every
basis element (alpha, B) exactly when their expanded tables agree at alpha.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from core.errors import DomainError
from engine.clifford import MV_ONE, Multivector, mv_mul
from engine.poly import Alpha, Poly, TermKey, alpha_passing_sign, prefix_sign
from engine.scalar_field import HALF, ONE, ZERO, Coefficient, Scalar

log = logging.getLogger(__name__)

TableKey = tuple[Alpha, Multivector, Multivector]
Table = dict[TableKey, Coefficient]

# --- Helper Functions ---


@lru_cache(maxsize=1 << 14)
def _monic(w: Multivector) -> tuple[Multivector, Coefficient]:
    """(w / lead, lead) with lead the coefficient of the smallest blade."""
    lead = w.coefficient(w.blades()[0])
    if lead == ONE:
        return w, ONE
    return w.scale(lead.inv()), lead


def _accumulate(out: Table, key: TableKey, coef: Coefficient) -> None:
    alpha, left, right = key
    left, lc = _monic(left)
    right, rc = _monic(right)
    key = (alpha, left, right)
    s = out.get(key, ZERO) + coef * lc * rc
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def expand_table(table: Table) -> dict[tuple[Alpha, int, int], Coefficient]:
    """Expands (alpha', l, r) keys into pairs of blades."""
    out: dict[tuple[Alpha, int, int], Coefficient] = {}
    for (alpha, left, right), coef in table.items():
        for lm, lc in left.items():
            clc = coef * lc
            for rm, rc in right.items():
                key = (alpha, lm, rm)
                s = out.get(key, ZERO) + clc * rc
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return out


# --- Operator tree ---

@dataclass(frozen=True, eq=False)
class OperatorExpr:
    """Base node; subclasses implement ``_compute``."""

    label: str = field(default="", kw_only=True, compare=False)
    _cache: dict = field(default_factory=dict, kw_only=True, compare=False, repr=False)

    def _compute(self, alpha: Alpha) -> Table:  # pragma: no cover - abstract
        raise NotImplementedError

    def table(self, alpha: Alpha) -> Table:
        alpha = tuple(alpha)
        cached = self._cache.get(alpha)
        if cached is None:
            cached = self._compute(alpha)
            self._cache[alpha] = cached
        return cached

    def apply(self, f: Poly) -> Poly:
        """Evaluates the operator on a concrete polynomial."""
        out: dict[TermKey, Coefficient] = {}
        for (alpha, mask), c in f.items():
            blade = Multivector.blade(mask)
            for (alpha2, left, right), c2 in self.table(alpha).items():
                image = mv_mul(mv_mul(left, blade), right)
                cc = c * c2
                for out_mask, coef in image.items():
                    key = (alpha2, out_mask)
                    s = out.get(key, ZERO) + cc * coef
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return Poly._wrap(f.m, out)

    def __call__(self, f: Poly) -> Poly:
        return self.apply(f)

    # --- Operator algebra ---

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return Sum((self, other))

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return Sum((self, scaled(-1, other)))

    def __neg__(self) -> "OperatorExpr":
        return scaled(-1, self)

    def __rmul__(self, value: Scalar) -> "OperatorExpr":
        return scaled(value, self)

    def __matmul__(self, other: "OperatorExpr") -> "OperatorExpr":
        return Compose(self, other)

    def named(self, text: str) -> "OperatorExpr":
        return replace(self, label=text, _cache={})

    def describe(self) -> str:
        return self.label or self._describe()

    def _describe(self) -> str:  # pragma: no cover - abstract
        return type(self).__name__

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True, eq=False)
class Zero(OperatorExpr):
    def _compute(self, alpha: Alpha) -> Table:
        return {}

    def _describe(self) -> str:
        return "0"


@dataclass(frozen=True, eq=False)
class XiMul(OperatorExpr):
    j: int

    def _compute(self, alpha: Alpha) -> Table:
        _check(alpha, self.j)
        j = self.j
        raised = alpha[: j - 1] + (alpha[j - 1] + 1,) + alpha[j:]
        return {(raised, MV_ONE, MV_ONE): Coefficient.coerce(prefix_sign(alpha, j))}

    def _describe(self) -> str:
        return f"xi{self.j}"


@dataclass(frozen=True, eq=False)
class DApply(OperatorExpr):
    j: int

    def _compute(self, alpha: Alpha) -> Table:
        _check(alpha, self.j)
        j = self.j
        a_j = alpha[j - 1]
        if a_j == 0:
            return {}
        lowered = alpha[: j - 1] + (a_j - 1,) + alpha[j:]
        return {(lowered, MV_ONE, MV_ONE): Coefficient.coerce(prefix_sign(alpha, j) * a_j)}

    def _describe(self) -> str:
        return f"d{self.j}"


@dataclass(frozen=True, eq=False)
class RightMul(OperatorExpr):
    w: Multivector

    def _compute(self, alpha: Alpha) -> Table:
        if self.w.is_zero():
            return {}
        out: Table = {}
        _accumulate(out, (alpha, MV_ONE, self.w), ONE)
        return out

    def _describe(self) -> str:
        return f"R[{self.w}]"


@dataclass(frozen=True, eq=False)
class LeftMulPassable(OperatorExpr):
    w: Multivector

    def _compute(self, alpha: Alpha) -> Table:
        if self.w.is_zero():
            return {}
        out: Table = {}
        _accumulate(out, (alpha, self.w, MV_ONE), Coefficient.coerce(alpha_passing_sign(self.w, alpha)))
        return out

    def _describe(self) -> str:
        return f"L[{self.w}]"


@dataclass(frozen=True, eq=False)
class Scale(OperatorExpr):
    c: Coefficient

    def _compute(self, alpha: Alpha) -> Table:
        if not self.c:
            return {}
        return {(alpha, MV_ONE, MV_ONE): self.c}

    def _describe(self) -> str:
        return f"({self.c})"


@dataclass(frozen=True, eq=False)
class Sum(OperatorExpr):
    terms: tuple[OperatorExpr, ...]

    def _compute(self, alpha: Alpha) -> Table:
        out: Table = {}
        for term in self.terms:
            for key, coef in term.table(alpha).items():
                s = out.get(key, ZERO) + coef
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    def _describe(self) -> str:
        if not self.terms:
            return "0"
        return "(" + " + ".join(t.describe() for t in self.terms) + ")"


@dataclass(frozen=True, eq=False)
class Compose(OperatorExpr):
    outer: OperatorExpr
    inner: OperatorExpr

    def _compute(self, alpha: Alpha) -> Table:
        out: Table = {}
        for (alpha1, l1, r1), c1 in self.inner.table(alpha).items():
            for (alpha2, l2, r2), c2 in self.outer.table(alpha1).items():
                left = mv_mul(l2, l1)
                if left.is_zero():
                    continue
                right = mv_mul(r1, r2)
                if right.is_zero():
                    continue
                _accumulate(out, (alpha2, left, right), c1 * c2)
        return out

    def _describe(self) -> str:
        return f"{self.outer.describe()} . {self.inner.describe()}"


def _check(alpha: Alpha, j: int) -> None:
    if not 1 <= j <= len(alpha):
        raise DomainError(f"coordinate {j} out of range 1..{len(alpha)}")


# --- Builders ---

ZERO_OP = Zero()
IDENTITY = Scale(ONE, label="1")


def scaled(value: Scalar, op: OperatorExpr) -> OperatorExpr:
    c = Coefficient.coerce(value)
    if not c:
        return ZERO_OP
    if c == ONE:
        return op
    return Compose(Scale(c), op)


def sum_of(ops: Iterable[OperatorExpr]) -> OperatorExpr:
    ops = tuple(ops)
    if not ops:
        return ZERO_OP
    if len(ops) == 1:
        return ops[0]
    return Sum(ops)


def bracket(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """[a, b] = a b - b a."""
    return Sum((Compose(a, b), scaled(-1, Compose(b, a)))).named(f"[{a.describe()}, {b.describe()}]")


def anticommutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return Sum((Compose(a, b), Compose(b, a))).named(f"{{{a.describe()}, {b.describe()}}}")


def _check_index(m: int, *indices: int) -> None:
    for j in indices:
        if not 1 <= j <= m:
            raise DomainError(f"coordinate {j} out of range 1..{m}")


@lru_cache(maxsize=None)
def xi_op(j: int) -> OperatorExpr:
    return XiMul(j)


@lru_cache(maxsize=None)
def d_op(j: int) -> OperatorExpr:
    return DApply(j)


@lru_cache(maxsize=None)
def dirac_op(m: int) -> OperatorExpr:
    return Sum(tuple(d_op(j) for j in range(1, m + 1)), label="d")


@lru_cache(maxsize=None)
def xi_vector_op(m: int) -> OperatorExpr:
    return Sum(tuple(xi_op(j) for j in range(1, m + 1)), label="xi")


@lru_cache(maxsize=None)
def euler_op(m: int) -> OperatorExpr:
    return Sum(tuple(Compose(xi_op(j), d_op(j)) for j in range(1, m + 1)), label="E")


@lru_cache(maxsize=None)
def euler_shift_op(m: int) -> OperatorExpr:
    """E + m/2."""
    return Sum((euler_op(m), Scale(HALF * m)), label="E+m/2")


@lru_cache(maxsize=None)
def laplacian_op(m: int) -> OperatorExpr:
    return Compose(dirac_op(m), dirac_op(m), label="d^2")


@lru_cache(maxsize=None)
def xi_square_op(m: int) -> OperatorExpr:
    return Compose(xi_vector_op(m), xi_vector_op(m), label="xi^2")


@lru_cache(maxsize=None)
def L_op(a: int, b: int, m: int) -> OperatorExpr:
    """L_{a,b} = xi_a d_b + xi_b d_a, with L_{a,a} = 0."""
    _check_index(m, a, b)
    if a == b:
        return Zero(label=f"L({a},{a})")
    return Sum((Compose(xi_op(a), d_op(b)), Compose(xi_op(b), d_op(a))), label=f"L({a},{b})")


# --- Extensional comparison ---

@dataclass(frozen=True)
class Disagreement:
    """Where two operators first differ."""
    alpha: Alpha
    left: str
    right: str

    def render(self) -> str:
        return f"at {Poly.monomial(self.alpha)} : lhs {self.left} ; rhs {self.right}"


def _render_table(table: Table) -> str:
    if not table:
        return "0"
    parts = []
    for (alpha, left, right), coef in sorted(table.items(), key=lambda kv: (kv[0][0], str(kv[0][1]), str(kv[0][2]))):
        parts.append(f"({coef}) {Poly.monomial(alpha)} * <[{left}] B [{right}]>")
    return " + ".join(parts)


def difference_at(a: OperatorExpr, b: OperatorExpr, alpha: Alpha) -> dict:
    """Expanded a - b at alpha; empty when the operators agree on every (alpha, B)."""
    diff: Table = dict(a.table(alpha))
    for key, coef in b.table(alpha).items():
        s = diff.get(key, ZERO) - coef
        if s:
            diff[key] = s
        else:
            diff.pop(key, None)
    if not diff:
        return {}
    return expand_table(diff)


def first_disagreement(
    a: OperatorExpr, b: OperatorExpr, alphas: Sequence[Alpha]
) -> Optional[Disagreement]:
    for alpha in alphas:
        if difference_at(a, b, alpha):
            return Disagreement(alpha, _render_table(a.table(alpha)), _render_table(b.table(alpha)))
    return None


def agree_on_basis(a: OperatorExpr, b: OperatorExpr, alphas: Sequence[Alpha]) -> bool:
    return first_disagreement(a, b, alphas) is None


def agree_on_elements(
    a: OperatorExpr, b: OperatorExpr, elements: Iterable[tuple[Alpha, int]]
) -> Optional[str]:
    """Concrete check on basis elements xi^alpha [1] B; returns a witness on failure."""
    for alpha, mask in elements:
        f = Poly.monomial(alpha, mask)
        lhs, rhs = a.apply(f), b.apply(f)
        if lhs != rhs:
            return f"at {f} : lhs {lhs} ; rhs {rhs}"
    return None
