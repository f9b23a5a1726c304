"""
The so(m, C) action on discrete Clifford-valued polynomials.

Rotations dR(a, b) are assembled from the primitives in ``engine.operators``;
the Cartan basis H, X, Y, Z (and U, V in odd dimension) are fixed linear
combinations of them. Weights, highest weight tests, idempotent
classification, orbit closure and bracket tables are built on top.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from sympy.external.gmpy import MPQ

from core.errors import DomainError, NotEigen
from engine.clifford import (
    FACTOR_ORDER,
    IdempotentSpec,
    Multivector,
    e_perp,
    e_vec,
    idem_realize,
    v_element,
)
from engine.linalg import EchelonBasis, rank_of, solve_combination
from engine.operators import (
    Compose,
    LeftMulPassable,
    OperatorExpr,
    RightMul,
    Scale,
    Sum,
    Zero,
    bracket,
    expand_table,
    L_op,
    scaled,
)
from engine.poly import Poly, g_poly, monomials_up_to
from engine.scalar_field import HALF, I, INV_SQRT2, ONE, ZERO, Coefficient, fstr

log = logging.getLogger(__name__)

Weight = tuple[MPQ, ...]

# --- Helper Functions ---


def rank_of_algebra(m: int) -> int:
    """n = floor(m / 2)."""
    return m // 2


def weight_str(weight: Optional[Weight]) -> str:
    if weight is None:
        return "-"
    return "(" + ", ".join(fstr(w) for w in weight) + ")"


def _check_coordinates(m: int, *indices: int) -> None:
    for j in indices:
        if not 1 <= j <= m:
            raise DomainError(f"coordinate {j} out of range 1..{m}")


def _check_cartan(m: int, *indices: int) -> None:
    n = rank_of_algebra(m)
    for a in indices:
        if not 1 <= a <= n:
            raise DomainError(f"Cartan index {a} out of range 1..{n} for m = {m}")


def _check_distinct(a: int, b: int) -> None:
    if a == b:
        raise DomainError(f"root vector needs distinct indices, got a = b = {a}")


def _combine(label: str, scale: Coefficient, terms: Iterable[tuple[Coefficient, OperatorExpr]]) -> OperatorExpr:
    return scaled(scale, Sum(tuple(scaled(c, op) for c, op in terms))).named(label)


# --- Rotations ---

@lru_cache(maxsize=None)
def omega(a: int, b: int, m: int) -> OperatorExpr:
    """Omega_{a,b} f = L_{a,b} f e_b e_a."""
    _check_coordinates(m, a, b)
    if a == b:
        raise DomainError(f"Omega needs distinct indices, got a = b = {a}")
    return Compose(L_op(a, b, m), RightMul(e_vec(b) * e_vec(a)), label=f"Omega({a},{b})")


@lru_cache(maxsize=None)
def dR(a: int, b: int, m: int) -> OperatorExpr:
    """dR(e_{a,b}) f = V_{a,b} (L_{a,b} - 1/2) f e_a^perp e_b^perp; dR(e_{a,a}) = 0."""
    _check_coordinates(m, a, b)
    if a == b:
        return Zero(label=f"dR({a},{a})")
    shifted = Sum((L_op(a, b, m), Scale(-HALF)))
    inner = Compose(shifted, RightMul(e_perp(a) * e_perp(b)))
    return Compose(LeftMulPassable(v_element(a, b)), inner, label=f"dR({a},{b})")


@lru_cache(maxsize=None)
def cartan(a: int, m: int) -> OperatorExpr:
    """H_a = i dR(e_{2a-1,2a})."""
    _check_cartan(m, a)
    return scaled(I, dR(2 * a - 1, 2 * a, m)).named(f"H{a}")


@lru_cache(maxsize=None)
def xroot(a: int, b: int, m: int) -> OperatorExpr:
    _check_cartan(m, a, b)
    _check_distinct(a, b)
    return _combine(f"X({a},{b})", HALF, (
        (ONE, dR(2 * a - 1, 2 * b - 1, m)),
        (I, dR(2 * a - 1, 2 * b, m)),
        (-I, dR(2 * a, 2 * b - 1, m)),
        (ONE, dR(2 * a, 2 * b, m)),
    ))


@lru_cache(maxsize=None)
def yroot(a: int, b: int, m: int) -> OperatorExpr:
    _check_cartan(m, a, b)
    _check_distinct(a, b)
    return _combine(f"Y({a},{b})", HALF, (
        (ONE, dR(2 * a - 1, 2 * b - 1, m)),
        (-I, dR(2 * a - 1, 2 * b, m)),
        (-I, dR(2 * a, 2 * b - 1, m)),
        (-ONE, dR(2 * a, 2 * b, m)),
    ))


@lru_cache(maxsize=None)
def zroot(a: int, b: int, m: int) -> OperatorExpr:
    _check_cartan(m, a, b)
    _check_distinct(a, b)
    return _combine(f"Z({a},{b})", HALF, (
        (ONE, dR(2 * a - 1, 2 * b - 1, m)),
        (I, dR(2 * a - 1, 2 * b, m)),
        (I, dR(2 * a, 2 * b - 1, m)),
        (-ONE, dR(2 * a, 2 * b, m)),
    ))


def _check_odd(m: int) -> None:
    if m % 2 == 0:
        raise DomainError(f"U and V exist only in odd dimension, got m = {m}")


@lru_cache(maxsize=None)
def uroot(a: int, m: int) -> OperatorExpr:
    """U_a = (dR(e_{2a-1,m}) - i dR(e_{2a,m})) / sqrt 2."""
    _check_odd(m)
    _check_cartan(m, a)
    return _combine(f"U{a}", INV_SQRT2, ((ONE, dR(2 * a - 1, m, m)), (-I, dR(2 * a, m, m))))


@lru_cache(maxsize=None)
def vroot(a: int, m: int) -> OperatorExpr:
    """V_a = (dR(e_{2a-1,m}) + i dR(e_{2a,m})) / sqrt 2."""
    _check_odd(m)
    _check_cartan(m, a)
    return _combine(f"V{a}", INV_SQRT2, ((ONE, dR(2 * a - 1, m, m)), (I, dR(2 * a, m, m))))


def rotations(m: int) -> list[OperatorExpr]:
    """dR(a, b) for all a < b."""
    return [dR(a, b, m) for a, b in itertools.combinations(range(1, m + 1), 2)]


def positive_roots(m: int) -> list[OperatorExpr]:
    """X_{a,b}, Y_{a,b} for a < b, and U_a in odd dimension."""
    n = rank_of_algebra(m)
    ops = []
    for a, b in itertools.combinations(range(1, n + 1), 2):
        ops.append(xroot(a, b, m))
        ops.append(yroot(a, b, m))
    if m % 2 == 1:
        ops.extend(uroot(a, m) for a in range(1, n + 1))
    return ops


def cartan_basis(m: int) -> list[OperatorExpr]:
    """H_a, X_{a,b} (a != b), Y_{a,b} and Z_{a,b} (a < b), plus U_a, V_a for odd m."""
    n = rank_of_algebra(m)
    ops = [cartan(a, m) for a in range(1, n + 1)]
    ops.extend(xroot(a, b, m) for a, b in itertools.permutations(range(1, n + 1), 2))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    ops.extend(yroot(a, b, m) for a, b in pairs)
    ops.extend(zroot(a, b, m) for a, b in pairs)
    if m % 2 == 1:
        ops.extend(uroot(a, m) for a in range(1, n + 1))
        ops.extend(vroot(a, m) for a in range(1, n + 1))
    return ops


# --- Weights ---

def weight_of(f: Poly, m: int) -> Weight:
    """Simultaneous H-eigenvalues of f; raises NotEigen otherwise."""
    return _weight_from_images(f, (cartan(a, m).apply(f) for a in range(1, rank_of_algebra(m) + 1)))


def _weight_from_images(f: Poly, images: Iterable[Poly]) -> Weight:
    if f.is_zero():
        raise DomainError("weight of the zero polynomial")
    weight = []
    for a, image in enumerate(images, start=1):
        if image.is_zero():
            weight.append(MPQ(0))
            continue
        ratio = image.ratio_to(f)
        if ratio is None:
            raise NotEigen(f"H{a} f is not a multiple of f")
        if not ratio.is_rational():
            raise DomainError(f"H{a} eigenvalue {ratio} is not rational")
        weight.append(ratio.rational())
    return tuple(weight)


def is_hwv(f: Poly, m: int) -> bool:
    """Weight vector annihilated by every positive root vector."""
    try:
        weight = weight_of(f, m)
    except NotEigen as exc:
        log.debug("not a weight vector: %s", exc.detail)
        return False
    for op in positive_roots(m):
        if not op.apply(f).is_zero():
            log.debug("weight %s not annihilated by %s", weight_str(weight), op)
            return False
    return True


def plus_weight(k: int, m: int) -> Weight:
    """(k)'_+ = (k + 1/2, 1/2, ..., 1/2)."""
    n = rank_of_algebra(m)
    return (MPQ(2 * k + 1, 2),) + (MPQ(1, 2),) * (n - 1)


def minus_weight(k: int, m: int) -> Weight:
    """(k)'_- = (k + 1/2, 1/2, ..., -1/2); for m = 2 this is (-(k + 1/2),)."""
    n = rank_of_algebra(m)
    if n == 1:
        return (MPQ(-(2 * k + 1), 2),)
    return (MPQ(2 * k + 1, 2),) + (MPQ(1, 2),) * (n - 2) + (MPQ(-1, 2),)


# --- Classification ---

class Classification(str, Enum):
    PLUS = "plus"
    MINUS = "minus"
    OTHER = "other"


def hwv_candidate(spec: IdempotentSpec, k: int) -> Poly:
    """g_k F."""
    return g_poly(k, spec.m) * idem_realize(spec)


@lru_cache(maxsize=1 << 16)
def _blade_image(op: OperatorExpr, k: int, m: int, mask: int) -> Poly:
    return op.apply(g_poly(k, m) * Multivector.blade(mask))


def candidate_image(op: OperatorExpr, spec: IdempotentSpec, k: int) -> Poly:
    """op(g_k F), summed from the cached images of g_k times each blade of F."""
    m = spec.m
    out: dict = {}
    for mask, coef in idem_realize(spec).items():
        for key, c in _blade_image(op, k, m, mask).items():
            s = out.get(key, ZERO) + c * coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Poly._wrap(m, out)


def classify_idempotent(spec: IdempotentSpec, k: int, m: int) -> Classification:
    """Parity rule on the gradings of F; no polynomial is built."""
    if spec.m != m:
        raise DomainError(f"spec {spec} has {spec.m} factors, expected m = {m}")
    n = rank_of_algebra(m)
    first = (k + spec.grade_sum(1, 2)) % 2
    if m == 2:
        return Classification.PLUS if first == 0 else Classification.MINUS
    if first:
        return Classification.OTHER
    middle = [spec.grade_sum(2 * a - 1, 2 * a) % 2 for a in range(2, n)]
    if any(middle):
        return Classification.OTHER
    if n == 1:
        return Classification.PLUS
    last = spec.grade_sum(2 * n - 1, 2 * n) % 2
    if m % 2 == 1:
        return Classification.OTHER if last else Classification.PLUS
    return Classification.MINUS if last else Classification.PLUS


def classify_direct(spec: IdempotentSpec, k: int, m: int) -> tuple[Classification, Optional[Weight]]:
    """Classification from the actual H eigenvalues and root images of g_k F."""
    f = hwv_candidate(spec, k)
    images = (candidate_image(cartan(a, m), spec, k) for a in range(1, rank_of_algebra(m) + 1))
    try:
        weight = _weight_from_images(f, images)
    except NotEigen:
        return Classification.OTHER, None
    if weight == plus_weight(k, m):
        kind = Classification.PLUS
    elif m % 2 == 0 and weight == minus_weight(k, m):
        kind = Classification.MINUS
    else:
        return Classification.OTHER, weight
    if any(not candidate_image(op, spec, k).is_zero() for op in positive_roots(m)):
        return Classification.OTHER, weight
    return kind, weight


def enumerate_idempotents(m: int) -> Iterator[IdempotentSpec]:
    """All 4^m specs, lexicographic in L+ < L- < M+ < M-."""
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m}")
    for factors in itertools.product(FACTOR_ORDER, repeat=m):
        yield IdempotentSpec(factors)


def hwv_count(m: int, k: int) -> tuple[int, int]:
    plus = minus = 0
    for spec in enumerate_idempotents(m):
        kind = classify_idempotent(spec, k, m)
        if kind is Classification.PLUS:
            plus += 1
        elif kind is Classification.MINUS:
            minus += 1
    return plus, minus


def hwv_count_direct(m: int, k: int, specs: Optional[Iterable[IdempotentSpec]] = None) -> tuple[int, int]:
    plus = minus = 0
    for spec in specs if specs is not None else enumerate_idempotents(m):
        kind, _ = classify_direct(spec, k, m)
        if kind is Classification.PLUS:
            plus += 1
        elif kind is Classification.MINUS:
            minus += 1
    return plus, minus


def expected_hwv_count(m: int) -> int:
    """2^{2m-n}; for m = 2 each class holds half of the 16 specs."""
    if m == 2:
        return 8
    return 2 ** (2 * m - rank_of_algebra(m))


# --- Orbits ---

MIXED = "mixed"


@dataclass(frozen=True)
class OrbitEdge:
    source: str
    generator: tuple[int, int]
    target: str
    scalar: Coefficient

    def label(self) -> str:
        a, b = self.generator
        return f"({a},{b}) \u00d7 {self.scalar}"


@dataclass
class OrbitReport:
    start: IdempotentSpec
    nodes: list[str] = field(default_factory=list)
    vectors: list[Poly] = field(default_factory=list)
    weights: list[Optional[Weight]] = field(default_factory=list)
    edges: list[OrbitEdge] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.nodes)

    def specs(self) -> list[str]:
        return [node for node in self.nodes if not node.startswith(MIXED)]

    def minus_parities(self) -> set[int]:
        """Parities of the number of negative weight entries."""
        return {sum(1 for w in weight if w < 0) % 2 for weight in self.weights if weight is not None}

    def parity_constant(self) -> bool:
        return len(self.minus_parities()) == 1 and all(w is not None for w in self.weights)

    def to_dot(self) -> str:
        lines = ['digraph "orbit" {']
        for node in self.nodes:
            lines.append(f'  "{node}";')
        for edge in self.edges:
            a, b = edge.generator
            lines.append(f'  "{edge.source}" -> "{edge.target}" [label="({a},{b})"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sign_flip_index(start: IdempotentSpec) -> dict[frozenset, list[IdempotentSpec]]:
    """Specs sharing the start's families, keyed by the blade support of their realization."""
    choices = []
    for factor in start.factors:
        choices.append((factor, factor.tilde()))
    index: dict[frozenset, list[IdempotentSpec]] = {}
    for factors in itertools.product(*choices):
        spec = IdempotentSpec(tuple(factors))
        support = frozenset(idem_realize(spec).blades())
        index.setdefault(support, []).append(spec)
    return index


def _match_spec(
    image: Poly, index: dict[frozenset, list[IdempotentSpec]], m: int
) -> Optional[tuple[IdempotentSpec, Coefficient]]:
    support = frozenset(mask for _, mask in image.keys())
    for spec in index.get(support, ()):
        ratio = image.ratio_to(Poly.ground(m, idem_realize(spec)))
        if ratio is not None:
            return spec, ratio
    return None


def spinor_orbit(start: IdempotentSpec, m: int) -> OrbitReport:
    """Closure of span{start} under every dR(a, b), a < b, on degree 0."""
    if start.m != m:
        raise DomainError(f"start {start} has {start.m} factors, expected m = {m}")
    index = _sign_flip_index(start)
    report = OrbitReport(start=start)
    basis: EchelonBasis = EchelonBasis()
    queue: list[tuple[str, Poly]] = []

    def add(node: str, f: Poly) -> bool:
        if not basis.insert(f.as_vector()):
            return False
        report.nodes.append(node)
        report.vectors.append(f)
        try:
            report.weights.append(weight_of(f, m))
        except NotEigen:
            report.weights.append(None)
        queue.append((node, f))
        return True

    add(str(start), Poly.ground(m, idem_realize(start)))
    pairs = list(itertools.combinations(range(1, m + 1), 2))
    while queue:
        node, f = queue.pop(0)
        for a, b in pairs:
            image = dR(a, b, m).apply(f)
            if image.is_zero():
                continue
            match = _match_spec(image, index, m)
            if match is None:
                target = f"{MIXED}{len(report.nodes)}"
                if add(target, image):
                    report.edges.append(OrbitEdge(node, (a, b), target, ONE))
                continue
            spec, ratio = match
            target = str(spec)
            if target not in report.nodes:
                add(target, Poly.ground(m, idem_realize(spec)))
            report.edges.append(OrbitEdge(node, (a, b), target, ratio))
    log.info("orbit of %s at m = %d has dimension %d", start, m, report.dimension)
    return report


def expected_orbit_dimension(m: int) -> int:
    n = rank_of_algebra(m)
    return 2 ** (n - 1) if m % 2 == 0 else 2 ** n


def submodule_closure(f: Poly, m: int) -> list[Poly]:
    """Basis of the smallest dR-invariant subspace containing f."""
    basis: EchelonBasis = EchelonBasis()
    found: list[Poly] = []
    queue = [f]
    if not basis.insert(f.as_vector()):
        return found
    found.append(f)
    generators = rotations(m)
    while queue:
        current = queue.pop(0)
        for op in generators:
            image = op.apply(current)
            if not image.is_zero() and basis.insert(image.as_vector()):
                found.append(image)
                queue.append(image)
    log.debug("submodule closure at m = %d has dimension %d", m, len(found))
    return found


# --- Bracket tables ---

def operator_vector(op: OperatorExpr, m: int, max_degree: int) -> dict:
    """The expanded normal form of op over every alpha of degree <= max_degree."""
    out = {}
    for alpha in monomials_up_to(m, max_degree):
        for (alpha2, lm, rm), coef in expand_table(op.table(alpha)).items():
            out[(alpha, alpha2, lm, rm)] = coef
    return out


@dataclass(frozen=True)
class BracketEntry:
    left: str
    right: str
    combination: Optional[tuple[tuple[str, Coefficient], ...]]

    def render(self) -> str:
        head = f"[{self.left}, {self.right}]"
        if self.combination is None:
            return f"{head} = <not in span>"
        if not self.combination:
            return f"{head} = 0"
        terms = " + ".join(f"({c}) {name}" for name, c in self.combination)
        return f"{head} = {terms}"


def bracket_table(m: int, max_degree: int) -> list[BracketEntry]:
    """[A, B] for every unordered pair of Cartan-basis operators, expanded over the basis."""
    ops = cartan_basis(m)
    names = [op.describe() for op in ops]
    vectors = [operator_vector(op, m, max_degree) for op in ops]
    entries = []
    for i, j in itertools.combinations(range(len(ops)), 2):
        target = operator_vector(bracket(ops[i], ops[j]), m, max_degree)
        coefs = solve_combination(vectors, target)
        if coefs is None:
            log.warning("[%s, %s] is not a combination of the Cartan basis", names[i], names[j])
            entries.append(BracketEntry(names[i], names[j], None))
            continue
        combination = tuple((names[t], c) for t, c in enumerate(coefs) if c != ZERO)
        entries.append(BracketEntry(names[i], names[j], combination))
    return entries


def cartan_basis_rank(m: int, max_degree: int) -> int:
    return rank_of([operator_vector(op, m, max_degree) for op in cartan_basis(m)])
