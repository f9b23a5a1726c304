"""
Exact linear algebra over Q(i, sqrt 2).

Rows are stored sparsely (column -> Coefficient); only nonzero entries are kept.
Pivoting is leftmost-first-nonzero, which is deterministic and, with exact
arithmetic, needs no numerical care.
"""
from __future__ import annotations

import logging
from typing import Generic, Hashable, Iterable, Optional, Sequence, TypeVar

from engine.scalar_field import ONE, ZERO, Coefficient, Scalar

log = logging.getLogger(__name__)

K = TypeVar("K", bound=Hashable)
SparseVector = dict

# --- Helper Functions ---


def axpy(y: dict, a: Coefficient, x: dict) -> None:
    """y += a * x in place, dropping entries that cancel."""
    for key, value in x.items():
        s = y.get(key, ZERO) + a * value
        if s:
            y[key] = s
        else:
            y.pop(key, None)


def scale_vector(x: dict, a: Scalar) -> dict:
    c = Coefficient.coerce(a)
    if not c:
        return {}
    return {k: v * c for k, v in x.items()}


def clean(x: dict) -> dict:
    return {k: Coefficient.coerce(v) for k, v in x.items() if v}


# --- Matrices ---

class MatrixExact:
    """A matrix with explicit shape and exact entries; zero entries are implicit."""

    def __init__(self, n_rows: int, n_cols: int, rows: Optional[Sequence[dict]] = None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        if rows is None:
            rows = [{} for _ in range(n_rows)]
        if len(rows) != n_rows:
            raise ValueError(f"expected {n_rows} rows, got {len(rows)}")
        self.rows = []
        for row in rows:
            cleaned = clean(row)
            if any(not 0 <= c < n_cols for c in cleaned):
                raise ValueError(f"column index out of range 0..{n_cols - 1}")
            self.rows.append(cleaned)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Scalar]], n_cols: Optional[int] = None) -> "MatrixExact":
        if n_cols is None:
            n_cols = len(data[0]) if data else 0
        rows = [{j: v for j, v in enumerate(row) if v} for row in data]
        return cls(len(data), n_cols, rows)

    @classmethod
    def identity(cls, n: int) -> "MatrixExact":
        return cls(n, n, [{i: ONE} for i in range(n)])

    def to_dense(self) -> list[list[Coefficient]]:
        return [[row.get(j, ZERO) for j in range(self.n_cols)] for row in self.rows]

    def get(self, i: int, j: int) -> Coefficient:
        return self.rows[i].get(j, ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixExact):
            return NotImplemented
        return (self.n_rows, self.n_cols, self.rows) == (other.n_rows, other.n_cols, other.rows)

    __hash__ = None

    def mul_vector(self, v: Sequence[Scalar]) -> list[Coefficient]:
        out = []
        for row in self.rows:
            acc = ZERO
            for j, value in row.items():
                if v[j]:
                    acc = acc + value * v[j]
            out.append(acc)
        return out

    def rank(self) -> int:
        return rref(self)[1]

    def __repr__(self) -> str:
        return f"MatrixExact({self.n_rows}x{self.n_cols}, nnz={sum(len(r) for r in self.rows)})"


def rref(matrix: MatrixExact) -> tuple[MatrixExact, int]:
    """Reduced row echelon form and rank."""
    pivot_rows: dict[int, dict] = {}
    for source in matrix.rows:
        if not source:
            continue
        row = dict(source)
        # pivot rows are fully reduced, so one pass over the pivot columns suffices
        for col in [c for c in row if c in pivot_rows]:
            if col in row:
                axpy(row, -row[col], pivot_rows[col])
        if not row:
            continue
        pivot = min(row)
        row = scale_vector(row, row[pivot].inv())
        for other in pivot_rows.values():
            if pivot in other:
                axpy(other, -other[pivot], row)
        pivot_rows[pivot] = row
    ordered = [pivot_rows[c] for c in sorted(pivot_rows)]
    rank = len(ordered)
    ordered.extend({} for _ in range(matrix.n_rows - rank))
    return MatrixExact(matrix.n_rows, matrix.n_cols, ordered), rank


def kernel_basis(matrix: MatrixExact) -> list[list[Coefficient]]:
    """Exact basis of the right null space, one vector per free column."""
    reduced, rank = rref(matrix)
    pivots = {min(row): row for row in reduced.rows[:rank]}
    basis = []
    for free in range(matrix.n_cols):
        if free in pivots:
            continue
        v = [ZERO] * matrix.n_cols
        v[free] = ONE
        for pivot, row in pivots.items():
            if free in row:
                v[pivot] = -row[free]
        basis.append(v)
    log.debug("kernel of %r has dimension %d", matrix, len(basis))
    return basis


# --- Incremental spans ---

class EchelonBasis(Generic[K]):
    """
    Rows in insertion order, each with a distinct pivot that no later row
    contains. Optionally tracks every row as a combination of inserted tags.
    """

    def __init__(self):
        self._rows: list[tuple[K, dict, dict]] = []
        self.vectors: list[dict] = []

    def __len__(self) -> int:
        return len(self._rows)

    def pivots(self) -> list[K]:
        return [p for p, _, _ in self._rows]

    def _reduce(self, v: dict) -> tuple[dict, dict]:
        residue = dict(v)
        combo: dict = {}
        for pivot, row, row_combo in self._rows:
            c = residue.get(pivot)
            if c:
                axpy(residue, -c, row)
                axpy(combo, c, row_combo)
        return residue, combo

    def reduce(self, v: dict) -> dict:
        return self._reduce(v)[0]

    def contains(self, v: dict) -> bool:
        return not self._reduce(v)[0]

    def insert(self, v: dict, tag: Optional[Hashable] = None) -> bool:
        """Adds v when it is not already in the span; returns whether it was added."""
        residue, combo = self._reduce(v)
        if not residue:
            return False
        pivot = min(residue)
        lead_inv = residue[pivot].inv()
        # residue = v - combo, expressed over the inserted tags
        row_combo = {} if tag is None else {tag: ONE}
        axpy(row_combo, -ONE, combo)
        self._rows.append((pivot, scale_vector(residue, lead_inv), scale_vector(row_combo, lead_inv)))
        self.vectors.append(dict(v))
        return True

    def express(self, v: dict) -> Optional[dict]:
        """Tag coefficients c with v = sum c[tag] * inserted[tag], or None."""
        residue, combo = self._reduce(v)
        if residue:
            return None
        return combo


def span_insert(basis: EchelonBasis, v: dict) -> tuple[EchelonBasis, bool]:
    inserted = basis.insert(v)
    return basis, inserted


def solve_combination(vectors: Sequence[dict], target: dict) -> Optional[list[Coefficient]]:
    """Coefficients c with target = sum c_i vectors[i], or None when target is outside the span."""
    basis: EchelonBasis = EchelonBasis()
    for index, v in enumerate(vectors):
        basis.insert(v, tag=index)
    combo = basis.express(target)
    if combo is None:
        return None
    return [combo.get(i, ZERO) for i in range(len(vectors))]


def rank_of(vectors: Iterable[dict]) -> int:
    basis: EchelonBasis = EchelonBasis()
    for v in vectors:
        basis.insert(v)
    return len(basis)
