"""Exact sparse Gaussian elimination over a field.

Rows are dicts column -> entry.  Entries may be gmpy2 rationals or CycScalars;
only +, -, *, / and truthiness are used.
"""

from __future__ import annotations

from typing import Iterable


def _sub_scaled(row: dict, piv: dict, f) -> None:
    for c, v in piv.items():
        x = row.get(c)
        if x is None:
            row[c] = -(f * v)
        else:
            x = x - f * v
            if x:
                row[c] = x
            else:
                del row[c]


def echelon(rows: Iterable[dict]) -> dict[int, dict]:
    """Reduced echelon form; returns pivot column -> normalized row (pivot entry 1)."""
    pivots: dict[int, dict] = {}
    for r in rows:
        row = {c: v for c, v in r.items() if v}
        # pivot rows are kept fully reduced, so one pass clears every pivot column
        for pc in [c for c in row if c in pivots]:
            _sub_scaled(row, pivots[pc], row[pc])
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        for other in pivots.values():
            if pc in other:
                _sub_scaled(other, row, other[pc])
        pivots[pc] = row
    return pivots


def rank(rows: Iterable[dict]) -> int:
    return len(echelon(rows))


def dense_to_rows(matrix) -> list[dict]:
    return [{j: v for j, v in enumerate(r) if v} for r in matrix]


def nullspace(rows: Iterable[dict], ncols: int, one) -> list[dict]:
    """Basis of {x : rows . x = 0}; `one` is the field's unit element."""
    piv = echelon(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        vec = {fc: one}
        for pc, row in piv.items():
            v = row.get(fc)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def solve_in_span(basis: list[dict], target: dict):
    """Coefficients x with sum x_j basis_j = target, or None if not in the span."""
    # columns of the system are the basis vectors; transpose into rows
    keys = sorted({k for b in basis for k in b} | set(target))
    nb = len(basis)
    rows = []
    for k in keys:
        row = {j: b[k] for j, b in enumerate(basis) if b.get(k)}
        t = target.get(k)
        if t:
            row[nb] = t
        rows.append(row)
    piv = echelon(rows)
    if nb in piv:
        return None
    coeffs = [None] * nb
    for pc, row in piv.items():
        coeffs[pc] = row.get(nb)
    return coeffs


def same_span(a: list[dict], b: list[dict]) -> bool:
    ra = rank(a)
    return ra == rank(b) == rank(list(a) + list(b))


class Coordinatizer:
    """Coordinates with respect to a fixed linearly independent family.

    Vectors are dicts with arbitrary hashable keys.  The family is reduced once,
    augmented by tag columns, so each later query is a single reduction pass.
    """

    def __init__(self, basis: list[dict], one):
        keys = sorted({k for b in basis for k in b})
        self._col = {k: i for i, k in enumerate(keys)}
        self.size = len(basis)
        self.one = one
        tag0 = len(keys)
        rows = []
        for j, b in enumerate(basis):
            row = {self._col[k]: v for k, v in b.items() if v}
            row[tag0 + j] = one
            rows.append(row)
        self._tag0 = tag0
        self._piv = echelon(rows)
        if any(pc >= tag0 for pc in self._piv):
            raise ValueError("family is linearly dependent")

    def coords(self, vec: dict):
        """Coefficient list, or None when vec is outside the span."""
        row = {}
        for k, v in vec.items():
            if not v:
                continue
            c = self._col.get(k)
            if c is None:
                return None
            row[c] = v
        for pc in [c for c in row if c in self._piv]:
            _sub_scaled(row, self._piv[pc], row[pc])
        if any(c < self._tag0 for c in row):
            return None
        zero = self.one - self.one
        return [-row[self._tag0 + j] if (self._tag0 + j) in row else zero
                for j in range(self.size)]


def unit_pivot_determinant(matrix):
    """Eliminate over a ring using only unit pivots.

    Each entry must provide `is_unit()` and `inverse()`.  Returns the
    determinant as a product of unit pivots (times a sign), or None when
    at some stage no unit pivot is available.
    """
    m = [list(r) for r in matrix]
    n = len(m)
    det = None
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] and m[r][col].is_unit()), None)
        if piv is None:
            return None
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        det = p if det is None else det * p
        inv = p.inverse()
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det if sign == 1 else -det


def mat_mul(a, b, zero):
    """Dense product of two list-of-lists matrices."""
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [zero] * cols
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in enumerate(b[k]):
                if y:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
