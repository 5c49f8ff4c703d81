"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping a totally ordered coordinate key to a nonzero
int or Fraction.  No floating point anywhere; every routine is
deterministic given its input order.
"""

from __future__ import annotations

import math
from fractions import Fraction


def axpy(target: dict, source: dict, factor) -> None:
    """In place target += factor * source, dropping entries that become zero."""
    if not factor:
        return
    for key, value in source.items():
        new = target.get(key, 0) + factor * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def kernel_of_columns(columns: list[dict]) -> list[dict[int, Fraction]]:
    """Kernel of the linear map whose j-th column vector is ``columns[j]``.

    Returns combination vectors over column indices 0..len(columns)-1.
    The spanning set depends on the processing order; callers that need a
    canonical basis should run the result through rref().
    """
    pivots: dict = {}  # leading key -> (column residue, combination)
    kernel = []
    for j, column in enumerate(columns):
        vec = {k: Fraction(v) for k, v in column.items() if v}
        combo = {j: Fraction(1)}
        while vec:
            lead = min(vec)
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (vec, combo)
                break
            pvec, pcombo = hit
            factor = -vec[lead] / pvec[lead]
            axpy(vec, pvec, factor)
            axpy(combo, pcombo, factor)
        else:
            kernel.append(combo)
    return kernel


def rref(rows: list[dict]) -> tuple[list[dict], list]:
    """Reduced row echelon form of the span of ``rows``.

    Pivots are taken at the first nonzero column of each surviving row,
    rows processed in input order; the output depends only on the row
    space.  Returns (reduced rows sorted by pivot column, pivot columns).
    """
    pivot_rows: dict = {}
    for row in rows:
        vec = {k: Fraction(v) for k, v in row.items() if v}
        while vec:
            hits = [k for k in vec if k in pivot_rows]
            if not hits:
                break
            k = min(hits)
            axpy(vec, pivot_rows[k], -vec[k])
        if vec:
            lead = min(vec)
            scale = vec[lead]
            vec = {k: v / scale for k, v in vec.items()}
            for other in pivot_rows.values():
                if lead in other:
                    axpy(other, vec, -other[lead])
            pivot_rows[lead] = vec
    pivot_cols = sorted(pivot_rows)
    return [pivot_rows[c] for c in pivot_cols], pivot_cols


def rank_of_rows(rows: list[dict]) -> int:
    return len(rref(rows)[1])


def make_primitive(row: dict) -> dict:
    """Scale a rational row to coprime integers, leading entry positive."""
    if not row:
        return {}
    denom = 1
    for value in row.values():
        denom = math.lcm(denom, Fraction(value).denominator)
    scaled = {k: int(Fraction(v) * denom) for k, v in row.items()}
    content = math.gcd(*scaled.values())
    if scaled[min(scaled)] < 0:
        content = -content
    return {k: v // content for k, v in scaled.items()}


def int_det(matrix: list[list[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
