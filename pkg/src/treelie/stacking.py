"""Leg-contraction products on colored diagram sums.

A stacking form is an integer matrix s on the symplectic basis
x1, y1, ..., xg, yg whose antisymmetrization is the intersection form:
s - s^T = J with J(x_i, y_i) = 1 = -J(y_i, x_i).  The star product glues
legs of the left factor to legs of the right factor along matchings,
weighting each glued pair (a, b) by s(color a, color b) and each matching
of size l by (-1)^l; the empty matching contributes the disjoint union.
"""

from __future__ import annotations

from fractions import Fraction

from .diagrams import Diagram, DiagramSum, EMPTY_DIAGRAM, glue_raw, canonicalize


def intersection_matrix(genus: int):
    m = 2 * genus
    J = [[0] * m for _ in range(m)]
    for i in range(genus):
        J[2 * i][2 * i + 1] = 1
        J[2 * i + 1][2 * i] = -1
    return J


class StackingForm:
    """Integer bilinear form with s - s^T equal to the intersection form."""

    __slots__ = ("genus", "rank", "matrix", "_key")

    def __init__(self, matrix):
        m = len(matrix)
        if m % 2 or m == 0:
            raise ValueError("rank must be even and positive")
        rows = [tuple(int(x) for x in row) for row in matrix]
        if any(len(r) != m for r in rows):
            raise ValueError("matrix must be square")
        J = intersection_matrix(m // 2)
        for i in range(m):
            for j in range(m):
                if rows[i][j] - rows[j][i] != J[i][j]:
                    raise ValueError(
                        "matrix minus its transpose must equal the intersection form"
                    )
        self.genus = m // 2
        self.rank = m
        self.matrix = rows
        self._key = ("stack", tuple(rows))

    def value(self, a: int, b: int) -> int:
        return self.matrix[a - 1][b - 1]

    def to_json(self):
        return {"genus": self.genus, "matrix": [list(r) for r in self.matrix]}

    def __repr__(self):
        return f"StackingForm(genus={self.genus})"


def default_stacking(genus: int) -> StackingForm:
    """The upper-triangular solution: s(x_i, y_i) = 1, all else 0."""
    if genus < 1:
        raise ValueError("genus must be >= 1")
    m = 2 * genus
    s = [[0] * m for _ in range(m)]
    for i in range(genus):
        s[2 * i][2 * i + 1] = 1
    return StackingForm(s)


class SkewForm:
    """Exact antisymmetric pairing on the generator basis."""

    __slots__ = ("rank", "matrix", "_key")

    def __init__(self, matrix):
        m = len(matrix)
        rows = [tuple(Fraction(x) for x in row) for row in matrix]
        if any(len(r) != m for r in rows):
            raise ValueError("matrix must be square")
        for i in range(m):
            for j in range(m):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError("matrix must be antisymmetric")
        self.rank = m
        self.matrix = rows
        self._key = ("skew", tuple(rows))

    def value(self, a, b):
        return self.matrix[a - 1][b - 1]


def omega_form(genus: int) -> SkewForm:
    """The intersection pairing itself, as a skew form."""
    return SkewForm(intersection_matrix(genus))


_STAR_MEMO: dict = {}


def _star_pair(d1: Diagram, d2: Diagram, form: StackingForm) -> dict:
    """Star of two canonical diagrams as a Diagram -> coeff dict.

    Sums over matchings between legs of d1 and legs of d2 (each unordered
    matching once), pruned to pairs with nonzero form weight.
    """
    key = (d1, d2, form._key)
    hit = _STAR_MEMO.get(key)
    if hit is not None:
        return hit
    value = form.value
    legs1 = d1.legs
    legs2 = d2.legs
    n1 = len(legs1)
    out: dict = {}

    def emit(pairs, weight):
        sign = -1 if len(pairs) % 2 else 1
        raw = glue_raw(d1, d2, pairs)
        res = canonicalize(*raw)
        if res is None:
            return
        d, csign = res
        coeff = sign * csign * weight
        new = out.get(d, 0) + coeff
        if new:
            out[d] = new
        else:
            del out[d]

    used2 = [False] * len(legs2)
    pairs = []

    def rec(i, weight):
        if i == n1:
            emit(pairs, weight)
            return
        rec(i + 1, weight)  # leg i stays free
        c1 = legs1[i]
        for j, c2 in enumerate(legs2):
            if used2[j]:
                continue
            w = value(c1, c2)
            if w:
                used2[j] = True
                pairs.append((i, j))
                rec(i + 1, weight * w)
                pairs.pop()
                used2[j] = False

    rec(0, 1)
    _STAR_MEMO[key] = out
    return out


def _as_sum(x) -> DiagramSum:
    if isinstance(x, Diagram):
        return DiagramSum.single(x)
    return x


def star(left, right, form: StackingForm) -> DiagramSum:
    """Bilinear extension of the matching-sum product; unit = empty diagram."""
    left = _as_sum(left)
    right = _as_sum(right)
    terms: dict = {}
    for d1, c1 in left.terms.items():
        for d2, c2 in right.terms.items():
            c = c1 * c2
            for d, k in _star_pair(d1, d2, form).items():
                new = terms.get(d, 0) + c * k
                if new:
                    terms[d] = new
                else:
                    del terms[d]
    return DiagramSum(terms)


def stack_bracket(left, right, form: StackingForm) -> DiagramSum:
    """star(left, right) - star(right, left); disjoint-union terms cancel."""
    return star(left, right, form) - star(right, left, form)


def contraction_bracket(left, right, skew: SkewForm) -> DiagramSum:
    """Single-pair gluings weighted by the skew form, no sign, bilinear."""
    left = _as_sum(left)
    right = _as_sum(right)
    out = DiagramSum()
    for d1, c1 in left.terms.items():
        for d2, c2 in right.terms.items():
            c = c1 * c2
            for i, a in enumerate(d1.legs):
                for j, b in enumerate(d2.legs):
                    w = skew.value(a, b)
                    if w:
                        out.add_raw(*glue_raw(d1, d2, [(i, j)]), coeff=c * w)
    return out


def project_trees(dsum: DiagramSum) -> DiagramSum:
    """Drop every diagram of loop rank >= 1."""
    return DiagramSum(
        {d: c for d, c in dsum.terms.items() if d.loop_rank == 0}
    )


def star_unit() -> DiagramSum:
    return DiagramSum.single(EMPTY_DIAGRAM)
