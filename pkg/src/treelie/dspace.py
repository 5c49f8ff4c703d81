"""Kernel of the bracket contraction H (x) L_n -> L_{n+1}.

Elements of H (x) L_n are stored as HTensorLie: a list of Lie elements,
one per generator, the i-th entry being the part tensored with the i-th
generator.  The contraction sends g_i (x) u to [g_i, u]; its kernel is
the space whose exact basis dn_basis computes, integrally and primitively
so vectors can later be realized by group automorphisms.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .freelie import LieElement, bracket_str, dim_lie, lie_bracket, lyndon_bracketing, lyndon_words


class HTensorLie:
    """Element of H (x) L_n: one degree-n Lie coordinate per generator."""

    __slots__ = ("rank", "degree", "parts")

    def __init__(self, rank: int, degree: int, parts=None):
        if rank < 1 or degree < 1:
            raise ValueError("rank and degree must be >= 1")
        self.rank = rank
        self.degree = degree
        if parts is None:
            parts = [LieElement.zero(rank, degree) for _ in range(rank)]
        parts = list(parts)
        if len(parts) != rank:
            raise ValueError(f"expected {rank} coordinates, got {len(parts)}")
        for part in parts:
            if part.rank != rank or part.degree != degree:
                raise ValueError("coordinate rank or degree mismatch")
        self.parts = parts

    @classmethod
    def zero(cls, rank, degree):
        return cls(rank, degree)

    @classmethod
    def single(cls, rank, index, element):
        """index (x) element, with index a generator 1..rank."""
        if not 1 <= index <= rank:
            raise ValueError(f"generator index {index} out of range 1..{rank}")
        out = cls(rank, element.degree)
        out.parts[index - 1] = element
        return out

    def _check(self, other):
        if self.rank != other.rank or self.degree != other.degree:
            raise ValueError("rank or degree mismatch")

    def __add__(self, other):
        self._check(other)
        return HTensorLie(
            self.rank, self.degree, [a + b for a, b in zip(self.parts, other.parts)]
        )

    def __neg__(self):
        return HTensorLie(self.rank, self.degree, [-p for p in self.parts])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return HTensorLie(self.rank, self.degree, [p.scale(factor) for p in self.parts])

    def __eq__(self, other):
        return (
            isinstance(other, HTensorLie)
            and self.rank == other.rank
            and self.degree == other.degree
            and self.parts == other.parts
        )

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def to_json(self):
        return {
            "rank": self.rank,
            "degree": self.degree,
            "parts": [
                {"generator": f"g{i + 1}", "value": part.to_json()}
                for i, part in enumerate(self.parts)
                if not part.is_zero()
            ],
        }

    def __repr__(self):
        parts = [
            f"g{i + 1} (x) ({part!r})" for i, part in enumerate(self.parts) if not part.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


def bracket_contraction(element: HTensorLie) -> LieElement:
    """g_i (x) u  |->  [g_i, u], summed over coordinates."""
    out = LieElement.zero(element.rank, element.degree + 1)
    for i, part in enumerate(element.parts):
        if part.is_zero():
            continue
        out = out + lie_bracket(LieElement.generator(element.rank, i + 1), part)
    return out


def _domain_index(rank: int, degree: int):
    """Flat coordinates on H (x) L_n: (generator, Lyndon word) pairs."""
    words = lyndon_words(rank, degree)
    return [(gen, word) for gen in range(1, rank + 1) for word in words]


def dn_rank(rank: int, degree: int) -> int:
    """dim ker = m*dim L_n - dim L_{n+1}; the contraction is onto."""
    return rank * dim_lie(rank, degree) - dim_lie(rank, degree + 1)


def dn_basis(rank: int, degree: int) -> list[HTensorLie]:
    """Exact integral basis of the contraction kernel."""
    pairs = _domain_index(rank, degree)
    target_words = {w: k for k, w in enumerate(lyndon_words(rank, degree + 1))}
    columns = []
    for gen, word in pairs:
        image = lie_bracket(
            LieElement.generator(rank, gen), LieElement.basis_element(rank, word)
        )
        columns.append({target_words[w]: Fraction(c) for w, c in image.coeffs.items()})
    kernel = linalg.kernel_of_columns(columns)
    reduced, _ = linalg.rref(kernel)
    reduced = [linalg.make_primitive(row) for row in reduced]
    if degree == 1 and rank % 2 == 0:
        _adjust_degree_one(reduced, rank)
    basis = []
    for row in reduced:
        element = HTensorLie.zero(rank, degree)
        for j, coeff in row.items():
            gen, word = pairs[j]
            element = element + HTensorLie.single(
                rank, gen, LieElement.basis_element(rank, word).scale(coeff)
            )
        basis.append(element)
    if len(basis) != dn_rank(rank, degree):
        raise AssertionError(
            f"kernel dimension {len(basis)} != predicted {dn_rank(rank, degree)}"
        )
    return basis


def _adjust_degree_one(rows: list, rank: int) -> None:
    """Unimodular change making every degree-1 basis vector realizable.

    The degree-1 kernel is the symmetric square; the echelon basis contains
    g_a (x) g_b + g_b (x) g_a for each symplectic pair (a, b = a+1, a odd),
    and 1 + SJ is singular for exactly those vectors, so no free-group
    automorphism induces them.  Adding the two diagonal vectors g_a (x) g_a
    and g_b (x) g_b fixes that (the block becomes unipotent-conjugate) and
    keeps an integral basis.
    """
    by_pivot = {min(row): row for row in rows if row}
    for a in range(1, rank, 2):
        b = a + 1
        pair = by_pivot.get((a - 1) * rank + (b - 1))
        diag_a = by_pivot.get((a - 1) * rank + (a - 1))
        diag_b = by_pivot.get((b - 1) * rank + (b - 1))
        if pair is None or diag_a is None or diag_b is None:
            raise AssertionError("degree-1 kernel basis lost its expected shape")
        linalg.axpy(pair, diag_a, Fraction(1))
        linalg.axpy(pair, diag_b, Fraction(1))


def dn_contains(element: HTensorLie) -> bool:
    """Kernel membership: the contraction to the next graded piece vanishes."""
    return bracket_contraction(element).is_zero()


def coordinates_in_basis(element: HTensorLie, basis: list[HTensorLie]):
    """Coefficients of element in the given independent basis, or None."""
    pairs = _domain_index(element.rank, element.degree)
    index = {pair: k for k, pair in enumerate(pairs)}

    def flatten(e):
        vec = {}
        for i, part in enumerate(e.parts):
            for word, coeff in part.coeffs.items():
                vec[index[(i + 1, word)]] = Fraction(coeff)
        return vec

    target = flatten(element)
    if not basis:
        return [] if not target else None
    # A kernel vector of [b_1 ... b_k | target] with nonzero last entry
    # solves sum c_i b_i = target; independence keeps the kernel <= 1 dim.
    columns = [flatten(b) for b in basis] + [target]
    for vec in linalg.kernel_of_columns(columns):
        scale = vec.get(len(basis))
        if scale:
            return [-vec.get(k, Fraction(0)) / scale for k in range(len(basis))]
    return None


def pretty_basis(basis: list[HTensorLie]) -> list[str]:
    return [repr(b) for b in basis]


def describe_word(word) -> str:
    return bracket_str(lyndon_bracketing(tuple(word)))
