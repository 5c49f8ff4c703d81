"""The free Lie algebra over Q in the Lyndon basis.

Basis brackets are indexed by Lyndon words over 1..rank (lexicographic
order, g1 < g2 < ... ).  The bracketing of a Lyndon word is the standard
right factorization: w = uv with v the lexicographically least proper
suffix.  The tensor expansion of such a bracket is triangular with
leading monomial w and coefficient 1, which is what from_tensor exploits
to write an arbitrary Lie tensor in the basis.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .freegroup import GroupWord
from .magnus import NcSeries, leading_term


@lru_cache(maxsize=None)
def lyndon_words(rank: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All Lyndon words of the given length over 1..rank, lex ordered."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if degree < 1:
        raise ValueError("degree must be >= 1")
    out = []
    w = [1]
    while w:
        if len(w) == degree:
            out.append(tuple(w))
        # Duval iteration: extend periodically, then increment the tail.
        w = [w[i % len(w)] for i in range(degree)]
        while w and w[-1] == rank:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(out)


def is_lyndon(word: tuple[int, ...]) -> bool:
    n = len(word)
    if n == 0:
        return False
    return all(word < word[i:] + word[:i] for i in range(1, n))


@lru_cache(maxsize=None)
def lyndon_bracketing(word: tuple[int, ...]):
    """Nested-pair bracketing of a Lyndon word; leaves are generator indices."""
    if not is_lyndon(word):
        raise ValueError(f"{word} is not a Lyndon word")
    if len(word) == 1:
        return word[0]
    suffix = min(word[i:] for i in range(1, len(word)))
    left = word[: len(word) - len(suffix)]
    return (lyndon_bracketing(left), lyndon_bracketing(suffix))


def bracket_str(bracketing) -> str:
    if isinstance(bracketing, int):
        return f"g{bracketing}"
    left, right = bracketing
    return f"[{bracket_str(left)},{bracket_str(right)}]"


def lyndon_basis(rank: int, degree: int):
    """Ordered basis of the degree-n part, as nested bracketings."""
    return [lyndon_bracketing(w) for w in lyndon_words(rank, degree)]


def _mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def dim_lie(rank: int, degree: int) -> int:
    """Witt formula: (1/n) sum_{d|n} mu(d) rank^(n/d)."""
    if rank < 1 or degree < 1:
        raise ValueError("rank and degree must be >= 1")
    total = 0
    for d in range(1, degree + 1):
        if degree % d == 0:
            total += _mobius(d) * rank ** (degree // d)
    return total // degree


_BRACKET_TENSOR_CACHE: dict = {}


def _bracket_tensor(word: tuple[int, ...]) -> dict:
    """Tensor expansion of the Lyndon bracket of ``word`` (monomial -> int)."""
    cached = _BRACKET_TENSOR_CACHE.get(word)
    if cached is not None:
        return cached
    if len(word) == 1:
        result = {word: 1}
    else:
        suffix = min(word[i:] for i in range(1, len(word)))
        left = _bracket_tensor(word[: len(word) - len(suffix)])
        right = _bracket_tensor(suffix)
        result = {}
        for a, ca in left.items():
            for b, cb in right.items():
                for mono, c in ((a + b, ca * cb), (b + a, -ca * cb)):
                    new = result.get(mono, 0) + c
                    if new:
                        result[mono] = new
                    else:
                        del result[mono]
    _BRACKET_TENSOR_CACHE[word] = result
    return result


class LieElement:
    """Homogeneous element, stored as Lyndon-word -> exact coefficient."""

    __slots__ = ("rank", "degree", "coeffs")

    def __init__(self, rank: int, degree: int, coeffs=None):
        if rank < 1 or degree < 1:
            raise ValueError("rank and degree must be >= 1")
        self.rank = rank
        self.degree = degree
        clean = {}
        for word, coeff in (coeffs or {}).items():
            word = tuple(word)
            if not coeff:
                continue
            if len(word) != degree:
                raise ValueError(f"word {word} does not have degree {degree}")
            if not is_lyndon(word):
                raise ValueError(f"{word} is not a Lyndon word")
            if any(not 1 <= i <= rank for i in word):
                raise ValueError(f"{word} has letters out of range 1..{rank}")
            clean[word] = coeff
        self.coeffs = clean

    @classmethod
    def zero(cls, rank, degree):
        return cls(rank, degree)

    @classmethod
    def basis_element(cls, rank, word):
        word = tuple(word)
        return cls(rank, len(word), {word: 1})

    @classmethod
    def generator(cls, rank, index):
        return cls.basis_element(rank, (index,))

    def _check(self, other):
        if self.rank != other.rank or self.degree != other.degree:
            raise ValueError("rank or degree mismatch")

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for word, c in other.coeffs.items():
            new = coeffs.get(word, 0) + c
            if new:
                coeffs[word] = new
            else:
                del coeffs[word]
        return LieElement(self.rank, self.degree, coeffs)

    def __neg__(self):
        return LieElement(self.rank, self.degree, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        if not factor:
            return LieElement.zero(self.rank, self.degree)
        return LieElement(self.rank, self.degree, {w: factor * c for w, c in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.rank == other.rank
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def is_zero(self):
        return not self.coeffs

    def sorted_terms(self):
        return sorted(self.coeffs.items())

    def to_json(self):
        return {
            "rank": self.rank,
            "degree": self.degree,
            "terms": [
                {"basis": bracket_str(lyndon_bracketing(w)), "coeff": str(Fraction(c))}
                for w, c in self.sorted_terms()
            ],
        }

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for word, coeff in self.sorted_terms():
            name = bracket_str(lyndon_bracketing(word))
            if coeff == 1:
                parts.append(name)
            elif coeff == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{coeff}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def to_tensor(element: LieElement, cap: int | None = None) -> NcSeries:
    """Tensor expansion; brackets expand by [a, b] -> ab - ba."""
    cap = element.degree if cap is None else cap
    terms: dict = {}
    for word, coeff in element.coeffs.items():
        for mono, k in _bracket_tensor(word).items():
            new = terms.get(mono, 0) + coeff * k
            if new:
                terms[mono] = new
            else:
                del terms[mono]
    return NcSeries(element.rank, cap, terms)


def from_tensor(series: NcSeries) -> LieElement:
    """Inverse of to_tensor on homogeneous Lie tensors.

    Peels the lexicographically least monomial, which for a Lie tensor is
    a Lyndon word whose bracket has unit leading coefficient; raises
    ValueError when the series is not a Lie element.
    """
    if series.is_zero():
        raise ValueError("cannot read a degree off the zero series")
    degrees = {len(m) for m in series.terms}
    if len(degrees) != 1:
        raise ValueError("series is not homogeneous")
    (degree,) = degrees
    if degree == 0:
        raise ValueError("degree-0 series is not a Lie element")
    rest = dict(series.terms)
    coeffs = {}
    while rest:
        word = min(rest)
        if not is_lyndon(word):
            raise ValueError("series is not in the image of the free Lie algebra")
        coeff = rest[word]
        for mono, k in _bracket_tensor(word).items():
            new = rest.get(mono, 0) - coeff * k
            if new:
                rest[mono] = new
            else:
                del rest[mono]
        coeffs[word] = coeff
    return LieElement(series.rank, degree, coeffs)


def lie_bracket(left: LieElement, right: LieElement) -> LieElement:
    """[left, right], expanded back into the Lyndon basis."""
    if left.rank != right.rank:
        raise ValueError("rank mismatch")
    degree = left.degree + right.degree
    a = to_tensor(left, cap=degree)
    b = to_tensor(right, cap=degree)
    commutator = a * b - b * a
    if commutator.is_zero():
        return LieElement.zero(left.rank, degree)
    return from_tensor(commutator)


def dynkin(series: NcSeries) -> NcSeries:
    """Left-bracketing map t_{i1}...t_{in} -> [[..[t_{i1},t_{i2}]..],t_{in}].

    On the tensor expansion of a degree-n Lie element this acts as
    multiplication by n.
    """
    out = NcSeries.zero(series.rank, series.cap)
    for mono, coeff in series.terms.items():
        if not mono:
            raise ValueError("constant terms have no left bracketing")
        cur = NcSeries.variable(series.rank, series.cap, mono[0])
        for index in mono[1:]:
            t = NcSeries.variable(series.rank, series.cap, index)
            cur = cur * t - t * cur
        out = out + cur.scale(coeff)
    return out


def from_leading(word: GroupWord, cap: int = 8) -> LieElement:
    """Class of a word in (lower central quotient n)/(n+1), n = its weight."""
    weight, slice_ = leading_term(word, cap)
    del weight
    return from_tensor(slice_)
