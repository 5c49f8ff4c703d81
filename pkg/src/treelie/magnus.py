"""Truncated noncommutative power series and the Magnus imbedding.

A generator g_i of the free group maps to 1 + t_i; its inverse maps to
the truncated geometric series 1 - t_i + t_i^2 - ...  Coefficients are
exact ints or Fractions.  Every series carries an explicit truncation
cap; degrees above the cap are discarded.
"""

from __future__ import annotations

from fractions import Fraction

from .freegroup import GroupWord

DEFAULT_CAP = 8


class _SymbolicWeight:
    __slots__ = ("_name",)

    def __init__(self, name):
        self._name = name

    def __repr__(self):
        return self._name


#: weight of the identity word (it lies in every term of the series)
INFINITE_WEIGHT = _SymbolicWeight("INFINITE_WEIGHT")
#: all terms up to the cap vanish but the word is not the identity
EXCEEDS_CAP = _SymbolicWeight("EXCEEDS_CAP")


class NcSeries:
    """Polynomial in noncommuting variables t_1..t_rank, truncated at cap.

    Monomials are tuples of generator indices; terms maps monomial to a
    nonzero exact coefficient.
    """

    __slots__ = ("rank", "cap", "terms")

    def __init__(self, rank: int, cap: int, terms=None):
        if rank < 0:
            raise ValueError("rank must be >= 0")
        if cap < 0:
            raise ValueError("cap must be >= 0")
        self.rank = rank
        self.cap = cap
        clean = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) > cap or not coeff:
                continue
            for i in mono:
                if not 1 <= i <= rank:
                    raise ValueError(f"variable index {i} out of range 1..{rank}")
            clean[tuple(mono)] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, rank, cap):
        return cls(rank, cap)

    @classmethod
    def one(cls, rank, cap):
        return cls(rank, cap, {(): 1})

    @classmethod
    def variable(cls, rank, cap, index):
        return cls(rank, cap, {(index,): 1})

    def _check(self, other):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        if self.cap != other.cap:
            raise ValueError("cap mismatch")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = terms.get(mono, 0) + coeff
            if new:
                terms[mono] = new
            else:
                terms.pop(mono, None)
        return NcSeries(self.rank, self.cap, terms)

    def __neg__(self):
        return NcSeries(self.rank, self.cap, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        cap = self.cap
        out = {}
        for left, a in self.terms.items():
            room = cap - len(left)
            for right, b in other.terms.items():
                if len(right) > room:
                    continue
                mono = left + right
                new = out.get(mono, 0) + a * b
                if new:
                    out[mono] = new
                else:
                    del out[mono]
        return NcSeries(self.rank, cap, out)

    def scale(self, factor):
        if not factor:
            return NcSeries.zero(self.rank, self.cap)
        return NcSeries(self.rank, self.cap, {m: factor * c for m, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, NcSeries)
            and self.rank == other.rank
            and self.cap == other.cap
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), 0)

    def homogeneous_part(self, degree: int) -> "NcSeries":
        return NcSeries(
            self.rank, self.cap, {m: c for m, c in self.terms.items() if len(m) == degree}
        )

    def min_positive_degree(self):
        """Smallest degree >= 1 carrying a nonzero term, or None."""
        best = None
        for mono in self.terms:
            if mono and (best is None or len(mono) < best):
                best = len(mono)
        return best

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json(self):
        return {
            "rank": self.rank,
            "cap": self.cap,
            "terms": [
                {"mono": list(mono), "coeff": str(Fraction(coeff))}
                for mono, coeff in self.sorted_terms()
            ],
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            body = "".join(f"t{i}" for i in mono) or "1"
            if coeff == 1 and mono:
                text = body
            elif coeff == -1 and mono:
                text = f"-{body}"
            else:
                text = f"{coeff}*{body}" if mono else f"{coeff}"
            parts.append(text)
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def series_commutator(p: NcSeries, q: NcSeries) -> NcSeries:
    return p * q - q * p


def _mul_generator_image(terms: dict, gen: int, sign: int, cap: int) -> dict:
    """Multiply a term dict on the right by the image of g_gen^sign."""
    out = {}
    for mono, coeff in terms.items():
        room = cap - len(mono)
        if sign > 0:
            powers = (0, 1) if room else (0,)
        else:
            powers = range(room + 1)
        tail = ()
        for j in powers:
            piece = coeff if (sign > 0 or j % 2 == 0) else -coeff
            key = mono + tail
            new = out.get(key, 0) + piece
            if new:
                out[key] = new
            else:
                del out[key]
            tail = tail + (gen,)
    return out


def magnus_expand(word: GroupWord, cap: int = DEFAULT_CAP) -> NcSeries:
    """Image of a reduced word under g_i -> 1 + t_i, truncated at cap."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    terms = {(): 1}
    for gen, sign in word.letters:
        terms = _mul_generator_image(terms, gen, sign, cap)
    return NcSeries(word.rank, cap, terms)


def lcs_weight(word: GroupWord, cap: int = DEFAULT_CAP):
    """Largest n with word in the n-th lower central subgroup, up to cap.

    Returns an int in 1..cap, or EXCEEDS_CAP when every term of degree
    <= cap vanishes for a nontrivial word, or INFINITE_WEIGHT for the
    identity word.
    """
    if word.is_identity():
        return INFINITE_WEIGHT
    degree = (magnus_expand(word, cap) - NcSeries.one(word.rank, cap)).min_positive_degree()
    return EXCEEDS_CAP if degree is None else degree


def leading_term(word: GroupWord, cap: int = DEFAULT_CAP):
    """(weight, homogeneous part of that weight) of expand(word) - 1."""
    weight = lcs_weight(word, cap)
    if weight is INFINITE_WEIGHT:
        raise ValueError("identity word has no leading term")
    if weight is EXCEEDS_CAP:
        raise ValueError(f"leading term exceeds cap {cap}")
    return weight, magnus_expand(word, cap).homogeneous_part(weight)
