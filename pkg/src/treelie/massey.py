"""Universal higher pairings on the graded quotients of a free group.

The length-n pairing of an index word I = (i_1..i_n) against a word w of
weight exactly n is the coefficient of t_{i_1}...t_{i_n} in the expansion
of w.  It is computed here by a run-length dynamic program over the
syllables of w using generalized binomials, so it does not share code
with the series multiplication it is tested against.
"""

from __future__ import annotations

import itertools
import math

from .dspace import HTensorLie, dn_contains
from .freegroup import GroupWord
from .freelie import LieElement, from_tensor
from .magnus import DEFAULT_CAP, EXCEEDS_CAP, INFINITE_WEIGHT, NcSeries, lcs_weight


def _gen_binomial(exponent: int, k: int) -> int:
    """Coefficient of t^k in (1+t)^exponent, exponent any integer."""
    if k < 0:
        return 0
    if exponent >= 0:
        return math.comb(exponent, k) if k <= exponent else 0
    return (-1 if k % 2 else 1) * math.comb(k - exponent - 1, k)


def _syllables(word: GroupWord):
    """Run-length encoding (generator, exponent); exponents never cancel
    inside a run because the word is freely reduced."""
    runs = []
    for gen, sign in word.letters:
        if runs and runs[-1][0] == gen:
            runs[-1][1] += sign
        else:
            runs.append([gen, sign])
    return [(gen, exp) for gen, exp in runs]


def massey_eval(index_word, word: GroupWord, cap: int = DEFAULT_CAP) -> int:
    """Value of the length-n pairing <u_I> on a word of weight exactly n."""
    I = tuple(int(i) for i in index_word)
    n = len(I)
    if n < 1:
        raise ValueError("index word must be nonempty")
    if n > cap:
        raise ValueError(f"index length {n} exceeds cap {cap}")
    if any(not 1 <= i <= word.rank for i in I):
        raise ValueError("index word uses a generator outside the rank")
    weight = lcs_weight(word, cap=n)
    if weight != n:
        raise ValueError(
            f"pairing of length {n} needs a word of weight {n}, got {weight}"
        )
    # f[k]: coefficient of t_{i_1}..t_{i_k} accumulated so far.
    f = [0] * (n + 1)
    f[0] = 1
    for gen, exponent in _syllables(word):
        nf = [0] * (n + 1)
        for k in range(n + 1):
            if not f[k]:
                continue
            r = 0
            while True:
                nf[k + r] += f[k] * _gen_binomial(exponent, r)
                if k + r >= n or I[k + r] != gen:
                    break
                r += 1
        f = nf
    return f[n]


def mu_hat(word: GroupWord, cap: int = DEFAULT_CAP) -> LieElement:
    """Reconstruction of the leading class from pairing values alone."""
    weight = lcs_weight(word, cap=cap)
    if weight is INFINITE_WEIGHT:
        raise ValueError("identity word has no leading class")
    if weight is EXCEEDS_CAP:
        raise ValueError(f"weight exceeds cap {cap}")
    rank = word.rank
    terms = {}
    for I in itertools.product(range(1, rank + 1), repeat=weight):
        value = massey_eval(I, word, cap=cap)
        if value:
            terms[I] = value
    return from_tensor(NcSeries(rank, weight, terms))


def mu_element(pairs, rank: int | None = None, cap: int = DEFAULT_CAP):
    """Assemble sum u (x) class(w) and test kernel membership.

    pairs: (u, w) with u a degree-1 LieElement and w a GroupWord; all w
    must have one common weight.  Returns (tensor, contained).
    """
    pairs = list(pairs)
    if not pairs:
        if rank is None:
            raise ValueError("empty assembly needs an explicit rank")
        empty = HTensorLie.zero(rank, 1)
        return empty, True
    weights = []
    for u, w in pairs:
        if u.degree != 1:
            raise ValueError("first slot takes degree-1 elements")
        if u.rank != w.rank:
            raise ValueError("rank mismatch inside a pair")
        if rank is None:
            rank = u.rank
        elif rank != u.rank:
            raise ValueError("rank mismatch across pairs")
        weight = lcs_weight(w, cap=cap)
        if not isinstance(weight, int):
            raise ValueError(f"word weight {weight} is unusable here")
        weights.append(weight)
    if len(set(weights)) != 1:
        raise ValueError(f"mixed weights {sorted(set(weights))}")
    n = weights[0]
    total = HTensorLie.zero(rank, n)
    for u, w in pairs:
        leading = mu_hat(w, cap=cap)
        for letter, coeff in u.coeffs.items():
            total = total + HTensorLie.single(rank, letter[0], leading.scale(coeff))
    return total, dn_contains(total)
