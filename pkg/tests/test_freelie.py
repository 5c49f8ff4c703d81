import itertools
import random
from fractions import Fraction

import pytest

from treelie import (
    GroupWord,
    LieElement,
    NcSeries,
    bracket_str,
    commutator,
    dim_lie,
    dynkin,
    from_leading,
    from_tensor,
    is_lyndon,
    lie_bracket,
    lyndon_basis,
    lyndon_bracketing,
    lyndon_words,
    to_tensor,
)


def is_strictly_smallest_rotation(word):
    """Oracle: a Lyndon word is strictly smaller than all proper rotations."""
    n = len(word)
    return all(word < word[k:] + word[:k] for k in range(1, n))


def test_lyndon_words_match_rotation_oracle():
    for rank in (1, 2, 3):
        for degree in range(1, 7):
            expect = sorted(
                w
                for w in itertools.product(range(1, rank + 1), repeat=degree)
                if is_strictly_smallest_rotation(w)
            )
            got = lyndon_words(rank, degree)
            assert list(got) == expect
            assert all(is_lyndon(w) for w in got)


def test_is_lyndon_examples():
    assert is_lyndon((1, 2))
    assert is_lyndon((1, 1, 2))
    assert not is_lyndon((2, 1))
    assert not is_lyndon((1, 2, 1, 2))
    assert is_lyndon((1,))


def test_witt_dimension_formula():
    # dim agrees with the word count, and with the frozen rank-2 table
    for rank in (1, 2, 3, 4):
        for degree in range(1, 7):
            assert dim_lie(rank, degree) == len(lyndon_words(rank, degree))
    assert [dim_lie(2, n) for n in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]


def test_standard_factorization_brackets():
    # w = uv with v the longest proper Lyndon suffix
    assert lyndon_bracketing((1, 2)) == (1, 2)
    assert lyndon_bracketing((1, 1, 2)) == (1, (1, 2))
    assert lyndon_bracketing((1, 2, 2)) == ((1, 2), 2)
    assert bracket_str(lyndon_bracketing((1, 1, 2))) == "[g1,[g1,g2]]"
    basis = lyndon_basis(2, 3)
    assert len(basis) == dim_lie(2, 3)


def test_tensor_round_trip_random():
    rng = random.Random(41)
    for _ in range(100):
        rank = rng.randint(1, 3)
        degree = rng.randint(1, 5)
        words = lyndon_words(rank, degree)
        coeffs = {
            w: Fraction(rng.randint(-5, 5))
            for w in rng.sample(words, min(len(words), 3))
        }
        x = LieElement(rank, degree, coeffs)
        if x.is_zero():
            continue
        assert from_tensor(to_tensor(x)) == x


def test_from_tensor_rejects_non_lie_series():
    with pytest.raises(ValueError):
        from_tensor(NcSeries(2, 2, {(1, 2): 1}))  # xy alone is not [x,y]
    with pytest.raises(ValueError):
        from_tensor(NcSeries(2, 2, {(): 1}))
    with pytest.raises(ValueError):
        from_tensor(NcSeries(2, 3, {(1,): 1, (1, 2): 1}))


def test_bracket_via_tensor_commutator():
    rng = random.Random(42)
    for _ in range(60):
        rank = rng.randint(2, 3)
        d1, d2 = rng.randint(1, 3), rng.randint(1, 3)
        x = LieElement.basis_element(rank, rng.choice(lyndon_words(rank, d1)))
        y = LieElement.basis_element(rank, rng.choice(lyndon_words(rank, d2)))
        b = lie_bracket(x, y)
        s = to_tensor(x, d1 + d2) * to_tensor(y, d1 + d2) - to_tensor(
            y, d1 + d2
        ) * to_tensor(x, d1 + d2)
        assert to_tensor(b) == s


def test_antisymmetry_and_jacobi_random():
    rng = random.Random(43)
    for _ in range(40):
        rank = 2
        pick = lambda: LieElement.basis_element(
            rank, rng.choice(lyndon_words(rank, rng.randint(1, 3)))
        )
        x, y, z = pick(), pick(), pick()
        assert lie_bracket(x, y) + lie_bracket(y, x) == LieElement.zero(
            rank, x.degree + y.degree
        )
        jac = (
            lie_bracket(x, lie_bracket(y, z))
            + lie_bracket(y, lie_bracket(z, x))
            + lie_bracket(z, lie_bracket(x, y))
        )
        assert jac.is_zero()


def test_dynkin_multiplies_lie_elements_by_degree():
    rng = random.Random(44)
    for _ in range(60):
        rank = rng.randint(2, 3)
        degree = rng.randint(1, 5)
        words = lyndon_words(rank, degree)
        coeffs = {w: rng.randint(-3, 3) for w in rng.sample(words, min(len(words), 3))}
        x = LieElement(rank, degree, coeffs)
        if x.is_zero():
            continue
        t = to_tensor(x)
        assert dynkin(t) == t.scale(degree)


def test_dynkin_on_non_lie_tensor():
    # xy maps to [x,y], not to 2*xy
    s = NcSeries(2, 2, {(1, 2): 1})
    assert dynkin(s).terms == {(1, 2): 1, (2, 1): -1}


def test_from_leading_of_commutator_words():
    x, y = GroupWord.generator(2, 1), GroupWord.generator(2, 2)
    assert from_leading(commutator(x, y)) == LieElement.basis_element(2, (1, 2))
    deep = commutator(x, commutator(x, y))
    assert from_leading(deep) == LieElement.basis_element(2, (1, 1, 2))
    # group inverse negates the class
    assert from_leading(commutator(y, x)) == -LieElement.basis_element(2, (1, 2))


def test_from_leading_respects_products_in_the_graded_group():
    # for u, v of the same weight with non-cancelling leads,
    # class(uv) = class(u) + class(v)
    x, y = GroupWord.generator(2, 1), GroupWord.generator(2, 2)
    u = commutator(x, y)
    v = commutator(x, commutator(x, y))
    w = commutator(y, commutator(x, y))
    assert from_leading(v * w) == from_leading(v) + from_leading(w)
    assert from_leading(u * u) == from_leading(u).scale(2)
