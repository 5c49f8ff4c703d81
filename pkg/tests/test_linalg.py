import itertools
import random
from fractions import Fraction

from treelie.linalg import (
    axpy,
    int_det,
    kernel_of_columns,
    make_primitive,
    rank_of_rows,
    rref,
)


def dense_nullspace(matrix):
    """Oracle: dense Gauss-Jordan null space of a list-of-rows matrix."""
    rows = [len(matrix), len(matrix[0]) if matrix else 0]
    m, n = rows
    a = [[Fraction(x) for x in row] for row in matrix]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for c in free:
        v = [Fraction(0)] * n
        v[c] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -a[i][c]
        basis.append(v)
    return basis


def sparse_cols(matrix):
    cols = []
    for j in range(len(matrix[0]) if matrix else 0):
        col = {i: matrix[i][j] for i in range(len(matrix)) if matrix[i][j]}
        cols.append(col)
    return cols


def random_matrix(rng, m, n, density=0.6):
    return [
        [rng.randint(-4, 4) if rng.random() < density else 0 for _ in range(n)]
        for _ in range(m)
    ]


def in_span(vec, basis_rows, n):
    rows = [dict(r) for r in basis_rows]
    rows.append({j: vec[j] for j in range(n) if vec[j]})
    return rank_of_rows(rows) == rank_of_rows(basis_rows)


def test_kernel_matches_dense_oracle():
    rng = random.Random(31)
    for _ in range(150):
        m, n = rng.randint(1, 5), rng.randint(1, 6)
        matrix = random_matrix(rng, m, n)
        got = kernel_of_columns(sparse_cols(matrix))
        expect = dense_nullspace(matrix)
        assert len(got) == len(expect)
        # same span, both directions
        expect_rows = [
            {j: v for j, v in enumerate(vec) if v} for vec in expect
        ]
        for combo in got:
            vec = [combo.get(j, Fraction(0)) for j in range(n)]
            assert in_span(vec, expect_rows, n)
        for vec in expect:
            assert in_span(vec, got, n)


def test_kernel_vectors_annihilate_columns():
    rng = random.Random(32)
    for _ in range(100):
        m, n = rng.randint(1, 6), rng.randint(1, 7)
        matrix = random_matrix(rng, m, n)
        for combo in kernel_of_columns(sparse_cols(matrix)):
            image = {}
            for j, c in combo.items():
                axpy(image, {i: matrix[i][j] for i in range(m)}, c)
            assert not image


def test_rref_is_canonical_under_row_shuffles():
    rng = random.Random(33)
    for _ in range(80):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        matrix = random_matrix(rng, m, n)
        rows = [{j: x for j, x in enumerate(r) if x} for r in matrix]
        base = rref(rows)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        scaled = [
            {k: 3 * v for k, v in r.items()} for r in shuffled if r
        ]
        assert rref(shuffled) == base
        assert rref(scaled)[0] == base[0]


def test_rref_properties():
    rows = [{0: 2, 1: 4}, {0: 1, 1: 2, 2: 1}, {2: 5}]
    reduced, pivots = rref(rows)
    assert pivots == [0, 2]
    for row, p in zip(reduced, pivots):
        assert row[p] == 1
        # pivot column is cleared in every other row
        for other in reduced:
            assert other is row or p not in other


def test_rank_agrees_with_dense_oracle():
    rng = random.Random(34)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        matrix = random_matrix(rng, m, n)
        rows = [{j: x for j, x in enumerate(r) if x} for r in matrix]
        assert rank_of_rows(rows) == n - len(dense_nullspace(matrix))


def test_make_primitive():
    row = {0: Fraction(2, 3), 3: Fraction(-4, 9)}
    assert make_primitive(row) == {0: 3, 3: -2}
    assert make_primitive({1: Fraction(-5)}) == {1: 1}
    assert make_primitive({}) == {}
    rng = random.Random(35)
    for _ in range(60):
        row = {
            rng.randrange(6): Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            for _ in range(rng.randint(1, 4))
        }
        row = {k: v for k, v in row.items() if v}
        if not row:
            continue
        prim = make_primitive(row)
        assert prim[min(prim)] > 0
        ratio = None
        for k in row:
            assert (prim[k] == 0) == (row[k] == 0)
            r = Fraction(prim[k]) / row[k]
            ratio = r if ratio is None else ratio
            assert r == ratio


def perm_det(matrix):
    """Oracle: Leibniz expansion, fine for n <= 5."""
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(n):
            prod *= matrix[i][perm[i]]
        total += sign * prod
    return total


def test_int_det_matches_leibniz():
    rng = random.Random(36)
    assert int_det([]) == 1
    for _ in range(120):
        n = rng.randint(1, 5)
        matrix = random_matrix(rng, n, n, density=0.8)
        assert int_det(matrix) == perm_det(matrix)
