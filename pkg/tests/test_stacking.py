import itertools
import random

import pytest

from treelie import (
    EMPTY_DIAGRAM,
    DiagramSum,
    SkewForm,
    StackingForm,
    connected_diagrams,
    contraction_bracket,
    default_stacking,
    intersection_matrix,
    omega_form,
    project_trees,
    stack_bracket,
    star,
    star_unit,
)
from treelie.diagrams import canonicalize, tripod_raw


def random_symmetric(rng, m):
    a = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            a[i][j] = a[j][i] = rng.randint(-3, 3)
    return a


def test_form_validation_accepts_exactly_j_compatible():
    rng = random.Random(71)
    for _ in range(300):
        genus = rng.randint(1, 3)
        m = 2 * genus
        base = default_stacking(genus).matrix
        sym = random_symmetric(rng, m)
        good = [[base[i][j] + sym[i][j] for j in range(m)] for i in range(m)]
        form = StackingForm(good)  # must not raise
        assert form.genus == genus
        bad = [row[:] for row in good]
        i, j = rng.randrange(m), rng.randrange(m)
        while i == j:
            j = rng.randrange(m)
        bad[i][j] += rng.choice((1, -1, 2))
        with pytest.raises(ValueError):
            StackingForm(bad)


def test_form_validation_rejects_classics():
    with pytest.raises(ValueError):
        StackingForm(intersection_matrix(1))  # J - J^T = 2J
    with pytest.raises(ValueError):
        StackingForm([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        StackingForm([[0, 1, 0], [0, 0, 0], [0, 0, 0]])  # odd rank
    lower = [[0, 0], [-1, 0]]
    assert StackingForm(lower).value(2, 1) == -1  # the other sparse solution


def test_default_form_values():
    s = default_stacking(2)
    assert s.value(1, 2) == 1  # x1 against y1
    assert s.value(2, 1) == 0
    assert s.value(3, 4) == 1
    assert s.value(1, 3) == 0
    J = intersection_matrix(2)
    assert J[0][1] == 1 and J[1][0] == -1


def test_skew_form_validation():
    with pytest.raises(ValueError):
        SkewForm([[1, 0], [0, 0]])
    omega = omega_form(2)
    assert omega.value(1, 2) == 1
    assert omega.value(2, 1) == -1
    assert omega.value(1, 3) == 0


def tripod(a, b, c):
    return canonicalize(*tripod_raw(a, b, c))[0]


def test_star_unit():
    form = default_stacking(2)
    assert star_unit() == DiagramSum.single(EMPTY_DIAGRAM)
    for d in connected_diagrams(4, 2, 4)[:8]:
        assert star(EMPTY_DIAGRAM, d, form) == DiagramSum.single(d)
        assert star(d, EMPTY_DIAGRAM, form) == DiagramSum.single(d)


def test_star_with_no_pairable_legs_is_disjoint_union():
    # the default form pairs x against y only, so two all-x1 diagrams
    # admit just the empty matching
    form = default_stacking(1)
    d1 = canonicalize(2, (1, 1), [(0, 3), (1, 4), (2, 6), (5, 7)])[0]
    prod = star(d1, d1, form)
    ((d, coeff),) = prod.sorted_terms()
    assert d.degree == 2 * d1.degree
    assert sorted(d.legs) == sorted(d1.legs + d1.legs)
    assert coeff in (1, -1)


def test_star_term_degrees_and_legs():
    # every term loses the same number of legs from each factor
    form = default_stacking(2)
    pool = connected_diagrams(4, 2, 4)
    rng = random.Random(72)
    for _ in range(40):
        a, b = rng.choice(pool), rng.choice(pool)
        prod = star(a, b, form)
        for d, _ in prod.sorted_terms():
            assert d.degree == a.degree + b.degree
            dropped = a.n_legs + b.n_legs - d.n_legs
            assert dropped % 2 == 0 and dropped >= 0


def test_star_bilinear():
    form = default_stacking(2)
    pool = connected_diagrams(4, 2, 4)
    rng = random.Random(73)
    for _ in range(25):
        a, b, c = (rng.choice(pool) for _ in range(3))
        lhs = star(DiagramSum.single(a, 2) + DiagramSum.single(b, -3), c, form)
        rhs = star(a, c, form).scale(2) + star(b, c, form).scale(-3)
        assert lhs == rhs
        lhs = star(c, DiagramSum.single(a, 5), form)
        assert lhs == star(c, a, form).scale(5)


def test_frozen_tripod_star_genus2():
    # Y(x1,x2,y2) * Y(y1,x2,y2) under the default genus-2 form
    lhs = DiagramSum.from_raw(*tripod_raw(1, 3, 4))
    rhs = DiagramSum.from_raw(*tripod_raw(2, 3, 4))
    ((a, sa),) = lhs.sorted_terms()
    ((b, sb),) = rhs.sorted_terms()
    prod = star(a, b, default_stacking(2)).scale(sa * sb)
    terms = prod.sorted_terms()
    assert len(terms) == 4
    by_shape = {}
    for d, c in terms:
        by_shape.setdefault((d.degree, d.n_legs, d.loop_rank), []).append(c)
    # disjoint union, one single contraction (x1-y1), and two x2/y2 ones;
    # one double contraction with a loop
    assert set(by_shape) == {(2, 6, 0), (2, 4, 0), (2, 2, 1)}
    assert len(by_shape[(2, 4, 0)]) == 2
    assert len(by_shape[(2, 6, 0)]) == 1
    assert len(by_shape[(2, 2, 1)]) == 1


def test_bracket_is_antisymmetrized_star():
    form = default_stacking(2)
    pool = connected_diagrams(4, 2, 4)
    rng = random.Random(74)
    for _ in range(30):
        a, b = rng.choice(pool), rng.choice(pool)
        assert stack_bracket(a, b, form) == star(a, b, form) - star(b, a, form)
        assert (stack_bracket(a, b, form) + stack_bracket(b, a, form)).is_zero()


def test_ring_axioms_rank2_exhaustive():
    # small-rank sweep; the full rank-4 sweep runs in the acceptance suite
    pool = connected_diagrams(2, 2, 4)
    for form in (default_stacking(1), StackingForm([[0, 0], [-1, 0]])):
        prod = {}
        for i, a in enumerate(pool):
            for j, b in enumerate(pool):
                prod[i, j] = star(a, b, form)
        for i, j, k in itertools.product(range(len(pool)), repeat=3):
            assert star(prod[i, j], pool[k], form) == star(pool[i], prod[j, k], form)
        for i, j, k in itertools.combinations_with_replacement(range(len(pool)), 3):
            jac = (
                stack_bracket(pool[i], stack_bracket(pool[j], pool[k], form), form)
                + stack_bracket(pool[j], stack_bracket(pool[k], pool[i], form), form)
                + stack_bracket(pool[k], stack_bracket(pool[i], pool[j], form), form)
            )
            assert jac.is_zero()


def test_tree_projection_form_independent_and_ideal():
    pool = connected_diagrams(2, 2, 4)
    trees = [d for d in pool if d.loop_rank == 0]
    loops = [d for d in pool if d.loop_rank > 0]
    s1 = default_stacking(1)
    s2 = StackingForm([[0, 0], [-1, 0]])
    for t in trees:
        for lo in loops:
            assert project_trees(stack_bracket(t, lo, s1)).is_zero()
    for a in pool:
        for b in pool:
            p1 = project_trees(stack_bracket(a, b, s1))
            p2 = project_trees(stack_bracket(a, b, s2))
            assert p1 == p2


def test_degree_one_bracket_is_negative_contraction():
    omega = omega_form(2)
    form = default_stacking(2)
    pool = [d for d in connected_diagrams(4, 2, 4) if d.degree == 1]
    assert pool
    for a in pool:
        for b in pool:
            got = project_trees(stack_bracket(a, b, form))
            expect = contraction_bracket(a, b, omega).scale(-1)
            assert got == expect


def test_project_trees_filters_loops():
    theta = canonicalize(2, (), [(0, 3), (1, 4), (2, 5)])[0]
    tri = tripod(1, 2, 3)
    mixed = DiagramSum.single(theta, 2) + DiagramSum.single(tri, 5)
    assert project_trees(mixed) == DiagramSum.single(tri, 5)
    assert project_trees(DiagramSum.zero()).is_zero()
