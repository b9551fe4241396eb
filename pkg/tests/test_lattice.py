import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dp_balanced
from wellbalanced.lattice import check_obstruction, diagonalize, half_sum_obstruction

matrices = st.integers(1, 5).flatmap(
    lambda dim: st.lists(st.lists(st.integers(-6, 6), min_size=dim, max_size=dim), min_size=1, max_size=6)
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_column_transform_is_unimodular_and_diagonalizes(rows):
    diag, cols = diagonalize(rows)
    c = np.array(cols, dtype=object)
    assert round(abs(float(np.linalg.det(np.array(cols, dtype=float))))) == 1
    m = np.array(rows, dtype=object) @ c
    # column t of M @ C is divisible by d_t; columns past the rank vanish
    for t in range(c.shape[1]):
        col = m[:, t]
        if t < len(diag):
            assert all(x % diag[t] == 0 for x in col)
        else:
            assert all(x == 0 for x in col)
    assert len(diag) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=8))
def test_obstruction_is_sound(vectors):
    found = half_sum_obstruction(vectors)
    if found is not None:
        w, q = found
        assert check_obstruction(vectors, w, q)
        assert not dp_balanced(vectors)


def test_needs_diagonal_step():
    # both coordinate tests pass, but the sum (2, 0) is not in 2L
    vectors = [(1, 1), (1, -1)]
    found = half_sum_obstruction(vectors)
    assert found is not None
    w, q = found
    assert all(x for x in w)
    assert check_obstruction(vectors, w, q)


def test_check_rejects_bad_certificates():
    vectors = [(2, 0), (0, 2)]
    assert not check_obstruction(vectors, (1, 0), 0)
    assert not check_obstruction(vectors, (1, 0), 4)
    assert check_obstruction(vectors, (1, 0), 2)


def test_no_obstruction_for_balanced_set():
    assert half_sum_obstruction([(2, 0), (2, 0)]) is None
    assert half_sum_obstruction([]) is None
