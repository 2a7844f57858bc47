import numpy as np
import pytest

from algebra import linalg


def test_rank_depends_on_the_field():
    m = [[1, 2], [2, 1]]
    assert linalg.rank(m, 3) == 1
    assert linalg.rank(m, 2) == 2
    assert linalg.rank(m, 5) == 2


def test_kernel_basis_is_annihilated():
    m = np.array([[1, 1, 0, 1], [0, 1, 1, 1]])
    k = linalg.kernel_basis(m, 2)
    assert k.shape == (4, 2)
    assert not linalg.mat_mul(m, k, 2).any()


def test_solve_and_inconsistent_system():
    a = np.array([[1, 1], [0, 1]])
    x = linalg.solve(a, np.array([1, 0]), 3)
    assert np.array_equal(linalg.mat_mul(a, x.reshape(-1, 1), 3).reshape(-1), [1, 0])
    assert linalg.solve(np.array([[1], [1]]), np.array([1, 0]), 2) is None


def test_inverse_and_singular():
    m = np.array([[2, 1], [1, 1]])
    assert np.array_equal(linalg.mat_mul(m, linalg.inverse(m, 5), 5), linalg.identity(2))
    with pytest.raises(ValueError):
        linalg.inverse([[1, 1], [1, 1]], 2)


def test_rank_nullity_on_random_matrices():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        p = int(rng.choice([2, 3, 5]))
        rows, cols = rng.integers(1, 6, size=2)
        m = linalg.random_matrix(rng, int(rows), int(cols), p)
        assert linalg.rank(m, p) + linalg.kernel_basis(m, p).shape[1] == cols


def test_intersect_of_coordinate_planes():
    u = linalg.identity(3)[:, [0, 1]]
    v = linalg.identity(3)[:, [1, 2]]
    meet = linalg.intersect(u, v, 2)
    assert meet.shape[1] == 1
    assert linalg.in_span(meet, [0, 1, 0], 2)
