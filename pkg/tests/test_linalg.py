import numpy as np
import pytest

from torslat import linalg as la
from torslat.errors import InputError

P = 5


def test_rank_examples():
    assert la.rank(la.identity(2), P) == 2
    assert la.rank(la.zeros(3, 4), P) == 0
    assert la.rank(np.array([[1, 2], [2, 4]]), P) == 1


def test_rank_depends_on_prime():
    m = np.array([[1, 1], [1, 6]])
    assert la.rank(m, 5) == 1
    assert la.rank(m, 7) == 2


def test_kernel_basis_spans_null_space():
    m = np.array([[1, 2, 3], [2, 4, 1]])
    ker = la.kernel_basis(m, P)
    assert len(ker) == 3 - la.rank(m, P)
    for v in ker:
        assert not ((m @ v) % P).any()


def test_kernel_of_empty_rows_is_everything():
    ker = la.kernel_basis(la.zeros(0, 3), P)
    assert len(ker) == 3


def test_rref_is_reduced():
    m = np.array([[0, 2, 4], [3, 1, 0], [3, 3, 4]])
    r, piv = la.rref(m, P)
    for i, c in enumerate(piv):
        assert r[i, c] == 1
        assert np.count_nonzero(r[:, c]) == 1
    assert ((r >= 0) & (r < P)).all()


def test_solve_consistent_and_inconsistent():
    m = np.array([[1, 2], [2, 4]])
    x = la.solve(m, [1, 2], P)
    assert x is not None and not ((m @ x - [1, 2]) % P).any()
    assert la.solve(m, [1, 0], P) is None


def test_inverse_and_singular():
    m = np.array([[2, 1], [1, 1]])
    inv = la.inverse(m, P)
    assert ((m @ inv) % P == la.identity(2)).all()
    with pytest.raises(InputError):
        la.inverse(np.array([[1, 2], [2, 4]]), P)


def test_span_helpers():
    vs = [np.array([1, 0, 0]), np.array([0, 1, 0])]
    assert la.in_span(vs, np.array([3, 4, 0]), P)
    assert not la.in_span(vs, np.array([0, 0, 1]), P)
    assert la.span_dim(vs + [np.array([1, 1, 0])], P) == 2
    assert la.complement_indices(vs, [np.array([1, 1, 0]), np.array([0, 0, 2])], P) == [1]


def test_is_prime():
    assert [q for q in range(20) if la.is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]
