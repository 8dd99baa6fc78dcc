import pytest
from hypothesis import given, strategies as st

from abvpackets import linalg

small = st.integers(-3, 3)


@st.composite
def unitriangular(draw, n=st.integers(1, 5)):
    k = draw(n)
    return tuple(tuple(1 if i == j else (draw(small) if i < j else 0) for j in range(k))
                 for i in range(k))


@given(unitriangular())
def test_inverse_of_unitriangular(a):
    inv = linalg.inverse(a)
    assert linalg.matmul(a, inv) == linalg.identity(len(a))
    assert linalg.is_unitriangular(inv, lower=False)


def test_inverse_rejects_non_unimodular():
    with pytest.raises(ValueError):
        linalg.inverse(((2, 0), (0, 1)))


@given(unitriangular(st.integers(1, 3)), unitriangular(st.integers(1, 3)))
def test_kron_inverse(a, b):
    assert linalg.inverse(linalg.kron(a, b)) == linalg.kron(linalg.inverse(a), linalg.inverse(b))


def test_kron_first_factor_major():
    a = ((1, 2), (0, 1))
    assert linalg.kron(a, ((1, 1), (0, 1))) == (
        (1, 1, 2, 2), (0, 1, 0, 2), (0, 0, 1, 1), (0, 0, 0, 1))


def test_rank_and_nullity():
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.nullity([[1, 2, 3]], 3) == 2
    assert linalg.rank([]) == 0
