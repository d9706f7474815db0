import numpy as np
import pytest

from kpo_spectro.fock import (
    EVEN,
    ODD,
    adjoint,
    build_annihilation,
    commutator,
    fock_parities,
    matmul,
    number_operator,
    parity_operator,
)


def test_annihilation_dim2_lowers_one_to_zero():
    a = build_annihilation(2)
    expected = np.zeros((2, 2), dtype=complex)
    expected[0, 1] = 1.0
    assert np.array_equal(a, expected)


def test_annihilation_sqrt_rule():
    a = build_annihilation(4)
    assert a[1, 2] == pytest.approx(np.sqrt(2))
    assert a[2, 3] == pytest.approx(np.sqrt(3))
    # strictly upper-bidiagonal: everything else exactly zero
    mask = np.zeros((4, 4), dtype=bool)
    mask[np.arange(3), np.arange(1, 4)] = True
    assert np.all(a[~mask] == 0)


def test_number_operator_diagonal():
    a = build_annihilation(4)
    n = adjoint(a) @ a
    assert np.abs(np.diag(n).real - np.array([0, 1, 2, 3])).max() < 1e-14
    assert np.abs(n - number_operator(4)).max() < 1e-14


def test_invalid_dimension():
    with pytest.raises(ValueError):
        build_annihilation(1)
    with pytest.raises(ValueError):
        build_annihilation(0)


def test_canonical_commutator_under_truncation():
    dim = 20
    a = build_annihilation(dim)
    c = commutator(a, adjoint(a))
    defect = c - np.eye(dim)
    # identity away from the truncation corner, up to roundoff in sqrt(n)^2
    assert np.abs(defect[: dim - 1, : dim - 1]).max() < 1e-13
    assert c[dim - 1, dim - 1].real == pytest.approx(-(dim - 1))


def test_number_commutator_is_minus_a():
    # [a^dag a, a] = -a, exact even under truncation
    dim = 12
    a = build_annihilation(dim)
    assert np.abs(commutator(number_operator(dim), a) + a).max() < 1e-14 * dim


def test_adjoint_involution():
    rng = np.random.default_rng(7)
    m = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    assert np.array_equal(adjoint(adjoint(m)), m)


def test_matmul_associativity_roundoff():
    rng = np.random.default_rng(11)
    mats = []
    for _ in range(3):
        m = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        mats.append(m / np.linalg.norm(m))
    x, y, z = mats
    lhs = matmul(matmul(x, y), z)
    rhs = matmul(x, matmul(y, z))
    assert np.abs(lhs - rhs).max() < 1e-12


def test_dimension_mismatch_raises():
    a2 = build_annihilation(2)
    a3 = build_annihilation(3)
    with pytest.raises(ValueError):
        matmul(a2, a3)
    with pytest.raises(ValueError):
        commutator(a2, a3)


def test_parities_alternate():
    p = fock_parities(7)
    assert list(p) == [EVEN, ODD, EVEN, ODD, EVEN, ODD, EVEN]
    op = parity_operator(4)
    assert np.array_equal(np.diag(op), [1, -1, 1, -1])
