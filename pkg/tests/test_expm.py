import math

import numpy as np
import pytest

from ladderkit import (AlgebraSpec, IndexWindow, bessel_jn, expm,
                       operator_matrix, oracle_element, pad_sufficiency,
                       padded_window)


def test_zero_matrix():
    res = expm(np.zeros((4, 4)))
    assert np.array_equal(res.matrix, np.eye(4))
    assert res.remainder_bound == 0.0


def test_nilpotent_is_exact():
    y = 0.37
    a = np.array([[0.0, y], [0.0, 0.0]], dtype=complex)
    res = expm(a)
    assert np.array_equal(res.matrix, np.eye(2) + a)


def test_u1_vacuum_element_sech():
    spec = AlgebraSpec.parametric(1, 1, 1)
    window = IndexWindow(0, 20, 0, 4)
    res = expm(operator_matrix(spec, window, (0.3j, 0.3j, 0.0)))
    assert abs(res.matrix[0, 0] - 1.0 / math.cosh(0.3)) < 1e-10


def test_remainder_bound_honest_against_closed_form():
    for theta in (0.3, 1.7, 11.0):
        a = np.array([[0.0, theta], [-theta, 0.0]], dtype=complex)
        exact = np.array([[math.cos(theta), math.sin(theta)],
                          [-math.sin(theta), math.cos(theta)]])
        res = expm(a)
        true_err = np.abs(res.matrix - exact).max()
        # rounding floor on top of the Taylor-tail bound
        assert true_err <= res.remainder_bound + 64 * np.finfo(float).eps


def test_unitary_for_skew_hermitian():
    spec = AlgebraSpec.parametric(1, 2, 1)
    window = IndexWindow(0, 30, 0, 10)
    u = expm(operator_matrix(spec, window, (0.4j, 0.4j, 0.0))).matrix
    assert np.abs(u.conj().T @ u - np.eye(window.size)).max() <= 1e-10


def test_group_law_commuting():
    rng = np.random.default_rng(7)
    d1 = np.diag(rng.normal(size=6) + 1j * rng.normal(size=6))
    d2 = np.diag(rng.normal(size=6) + 1j * rng.normal(size=6))
    lhs = expm(d1).matrix @ expm(d2).matrix
    rhs = expm(d1 + d2).matrix
    assert np.abs(lhs - rhs).max() <= 1e-10


def test_oracle_element_identity_coeffs():
    spec = AlgebraSpec.parametric(2, 3, 1)
    window = IndexWindow(-1, 14, -1, 8)
    for n in range(0, 4):
        for m in range(0, 4):
            got = oracle_element(spec, window, (0.0, 0.0, 0.0), n, m)
            assert got == (1.0 if n == m else 0.0)


def test_oracle_element_sech_tanh():
    spec = AlgebraSpec.parametric(1, 1, 1)
    window = padded_window(spec, 0, 8, 40)
    got = oracle_element(spec, window, (0.4j, 0.4j, 0.0), 1, 0)
    want = 1j / math.cosh(0.4) * math.tanh(0.4)
    assert abs(got - want) < 1e-10


def test_oracle_element_constant_profile_bessel():
    spec = AlgebraSpec.from_profile("constant-one")
    window = IndexWindow(-40, 40, -10, 10)
    got = oracle_element(spec, window, (0.5j, 0.5j, 0.0), 2, 0)
    want = (1j) ** 2 * bessel_jn(2, 1.0)
    assert abs(got - want) < 1e-12


def test_oracle_rejects_label_outside_core():
    spec = AlgebraSpec.parametric(1, 1, 1)
    window = IndexWindow(0, 20, 0, 10)
    with pytest.raises(ValueError):
        oracle_element(spec, window, (0.1j, 0.1j, 0.0), 15, 0)


def test_pad_sufficiency_small_y():
    spec = AlgebraSpec.parametric(1, 2, 1)
    window = padded_window(spec, 0, 4, 20)
    dev = pad_sufficiency(spec, window, (0.1j, 0.1j, 0.0), 2, 0)
    assert dev <= 1e-14


def test_pad_sufficiency_finite_block_exact_zero():
    spec = AlgebraSpec.parametric(6, -7, -0.5)
    window = padded_window(spec, -4, 6, 20)   # clips to the block [-5, 7]
    assert (window.j_min, window.j_max) == (-5, 7)
    assert pad_sufficiency(spec, window, (0.3j, 0.3j, 0.0), 0, 0) == 0.0


def test_pad_sufficiency_documents_underpadding():
    spec = AlgebraSpec.parametric(1, 1, 1)
    window = IndexWindow(0, 9, 0, 4)          # pad 5 at y = 3: far too thin
    dev = pad_sufficiency(spec, window, (3j, 3j, 0.0), 2, 0)
    assert dev > 1e-8


def test_expm_overflow_raises():
    with pytest.raises(OverflowError):
        expm(np.diag(np.full(3, 3000.0)))
    with pytest.raises(OverflowError):
        expm(np.array([[np.inf, 0], [0, 0]]))
