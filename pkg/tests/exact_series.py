"""Exact truncated power series over Fractions.

Independent reference for the diagram columns: Taylor coefficients of
sech^p * tanh^n, the Gaussian family, and the Bessel-type closed forms are
computed here by direct series algebra (inversion and multiplication of
cosh/sinh series), never by the lattice recursion under test.
"""

import math
from fractions import Fraction


def series_mul(a, b, n):
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += x * y
    return out


def series_inv(a, n):
    assert a[0] != 0
    out = [Fraction(0)] * n
    out[0] = 1 / a[0]
    for k in range(1, n):
        s = Fraction(0)
        for i in range(1, k + 1):
            s += a[i] * out[k - i]
        out[k] = -s / a[0]
    return out


def series_pow(a, p, n):
    out = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(p):
        out = series_mul(out, a, n)
    return out


def cosh_series(n):
    return [Fraction(1, math.factorial(k)) if k % 2 == 0 else Fraction(0)
            for k in range(n)]


def sinh_series(n):
    return [Fraction(1, math.factorial(k)) if k % 2 == 1 else Fraction(0)
            for k in range(n)]


def sech_tanh_series(p, n_pow, n):
    """Coefficients of sech(y)^p * tanh(y)^n_pow (integer p >= 1)."""
    sech = series_inv(cosh_series(n), n)
    tanh = series_mul(sinh_series(n), sech, n)
    out = series_pow(sech, p, n)
    for _ in range(n_pow):
        out = series_mul(out, tanh, n)
    return out


def gaussian_series(n_pow, n):
    """Coefficients of y^n_pow * exp(-y^2/2)."""
    out = [Fraction(0)] * n
    for j in range(0, (n - n_pow + 1) // 2 + 1):
        r = n_pow + 2 * j
        if r < n:
            out[r] = Fraction((-1) ** j, 2 ** j * math.factorial(j))
    return out


def bessel2y_series(order, n):
    """Coefficients of J_order(2y), order >= 0."""
    out = [Fraction(0)] * n
    for j in range(0, n):
        r = 2 * j + order
        if r >= n:
            break
        out[r] = Fraction((-1) ** j, math.factorial(j) * math.factorial(j + order))
    return out


def phase_gn_series(n_idx, n):
    """Coefficients of (n_idx+1) * J_{n_idx+1}(2y) / y."""
    out = [Fraction(0)] * n
    for j in range(0, n):
        r = 2 * j + n_idx
        if r >= n:
            break
        out[r] = Fraction((-1) ** j * (n_idx + 1),
                          math.factorial(j) * math.factorial(j + n_idx + 1))
    return out


def phase_gnm_series(n_idx, m_idx, n):
    """Coefficients of J_{n-m}(2y) + (-1)^m J_{n+m+2}(2y) with the
    reflection J_{-k} = (-1)^k J_k applied for n < m."""
    k = n_idx - m_idx
    if k >= 0:
        first = bessel2y_series(k, n)
    else:
        first = [(-1) ** (-k) * c for c in bessel2y_series(-k, n)]
    second = bessel2y_series(n_idx + m_idx + 2, n)
    sign = (-1) ** (m_idx % 2)
    return [a + sign * b for a, b in zip(first, second)]
