import cmath
import math
from fractions import Fraction

import mpmath
import pytest

import regpet


def sigma(r, n):
    return sum(d**r for d in range(1, n + 1) if n % d == 0)


def test_eisenstein_coefficients():
    e4 = regpet.classical_form("E4", 12)
    assert e4.coeff(0) == 1
    for n in range(1, 12):
        assert e4.coeff(n) == 240 * sigma(3, n)


def test_faber_and_duality():
    f1 = regpet.faber_basis(1, 16)
    assert f1.coeff(-1) == 1
    assert f1.coeff(0) == 24
    assert f1.coeff(1) == 196884
    for k in (0, -2, -6):
        f = regpet.wh_basis(k, regpet.wh_min_pole(k), 12)
        g = regpet.wh_basis(2 - k, regpet.wh_min_pole(2 - k), 12)
        assert regpet.pairing(f, g) == Fraction(0)


def test_expint_against_mpmath():
    for r in (0.5, 1.0, 1.5, 2.0):
        for z in (0.7 + 0.2j, 3 - 1j, -2 + 0.5j):
            v, err = regpet.exp_integral(r, z)
            o = complex(mpmath.expint(r, z))
            assert abs(v - o) < 1e-11 * (1 + abs(o))


def test_negative_axis_branch():
    v, _ = regpet.exp_integral(1.0, -2.0 + 0j)
    o = complex(mpmath.expint(1, mpmath.mpc(-2, 1e-30)))
    assert abs(v - o) < 1e-12


def test_kloosterman_brute_force():
    def brute(m, n, c):
        s = 0
        for d in range(c):
            if math.gcd(d, c) != 1:
                continue
            dbar = pow(d, -1, c) if c > 1 else 0
            s += cmath.exp(2j * math.pi * (m * d + n * dbar) / c)
        return s.real

    for c in range(1, 30):
        assert abs(regpet.kloosterman_sum(1, 2, c) - brute(1, 2, c)) < 1e-9


def test_traces_and_weil():
    J = regpet.faber_basis(1, 64) - regpet.from_coeffs({0: "24"}, order=64)
    value, nearest, residual = regpet.cm_trace(J, -3)
    assert nearest == -248 and residual < 1e-8
    assert regpet.class_number(-23) == 3
    T, S, sig, level = regpet.weil_matrices([(2, "1/4")])
    assert sig == 1 and level == 4
    assert abs(T[1][1] - 1j) < 1e-15


def test_delta_norm():
    d = regpet.classical_form("Delta", 30)
    v, err = regpet.inner_product(d, d, 12.0)
    assert abs(v.real - 1.0353620568043209e-06) < 1e-15


def test_g1_self_product_routes():
    h = regpet.horocycle_value()
    f1 = regpet.faber_basis(1, 64)
    L = regpet.lstar(f1, 0.0, 1.0, True)
    assert abs(3 / (4 * math.pi) * L.real - h) < 1e-9 * abs(h)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        regpet.exp_integral(0.3, 1 + 0j)
    with pytest.raises(ValueError):
        regpet.run_criterion("A99")
