from fractions import Fraction

import pytest

from susybi import examples as ex
from susybi.builder import (
    Superpotential,
    build_dual_polynomials,
    build_eigenfunction,
    build_inhomogeneity,
    hamiltonian_apply,
    potential_series,
)
from susybi.errors import DegenerateParameterError
from susybi.series import MINUS, PLUS, LaurentSeries, boundary_values, to_float_ring


@pytest.mark.parametrize("n", range(6))
def test_morse_closed_forms(n):
    U = Superpotential.morse()
    assert ex.morse_psi_closed(n, 12) == build_eigenfunction(n, U, 0, 12)
    chi, lam = ex.morse_chi_closed(n)
    assert chi == build_dual_polynomials(n, U)
    assert lam.plus == chi.plus.c[n] and lam.minus == -chi.minus.c[n]
    float_plus, _ = ex.morse_lambda_float(n)
    assert abs(float_plus - to_float_ring(lam.plus)) < 1e-40


@pytest.mark.parametrize("mu", [2, Fraction(-1, 3)])
def test_morse_scaling(mu):
    U = Superpotential.morse(mu)
    assert ex.morse_psi_closed(2, 6, mu) == build_eigenfunction(2, U, 0, 6)
    chi, lam = ex.morse_chi_closed(3, mu)
    assert chi == build_dual_polynomials(3, U)
    assert build_inhomogeneity(3, chi, U).plus.lam == (lam.plus,)


@pytest.mark.parametrize("n", range(5))
def test_morse_second_order_form(n):
    U = Superpotential.morse()
    chi, _ = ex.morse_chi_closed(n)
    form = ex.morse_second_order_form(n)
    for sector in (PLUS, MINUS):
        s = chi[sector].series
        assert hamiltonian_apply(s, U, 0, sector) - s.scale(n * n) == form[sector]


def test_morse_config_rejects_zero_scale():
    with pytest.raises(ValueError):
        ex.MorseConfig(mu=0)


def test_singular_ground_states():
    assert ex.singular_psi_closed(0, 0, PLUS, 6).a == (1, -1, 0, 0, 0, 0, 0)
    assert ex.singular_psi_closed(0, 0, MINUS, 6).a == (1,) * 7


@pytest.mark.parametrize("nu", [0, Fraction(1, 3), Fraction(-1, 5)])
@pytest.mark.parametrize("n", range(5))
def test_singular_hypergeometric_matches_recursion(n, nu):
    U = Superpotential.singular(14)
    rec = build_eigenfunction(n, U, nu, 12)
    for sector in (PLUS, MINUS):
        assert ex.singular_psi_closed(n, nu, sector, 12).a == rec[sector].a


@pytest.mark.parametrize("n", range(7))
def test_singular_duals(n):
    plus, minus, at_one = ex.singular_chi_closed(n)
    rec = build_dual_polynomials(n, Superpotential.singular(n + 2))
    assert plus.c == rec.plus.c and minus.c == rec.minus.c
    assert ex.singular_chi_minus_direct(n).c == minus.c
    if n:
        one_minus_z = LaurentSeries([1, -1])
        assert one_minus_z * ex.singular_chi_minus_quotient(n) == minus.series
    m_at_one, m_slope = boundary_values(minus.series)
    if n:
        assert m_at_one == 0
    assert 2 * m_slope == -n * at_one
    assert abs(ex.singular_chi_plus_at_one_float(n) - to_float_ring(at_one)) < 1e-12 * float(at_one)


def test_singular_chi_plus_at_one_values():
    values = [ex.singular_chi_closed(n)[2] for n in range(4)]
    assert values == [1, 2, Fraction(5, 3), Fraction(3, 2)]


def test_divide_by_one_minus_z():
    poly = LaurentSeries([1, 0, -1], -2)  # z^-2 - 1 = (1 - z)(z^-2 + z^-1)
    assert ex.divide_by_one_minus_z(poly) == LaurentSeries([1, 1], -2)
    with pytest.raises(ValueError):
        ex.divide_by_one_minus_z(LaurentSeries([1, 1], -1))


@pytest.mark.parametrize("n", range(5))
def test_singular_identities(n):
    assert ex.singular_inhomogeneity_identities(n).passed
    for sector in (PLUS, MINUS):
        _, report = ex.singular_eta(n, sector)
        assert report.passed


def test_singular_config_degeneracy():
    with pytest.raises(DegenerateParameterError):
        ex.SingularConfig(nu=Fraction(-3, 2))


def test_bessel_partner_potential():
    U, v_minus = ex.bessel_superpotential(12)
    assert v_minus.coefficients(2, 8) == [-1, 0, Fraction(-1, 2), 0, Fraction(-1, 8), 0,
                                          Fraction(-11, 384)]
    v_plus = potential_series(U, PLUS)
    assert v_plus.trunc_order >= 12
    assert v_plus.items() == [(2, 1)]
    assert U.upsilon[:6] == (0, Fraction(1, 2), 0, Fraction(1, 16), 0, Fraction(1, 96))


def test_bessel_needs_order_two():
    with pytest.raises(ValueError):
        ex.bessel_superpotential(1)
