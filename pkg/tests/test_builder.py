import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from susybi.builder import (
    SectorPair,
    Superpotential,
    build_dual_polynomials,
    build_eigenfunction,
    build_inhomogeneity,
    build_system,
    chi_by_minors,
    determinant,
    determinant_oracles,
    hamiltonian_apply,
    intertwining_residuals,
    potential_series,
    psi_by_minors,
    psi_from_duals_triangular,
    random_superpotential,
)
from susybi.errors import DegenerateParameterError, UndeterminedCoefficientError
from susybi.series import EXACT, FLOAT, MINUS, PLUS, LaurentSeries, to_float_ring

from conftest import SEED, random_upsilon, small_fractions


def test_zero_superpotential_gives_monomials():
    U = Superpotential((0,))
    for n in range(4):
        chi = build_dual_polynomials(n, U)
        assert chi.plus.c == (1,) + (0,) * n
        assert build_eigenfunction(n, U, 0, 5).minus.a == (1,) + (0,) * 5


def test_morse_level_one():
    U = Superpotential.morse()
    chi = build_dual_polynomials(1, U)
    assert chi.plus.c == (1, 1) and chi.minus.c == (1, -1)
    lam = build_inhomogeneity(1, chi, U)
    assert lam.plus.lam == (1,) and lam.minus.lam == (1,)
    assert lam.plus.trunc_order == EXACT


def test_psi_zero_for_morse():
    psi = build_eigenfunction(0, Superpotential.morse(), 0, 4)
    assert psi.plus.a == (1, -1, Fraction(1, 2), Fraction(-1, 6), Fraction(1, 24))


def test_truncated_superpotential_limits_lambda():
    U = Superpotential.singular(6)
    lam = build_inhomogeneity(2, build_dual_polynomials(2, U), U)
    assert lam.plus.trunc_order == 4 and len(lam.plus.lam) == 4
    with pytest.raises(UndeterminedCoefficientError):
        lam.plus.series[5]


def test_truncated_superpotential_refuses_unknown_coefficients():
    U = Superpotential.singular(3)
    assert U.coefficient(3) == 1
    with pytest.raises(UndeterminedCoefficientError):
        U.coefficient(4)
    assert Superpotential((1, 2)).coefficient(9) == 0


def test_superpotential_needs_a_coefficient():
    with pytest.raises(ValueError):
        Superpotential(())


def test_strings_are_parsed_exactly():
    assert Superpotential(("1/3", "-2")).upsilon == (Fraction(1, 3), Fraction(-2))


@pytest.mark.parametrize("nu", [Fraction(-1, 2), Fraction(-3, 2), -1])
def test_degenerate_nu_rejected(nu):
    with pytest.raises(DegenerateParameterError):
        build_system(Superpotential.morse(), nu, 3, 6)


def test_nu_outside_window_is_fine():
    build_system(Superpotential.morse(), Fraction(-1, 3), 2, 4)


def test_three_routes_to_psi_agree(rng):
    U = Superpotential(random_upsilon(rng))
    nu = Fraction(1, 3)
    n, J = 1, 5
    for sector in (PLUS, MINUS):
        duals = [build_dual_polynomials(k, U, nu)[sector] for k in range(n, n + J + 1)]
        recursion = build_eigenfunction(n, U, nu, J)[sector]
        assert psi_from_duals_triangular(n, duals, J).a == recursion.a
        assert psi_by_minors(n, duals, J).a == recursion.a
        assert determinant_oracles(n, J, duals=duals) == recursion.series


def test_chi_from_minors_matches_recursion(rng):
    U = Superpotential(random_upsilon(rng))
    for n in range(5):
        eig = [build_eigenfunction(k, U, 0, n)[PLUS] for k in range(n)]
        assert chi_by_minors(n, eig).c == build_dual_polynomials(n, U).plus.c


def test_determinant():
    assert determinant([]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[Fraction(1, 2), 3], [1, 6]]) == 0
    assert determinant([[2, 0, 1], [1, 3, 2], [1, 1, 1]]) == 2 * 1 - 0 + 1 * (1 - 3)


def test_hamiltonian_forms_agree():
    U = Superpotential((1, Fraction(-1, 2)))
    psi = build_eigenfunction(2, U, Fraction(1, 3), 6).plus.series
    out = hamiltonian_apply(psi, U, Fraction(1, 3), PLUS)
    assert out.trunc_order == psi.trunc_order


def test_partner_potentials():
    U = Superpotential.morse()
    assert potential_series(U, PLUS) == LaurentSeries([-1, 0], 2) + LaurentSeries([1], 1)
    assert potential_series(U, MINUS) == LaurentSeries([-1], 1) + LaurentSeries([-1], 2)


def test_intertwining(rng):
    system = build_system(Superpotential(random_upsilon(rng)), Fraction(-1, 5), 3, 6)
    for n, sector, kind, residual in intertwining_residuals(system):
        assert residual.is_zero(), (n, sector, kind)


def test_float_ring_build():
    U = Superpotential(tuple(to_float_ring(v) for v in (1, Fraction(1, 3))), ring=FLOAT)
    system = build_system(U, to_float_ring(Fraction(1, 3)), 2, 4)
    exact = build_system(Superpotential((1, Fraction(1, 3))), Fraction(1, 3), 2, 4)
    for n in range(3):
        for x, y in zip(system.psi[n].plus.a, exact.psi[n].plus.a):
            assert abs(x - to_float_ring(y)) <= 1e-40 * max(1, abs(x))


def test_random_superpotential_is_reproducible():
    a = random_superpotential(random.Random(SEED))
    b = random_superpotential(random.Random(SEED))
    assert a == b and a.K == 4


@given(st.lists(small_fractions(), min_size=1, max_size=4))
def test_sign_flip_duality(ups):
    """chi^- and Lambda^- are chi^+ and Lambda^+ for -U."""
    U = Superpotential(tuple(ups))
    V = U.negated()
    for n in range(4):
        chi_u, chi_v = build_dual_polynomials(n, U), build_dual_polynomials(n, V)
        assert chi_u.minus.c == chi_v.plus.c
        lam_u, lam_v = build_inhomogeneity(n, chi_u, U), build_inhomogeneity(n, chi_v, V)
        assert lam_u.minus.lam == lam_v.plus.lam


@given(st.lists(small_fractions(), min_size=5, max_size=5), st.integers(1, 4), small_fractions())
def test_locality_in_upsilon(ups, j, bump):
    """c_{n,j} only sees upsilon_1..upsilon_j."""
    U = Superpotential(tuple(ups))
    changed = list(ups)
    changed[j] += bump + 1  # upsilon_{j+1}
    V = Superpotential(tuple(changed))
    n = 4
    a, b = build_dual_polynomials(n, U).plus.c, build_dual_polynomials(n, V).plus.c
    assert a[: j + 1] == b[: j + 1]


def test_sector_pair_access():
    pair = SectorPair(1, 2)
    assert pair["+"] == 1 and pair[MINUS] == 2
    assert pair.map(lambda v: -v) == SectorPair(-1, -2)
