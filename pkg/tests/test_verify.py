from dataclasses import replace
from fractions import Fraction

import pytest

from susybi.builder import DualPolynomial, Eigenfunction, SectorPair, Superpotential, build_system
from susybi.errors import UndeterminedCoefficientError
from susybi.series import FLOAT, PLUS, to_float_ring
from susybi.verify import (
    CHECKS,
    check_biorthonormality,
    check_by_parts,
    check_completeness,
    completeness_coefficient,
    run_all,
)

from conftest import random_upsilon


@pytest.fixture
def system(rng):
    return build_system(Superpotential(random_upsilon(rng)), Fraction(1, 3), 4, 6)


def _perturb_chi(system, n, j, delta=1):
    pair = system.chi[n]
    c = list(pair.plus.c)
    c[j] += delta
    chi = list(system.chi)
    chi[n] = SectorPair(DualPolynomial(n, PLUS, tuple(c)), pair.minus)
    return replace(system, chi=tuple(chi))


def test_all_checks_pass(system):
    reports = run_all(system)
    assert [r.check_name for r in reports] == list(CHECKS)
    assert all(r.passed for r in reports)
    assert check_by_parts(system).passed


@pytest.mark.parametrize("n,j", [(1, 1), (3, 2), (4, 4)])
def test_perturbed_dual_is_caught(system, n, j):
    bad = _perturb_chi(system, n, j)
    report = check_biorthonormality(bad)
    assert not report.passed
    assert report.worst_defect > 0
    assert all(f["indices"]["k"] == n for f in report.failures)


def test_perturbed_eigenfunction_is_caught(system):
    pair = system.psi[2]
    a = list(pair.plus.a)
    a[1] += Fraction(1, 7)  # z**3, inside the paired window
    psi = list(system.psi)
    psi[2] = SectorPair(Eigenfunction(2, PLUS, tuple(a)), pair.minus)
    bad = replace(system, psi=tuple(psi))
    names = {r.check_name for r in run_all(bad) if not r.passed}
    assert {"biorthonormality", "completeness", "eigen_residual", "b_expansion"} <= names


def test_report_serializes(system):
    bad = _perturb_chi(system, 2, 1)
    doc = check_biorthonormality(bad).to_dict()
    assert doc["status"] == "fail"
    assert doc["failures"][0]["expected"] in ("0", "1")
    assert doc["scope"]["nu"] == "1/3"


def test_completeness_window(system):
    assert completeness_coefficient(system, PLUS, 3, 3) == 1
    assert completeness_coefficient(system, PLUS, 3, 1) == 0
    with pytest.raises(ValueError):
        check_completeness(system, P=system.N + 1)


def test_shallow_depth_is_refused():
    system = build_system(Superpotential.morse(), 0, 4, 2)
    with pytest.raises(UndeterminedCoefficientError):
        check_biorthonormality(system)


def test_float_ring_tolerance():
    U = Superpotential((to_float_ring(1), to_float_ring(Fraction(-1, 3))), ring=FLOAT)
    system = build_system(U, to_float_ring(Fraction(1, 3)), 3, 6)
    assert all(r.passed for r in run_all(system))
