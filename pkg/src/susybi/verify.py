"""Executable checks of the structural identities of a built system.

Every check returns a :class:`VerificationReport`.  In the rational ring a
check passes only on exact equality; in the float ring the tolerance is
``1e-12`` relative.
"""

from dataclasses import dataclass, field

from .builder import FLOAT_RTOL, apply_first_order, hamiltonian_apply
from .errors import UndeterminedCoefficientError
from .series import FLOAT, MINUS, PLUS, format_coefficient, pairing, zero

CHECKS = ("biorthonormality", "completeness", "eigen_residual", "dual_second_order", "b_expansion")


@dataclass
class VerificationReport:
    check_name: str
    scope: dict
    status: str = "pass"
    worst_defect: object = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        return {
            "check": self.check_name,
            "scope": self.scope,
            "status": self.status,
            "worst_defect": format_coefficient(self.worst_defect),
            "failures": [
                {"indices": f["indices"],
                 "expected": format_coefficient(f["expected"]),
                 "actual": format_coefficient(f["actual"])}
                for f in self.failures
            ],
        }


class _Tally:
    """Accumulates comparisons into a report."""

    def __init__(self, name, scope, ring):
        self.report = VerificationReport(name, scope, worst_defect=zero(ring))
        self.ring = ring

    def compare(self, indices, expected, actual):
        defect = abs(actual - expected)
        if defect > self.report.worst_defect:
            self.report.worst_defect = defect
        if self.ring == FLOAT:
            ok = defect <= FLOAT_RTOL * max(1, abs(expected))
        else:
            ok = defect == 0
        if not ok:
            self.report.failures.append({"indices": indices, "expected": expected, "actual": actual})

    def vanishes(self, indices, series):
        """Every known coefficient of ``series`` should be zero."""
        for e, c in series.items():
            self.compare(dict(indices, exponent=e), zero(self.ring), c)

    def done(self):
        self.report.status = "fail" if self.report.failures else "pass"
        return self.report


def describe_scope(system, **extra):
    U = system.U
    scope = {
        "N": system.N,
        "J": system.J,
        "nu": format_coefficient(system.nu),
        "upsilon": [format_coefficient(v) for v in U.upsilon],
        "U_exact": U.exact,
        "ring": system.ring,
    }
    scope.update(extra)
    return scope


def _require_depth(system):
    if system.J < system.N:
        raise UndeterminedCoefficientError(
            f"pairings up to level N={system.N} need psi depth J >= N, got J={system.J}"
        )


def check_biorthonormality(system):
    """``<chi_k, psi_n> = delta_kn`` for ``0 <= k, n <= N`` in both sectors."""
    _require_depth(system)
    tally = _Tally("biorthonormality", describe_scope(system), system.ring)
    for sector in (PLUS, MINUS):
        for k in range(system.N + 1):
            chi = system.get("chi", k, sector)
            for n in range(system.N + 1):
                value = pairing(chi, system.get("psi", n, sector))
                tally.compare({"sector": str(sector), "k": k, "n": n}, int(k == n), value)
    return tally.done()


def completeness_coefficient(system, sector, p, q):
    """Coefficient of ``z**p w**-q`` in ``sum_{n<=N} chi_n(w) psi_n(z)``."""
    total = zero(system.ring)
    for n in range(q, min(p, system.N) + 1):
        c = system.chi[n][sector].c[n - q]
        a = system.psi[n][sector].a[p - n]
        total += c * a
    return total


def check_completeness(system, P=None):
    """Cauchy-kernel window: the ``z**p w**-q`` coefficient is ``delta_pq`` for ``p, q <= P``."""
    if P is None:
        P = min(system.N, system.J)
    if P < 0 or P > system.N or P > system.J:
        raise ValueError(f"window P={P} must satisfy 0 <= P <= min(N, J) = {min(system.N, system.J)}")
    tally = _Tally("completeness", describe_scope(system, P=P), system.ring)
    for sector in (PLUS, MINUS):
        for p in range(P + 1):
            for q in range(P + 1):
                value = completeness_coefficient(system, sector, p, q)
                tally.compare({"sector": str(sector), "p": p, "q": q}, int(p == q), value)
    return tally.done()


def check_eigen_residual(system):
    """``H psi_n - (n + nu)**2 psi_n`` vanishes on its determined range."""
    tally = _Tally("eigen_residual", describe_scope(system), system.ring)
    for n in range(system.N + 1):
        energy = (n + system.nu) ** 2
        for sector in (PLUS, MINUS):
            psi = system.get("psi", n, sector)
            residual = hamiltonian_apply(psi, system.U, system.nu, sector) - psi.scale(energy)
            tally.vanishes({"sector": str(sector), "n": n}, residual)
    return tally.done()


def dual_second_order_sides(system, n, sector):
    """Both sides of ``(H~ - (n+nu)**2) chi = (D - nu -/+ U) Lambda - (n + nu) Lambda'``."""
    nu, U = system.nu, system.U
    chi = system.get("chi", n, sector)
    lhs = hamiltonian_apply(chi, U, nu, sector, dual=True) - chi.scale((n + nu) ** 2)
    rhs = (apply_first_order(system.get("lambda", n, sector), U, -nu, sector.flip())
           - system.get("lambda", n, sector.flip()).scale(n + nu))
    return lhs, rhs


def check_dual_second_order(system):
    """Inhomogeneous second-order dual equation, with RHS supported on ``z**k, k >= 1``."""
    tally = _Tally("dual_second_order", describe_scope(system), system.ring)
    for n in range(system.N + 1):
        for sector in (PLUS, MINUS):
            lhs, rhs = dual_second_order_sides(system, n, sector)
            idx = {"sector": str(sector), "n": n}
            tally.vanishes(idx, lhs - rhs)
            for e, c in rhs.items():
                if e < 1:
                    tally.compare(dict(idx, exponent=e, support="rhs"), zero(system.ring), c)
    return tally.done()


def check_b_expansion(system):
    """``<chi_k^(-/+), (D + nu +/- U) psi_n^(+/-)> = (n + nu) delta_kn``."""
    _require_depth(system)
    tally = _Tally("b_expansion", describe_scope(system), system.ring)
    for sector in (PLUS, MINUS):
        for n in range(system.N + 1):
            image = apply_first_order(system.get("psi", n, sector), system.U, system.nu, sector)
            for k in range(system.N + 1):
                value = pairing(system.get("chi", k, sector.flip()), image)
                expected = (n + system.nu) if k == n else zero(system.ring)
                tally.compare({"sector": str(sector), "k": k, "n": n}, expected, value)
    return tally.done()


def check_by_parts(system):
    """``(n+nu) <chi_k^s, psi_n^s> = (k+nu) <chi_k^-s, psi_n^-s>`` for all ``k, n <= N``.

    Holds before normalization is used; it is the integration-by-parts step of
    the orthogonality argument.
    """
    _require_depth(system)
    tally = _Tally("by_parts", describe_scope(system), system.ring)
    nu = system.nu
    for sector in (PLUS, MINUS):
        for k in range(system.N + 1):
            for n in range(system.N + 1):
                left = (n + nu) * pairing(system.get("chi", k, sector), system.get("psi", n, sector))
                right = (k + nu) * pairing(system.get("chi", k, sector.flip()),
                                           system.get("psi", n, sector.flip()))
                tally.compare({"sector": str(sector), "k": k, "n": n}, left, right)
    return tally.done()


def run_all(system, P=None):
    """The five standard checks, in a fixed order."""
    return [
        check_biorthonormality(system),
        check_completeness(system, P),
        check_eigen_residual(system),
        check_dual_second_order(system),
        check_b_expansion(system),
    ]
