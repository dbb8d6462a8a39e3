"""Theta-sum partition functions and the jump of ``Z[nu]`` at ``nu = 0``.

``theta[nu] = sum_{n>=0} exp(-n**2 - 2 n nu)`` and, for generic ``nu``,
``Z[nu] = sum_{n in Z} exp(-(n + nu)**2) = exp(-nu**2) (theta[nu] + theta[-nu] - 1)``.
At ``nu = 0`` only the periodic tower ``n >= 0`` survives, ``Z_0 = theta[0]``,
so ``Z[0+] = 2 Z_0 - 1`` differs from ``Z_0``.  Inverse temperature is 1.
"""

import math
from dataclasses import dataclass

_EPS = 2.0**-52
_MAX_TERMS = 100_000


@dataclass(frozen=True)
class PartitionResult:
    nu: float
    z_value: float
    theta_plus: float
    theta_minus: float
    terms_used: int
    tail_bound: float
    z_direct: float


@dataclass(frozen=True)
class DiscontinuityReport:
    z0: float
    limit: float
    jump: float
    rows: tuple

    def as_rows(self):
        """``(eps, Z[eps], Z[eps] - (2 Z_0 - 1))`` tuples."""
        return list(self.rows)


def _tail_bound(M, nu):
    # sum_{n>M} e^{-n^2-2n nu} <= e^{-M^2-2M nu} / (1 - e^{-(2M+1+2nu)})
    rate = 2 * M + 1 + 2 * nu
    if rate <= 0:
        return math.inf
    return math.exp(-M * M - 2 * M * nu) / -math.expm1(-rate)


def theta(nu, tol=1e-12):
    """Partial sum of ``theta[nu]`` with a rigorous tail bound below ``tol``.

    Returns ``(value, terms, tail_bound)``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    total = 0.0
    for M in range(_MAX_TERMS):
        total += math.exp(-M * M - 2 * M * nu)
        bound = _tail_bound(M, nu)
        if bound < tol:
            break
    else:
        raise ValueError(f"theta[{nu}] did not converge within {_MAX_TERMS} terms")
    if tol < 4 * _EPS * abs(total):
        raise ValueError(f"tol={tol} is below double precision for theta[{nu}] ~ {total:.6g}")
    return total, M + 1, bound


def z_direct(nu, tol=1e-12):
    """Two-sided ``sum_{|n|<=M} exp(-(n + nu)**2)`` with tail below ``tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    # reduce to the symmetric window around -nu
    shift = round(nu)
    x = nu - shift
    total = math.exp(-x * x)
    M = 0
    while True:
        M += 1
        total += math.exp(-(M + x) ** 2) + math.exp(-(-M + x) ** 2)
        # both one-sided tails start at distance >= M + 1 - |x| >= M + 1/2
        d = M + 1 - abs(x)
        bound = 2 * math.exp(-d * d) / -math.expm1(-(2 * d + 1))
        if bound < tol:
            return total, 2 * M + 1, bound


def partition_z(nu, tol=1e-12):
    """``Z[nu]`` from the theta identity, cross-checked against the direct sum."""
    value_p, terms_p, tail_p = theta(nu, tol)
    value_m, terms_m, tail_m = theta(-nu, tol)
    weight = math.exp(-nu * nu)
    z_value = weight * (value_p + value_m - 1.0)
    direct, terms_d, tail_d = z_direct(nu, tol)
    if abs(direct - z_value) > 10 * tol + 8 * _EPS * abs(direct):
        raise ArithmeticError(
            f"theta identity and direct sum disagree at nu={nu}: {z_value!r} vs {direct!r}"
        )
    return PartitionResult(
        nu=nu,
        z_value=z_value,
        theta_plus=value_p,
        theta_minus=value_m,
        terms_used=max(terms_p, terms_m, terms_d),
        tail_bound=weight * (tail_p + tail_m),
        z_direct=direct,
    )


def z_zero(tol=1e-12):
    """``Z_0 = theta[0]``: the periodic ``nu = 0`` spectrum ``n >= 0`` only."""
    return theta(0.0, tol)[0]


def discontinuity_report(eps_ladder, tol=1e-12):
    """Rows ``(eps, Z[eps], Z[eps] - (2 Z_0 - 1))`` approaching ``nu -> 0+``."""
    z0 = z_zero(tol)
    limit = 2 * z0 - 1
    rows = []
    for eps in eps_ladder:
        if not 0 < eps <= 0.25:
            raise ValueError(f"eps must lie in (0, 1/4], got {eps}")
        z = partition_z(eps, tol).z_value
        rows.append((eps, z, z - limit))
    return DiscontinuityReport(z0=z0, limit=limit, jump=limit - z0, rows=tuple(rows))
