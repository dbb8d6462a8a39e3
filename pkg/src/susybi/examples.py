"""Closed forms for the worked models, used as oracles against :mod:`susybi.builder`.

Three superpotentials are covered:

* complex Morse, ``U = mu z``: Bessel-type eigenfunctions and dual polynomials;
* the singular ``U = z/(1 - z)``: hypergeometric eigenfunctions, dual
  polynomials with a ``z = 1`` boundary inhomogeneity;
* the Bessel quotient ``U = z J_1(z)/J_0(z)``, for which ``V_+ = z**2``.

Gamma-function ratios with surd arguments are never carried symbolically.
Conjugate factors ``(r + s)(r - s)`` are multiplied out into rationals, and the
surd form itself is only evaluated in the big-float ring as a cross-check.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .builder import (
    DualPolynomial,
    Eigenfunction,
    SectorPair,
    Superpotential,
    apply_first_order,
    hamiltonian_apply,
    potential_series,
)
from .errors import DegenerateParameterError
from .series import (
    FLOAT_CTX,
    MINUS,
    PLUS,
    RATIONAL,
    LaurentSeries,
    SectorSign,
    boundary_values,
    coerce,
    format_coefficient,
    ring_of,
)
from .verify import _Tally


@dataclass(frozen=True)
class MorseConfig:
    mu: object = 1
    n_max: int = 5
    depth: int = 12

    def __post_init__(self):
        if self.mu == 0:
            raise ValueError("the Morse scale mu must be nonzero")


@dataclass(frozen=True)
class SingularConfig:
    nu: object = 0
    n_max: int = 5
    depth: int = 12

    def __post_init__(self):
        twice = 2 * Fraction(self.nu)
        window = 2 * self.n_max + self.depth
        if twice.denominator == 1 and -window <= twice <= -1:
            raise DegenerateParameterError(f"2*nu = {twice} lies in the degeneracy window")


@dataclass(frozen=True)
class SubsidiaryFunction:
    level: int
    sector: SectorSign
    eta: LaurentSeries


def _half_rising(start, count):
    """``prod_{i=0}^{count-1} (start + i)`` for a rational ``start``."""
    out = Fraction(1)
    for i in range(count):
        out *= start + i
    return out


# -- complex Morse ---------------------------------------------------------


def morse_normalization(n):
    """``Z_n = 2**n Gamma(n + 1/2)`` in the big-float ring (pins ``a_{n,0} = c_{n,0} = 1``)."""
    return FLOAT_CTX.mpf(2) ** n * FLOAT_CTX.gamma(n + FLOAT_CTX.mpf(1) / 2)


def morse_psi_closed(n, J, mu=1):
    """``psi_n^(+/-)`` from the modified-Bessel double series with ``Z_n = 2**n Gamma(n+1/2)``.

    With that normalization the even and odd terms are::

        a_{2k}   =        1 / (4**k k! (n+1/2)_k)
        a_{2k+1} = -/+ 1 / (2 4**k k! (n+1/2)_{k+1})

    and ``U = mu z`` follows by ``z -> mu z``.
    """
    half = Fraction(2 * n + 1, 2)
    base = []
    for j in range(J + 1):
        k, odd = divmod(j, 2)
        if odd:
            base.append(Fraction(1, 2 * 4**k * factorial(k)) / _half_rising(half, k + 1))
        else:
            base.append(Fraction(1, 4**k * factorial(k)) / _half_rising(half, k))

    mu = Fraction(mu)

    def sector(sign):
        a = tuple((-sign if j % 2 else 1) * b * mu**j for j, b in enumerate(base))
        return Eigenfunction(n, PLUS if sign == 1 else MINUS, a)

    return SectorPair(sector(1), sector(-1))


def morse_lambda(n):
    """``lambda_n^+ = (-1)**m Gamma(m+1/2) / (Z_n Gamma(m+1))`` with ``m = n // 2``, as a rational."""
    m = n // 2
    plus = Fraction((-1) ** m, 2**n * factorial(m)) / _half_rising(Fraction(2 * m + 1, 2), n - m)
    return plus, (-1) ** (n + 1) * plus


def morse_lambda_float(n):
    """The same quantity straight from the Gamma functions in big floats."""
    m = n // 2
    g = FLOAT_CTX.gamma
    half = FLOAT_CTX.mpf(1) / 2
    plus = (-1) ** m * g(m + half) / (morse_normalization(n) * g(m + 1))
    return plus, (-1) ** (n + 1) * plus


def morse_chi_closed(n, mu=1):
    """Dual polynomials ``chi_n^(+/-)`` and the constants ``lambda_n^(+/-)``.

    Returns ``(SectorPair of DualPolynomial, SectorPair of lambda)`` where
    ``Lambda_n^(+/-) = lambda_n^(+/-) z`` (for ``mu = 1``).  The Gamma ratio
    ``Gamma(n-k+1/2)/Gamma(n+1/2)`` is ``1/prod_{i=1}^k (n - i + 1/2)``.
    """
    mu = Fraction(mu)
    base = []
    for j in range(n + 1):
        k, odd = divmod(j, 2)
        if odd:
            den = 2 * 4**k * factorial(k) * _half_rising(Fraction(2 * n - 2 * k - 1, 2), k + 1)
        else:
            den = 4**k * factorial(k) * _half_rising(Fraction(2 * n - 2 * k + 1, 2), k)
        base.append(Fraction((-1) ** k) / den)

    def sector(sign):
        c = tuple((sign if j % 2 else 1) * b * mu**j for j, b in enumerate(base))
        return DualPolynomial(n, PLUS if sign == 1 else MINUS, c)

    lam_plus, lam_minus = morse_lambda(n)
    scale = mu ** (n + 1)
    return SectorPair(sector(1), sector(-1)), SectorPair(lam_plus * scale, lam_minus * scale)


def morse_second_order_form(n):
    """``(H_(+/-) - n**2) chi_n^(+/-)`` as written explicitly for ``mu = 1``.

    ``lambda^+ ((1 + (-1)**n n) z - z**2)`` and ``lambda^- ((1 + (-1)**n n) z + z**2)``.
    """
    lam_plus, lam_minus = morse_lambda(n)
    lin = 1 + (-1) ** n * n
    return SectorPair(
        LaurentSeries([lam_plus * lin, -lam_plus], 1),
        LaurentSeries([lam_minus * lin, lam_minus], 1),
    )


# -- singular U = z/(1 - z) --------------------------------------------------


def _hypergeometric_parameters(x, sector):
    """Symmetric functions ``(a + b, a b)`` and the ``(1 - z)`` power for each sector.

    ``a, b = r +/- sqrt(1 + x**2)`` with ``r = 1 + x`` (plus) or ``2 + x`` (minus),
    so ``a b = r**2 - 1 - x**2`` stays rational.
    """
    r = 1 + x if sector is PLUS else 2 + x
    return 2 * r, r * r - 1 - x * x, 1 if sector is PLUS else 2


def hypergeometric_coefficients(a_plus_b, a_times_b, c, J):
    """Taylor coefficients of ``2F1(a, b; c; z)`` from ``a + b`` and ``a b`` only.

    ``(a)_k (b)_k`` obeys ``P_{k+1} = P_k (ab + k(a+b) + k**2)``.
    """
    t = [coerce(1, _ring_of(c))]
    for k in range(J):
        den = (c + k) * (k + 1)
        if den == 0:
            raise DegenerateParameterError(f"hypergeometric lower parameter c={c} hits a pole at k={k}")
        t.append(t[-1] * (a_times_b + k * a_plus_b + k * k) / den)
    return t


def _ring_of(value):
    return ring_of(value) or RATIONAL


def singular_psi_closed(n, nu=0, sector=PLUS, J=10):
    """``psi_n^(+/-) = z**n (1-z)**p 2F1(a, b; 1 + 2n + 2nu; z)`` to depth ``J``, exactly."""
    sector = SectorSign.parse(sector)
    nu = Fraction(nu) if isinstance(nu, str) else coerce(nu, _ring_of(nu))
    x = n + nu
    c = 1 + 2 * x
    if c == int(c) and c <= 0:
        raise DegenerateParameterError(f"1 + 2n + 2nu = {c} is a non-positive integer")
    s, p, power = _hypergeometric_parameters(x, sector)
    hyper = LaurentSeries(hypergeometric_coefficients(s, p, c, J), 0, J)
    factor = LaurentSeries([1, -1]) if power == 1 else LaurentSeries([1, -2, 1])
    if hyper.ring != RATIONAL:
        factor = factor.to_float()
    psi = hyper * factor
    return Eigenfunction(n, sector, tuple(psi.coefficients(0, J)))


def singular_chi_plus(n):
    """``c_{n,k}^+ = (2n-k-1)! / (k! (2n-1)!) * prod_{i=1}^{k-1} (1 + i(2n - i))``.

    The product is ``Gamma(k-n+s) Gamma(n+s) / (Gamma(1-n+s) Gamma(1+n-k+s))``
    with ``s = sqrt(n**2 + 1)`` after pairing ``(i - n + s)(n - i + s)``.
    """
    if n == 0:
        return DualPolynomial(0, PLUS, (Fraction(1),))
    c = [Fraction(1)]
    prod = Fraction(1)
    for k in range(1, n + 1):
        if k > 1:
            prod *= 1 + (k - 1) * (2 * n - (k - 1))
        c.append(Fraction(factorial(2 * n - k - 1), factorial(k) * factorial(2 * n - 1)) * prod)
    return DualPolynomial(n, PLUS, tuple(c))


def singular_chi_plus_at_one_float(n):
    """``chi_n^+(1) = 2 s Gamma(n + s) / (Gamma(1 + 2n) Gamma(1 - n + s))``, ``s = sqrt(1 + n**2)``.

    Valid for ``n >= 1``; ``chi_0^+ = 1``.
    """
    if n == 0:
        return FLOAT_CTX.mpf(1)
    g = FLOAT_CTX.gamma
    s = FLOAT_CTX.sqrt(1 + n * n)
    return 2 * s * g(n + s) / (g(1 + 2 * n) * g(1 - n + s))


def divide_by_one_minus_z(poly):
    """Exact quotient of a Laurent polynomial by ``(1 - z)``; raises if not divisible."""
    if not poly.coeffs:
        return poly
    q = []
    running = 0
    for e, c in poly.items():
        running += c
        q.append(running)
    if q[-1] != 0:
        raise ValueError("polynomial does not vanish at z = 1")
    return LaurentSeries(q[:-1], poly.min_exp)


def singular_chi_minus(n, chi_plus=None):
    """``chi_n^- = -(1/n) (z chi_n^+' + z/(1-z) (chi_n^+ - chi_n^+(1)))``, ``chi_0^- = 1``."""
    if n == 0:
        return DualPolynomial(0, MINUS, (Fraction(1),))
    chi = (chi_plus or singular_chi_plus(n)).series
    at_one, _ = boundary_values(chi)
    # z/(1-z) * (chi - chi(1)) is a Laurent polynomial since the bracket vanishes at 1.
    bracket = chi - LaurentSeries.monomial(0, at_one)
    singular_part = divide_by_one_minus_z(bracket).shift(1)
    minus = (chi.euler_derivative() + singular_part).scale(Fraction(-1, n))
    return DualPolynomial(n, MINUS, tuple(minus.coefficients(-n, 0)))


def singular_chi_minus_direct(n):
    """Coefficients ``-(1/n)(k - n + 2nk - k**2) c_{n,k}^+`` (``k >= 1``) of the simplified form."""
    if n == 0:
        return DualPolynomial(0, MINUS, (Fraction(1),))
    cp = singular_chi_plus(n).c
    c = [Fraction(1)] + [Fraction(-(k - n + 2 * n * k - k * k), n) * cp[k] for k in range(1, n + 1)]
    return DualPolynomial(n, MINUS, tuple(c))


def singular_chi_minus_quotient(n):
    """Polynomial ``q`` with ``chi_n^- = (1 - z) q`` from the factored closed form (``n >= 1``).

    ``q_j = 2(n-j) (2n-j-1)! / (j! (2n)!) * prod_{i=1}^j (1 + i(2n - i))``
    for ``z**(j-n)``, ``j = 0..n-1``.
    """
    q = []
    prod = Fraction(1)
    for j in range(n):
        if j > 0:
            prod *= 1 + j * (2 * n - j)
        q.append(Fraction(2 * (n - j) * factorial(2 * n - j - 1), factorial(j) * factorial(2 * n)) * prod)
    return LaurentSeries(q, -n)


def singular_chi_closed(n):
    """``(chi_n^+, chi_n^-, chi_n^+(1))`` with ``chi_n^+(1)`` exact."""
    plus = singular_chi_plus(n)
    minus = singular_chi_minus(n, plus)
    at_one, _ = boundary_values(plus.series)
    return plus, minus, at_one


def _minus_d(f, U, sign):
    """``(-z d/dz + sign * U) f``."""
    return -f.euler_derivative() + (U.series * f).scale(sign)


def singular_inhomogeneity_identities(n, K=None, J=None):
    """Check the boundary-value inhomogeneities and first-order relations at level ``n``.

    * ``(H_+ - n**2) chi_n^+ = U chi_n^+(1)``
    * ``(H_- - n**2) chi_n^- = U 2 chi_n^-'(1)`` (``n >= 1``), ``H_- chi_0^- = V_-``
    * ``2 chi_n^-'(1) = -n chi_n^+(1)`` and ``chi_n^-(1) = 0`` (``n >= 1``)
    * ``(D +/- U) psi_n^(+/-) = n psi_n^(-/+)``
    * ``(-D - U) chi_n^+ = n chi_n^- - U chi_n^+(1)``
    * ``(-D + U) chi_n^- = n chi_n^+ + U delta_{n0}``

    ``U`` is truncated at ``K`` (default ``n + 12``); series identities hold on
    the determined window.
    """
    K = n + 12 if K is None else K
    J = K - 1 if J is None else J
    U = Superpotential.singular(K)
    u = U.series
    plus, minus, at_one = singular_chi_closed(n)
    chi_p, chi_m = plus.series, minus.series
    m_at_one, m_slope = boundary_values(chi_m)
    scope = {"model": "singular", "n": n, "K": K, "J": J, "nu": "0"}
    tally = _Tally("singular_inhomogeneity", scope, RATIONAL)

    lhs = hamiltonian_apply(chi_p, U, 0, PLUS) - chi_p.scale(n * n)
    tally.vanishes({"identity": "H+ chi+"}, lhs - u.scale(at_one))
    lhs = hamiltonian_apply(chi_m, U, 0, MINUS) - chi_m.scale(n * n)
    if n == 0:
        tally.vanishes({"identity": "H- chi0-"}, lhs - potential_series(U, MINUS))
    else:
        tally.vanishes({"identity": "H- chi-"}, lhs - u.scale(2 * m_slope))
        tally.compare({"identity": "chi-(1)"}, 0, m_at_one)
    tally.compare({"identity": "2 chi-'(1) = -n chi+(1)"}, -n * at_one, 2 * m_slope)

    psi_p = singular_psi_closed(n, 0, PLUS, J).series
    psi_m = singular_psi_closed(n, 0, MINUS, J).series
    tally.vanishes({"identity": "(D+U) psi+"}, apply_first_order(psi_p, U, 0, PLUS) - psi_m.scale(n))
    tally.vanishes({"identity": "(D-U) psi-"}, apply_first_order(psi_m, U, 0, MINUS) - psi_p.scale(n))
    tally.vanishes({"identity": "(-D-U) chi+"},
                   _minus_d(chi_p, U, -1) - chi_m.scale(n) + u.scale(at_one))
    delta = u if n == 0 else u.scale(0)
    tally.vanishes({"identity": "(-D+U) chi-"}, _minus_d(chi_m, U, 1) - chi_p.scale(n) - delta)
    return tally.done()


def singular_eta(n, sector, K=None):
    """``eta_n^(+/-) = n chi_n^(-/+) - (-D +/- U) chi_n^(+/-)`` and its second-order check.

    Returns ``(SubsidiaryFunction, report)``; the report verifies
    ``(H_(-/+) - n**2) chi_n^(+/-) = -n eta_n^(-/+) - (-D -/+ U) eta_n^(+/-)``.
    """
    sector = SectorSign.parse(sector)
    K = n + 12 if K is None else K
    U = Superpotential.singular(K)
    plus, minus, _ = singular_chi_closed(n)
    chis = {PLUS: plus.series, MINUS: minus.series}

    def eta(s):
        return chis[s.flip()].scale(n) - _minus_d(chis[s], U, s.value)

    own, other = eta(sector), eta(sector.flip())
    chi = chis[sector]
    lhs = hamiltonian_apply(chi, U, 0, sector.flip()) - chi.scale(n * n)
    rhs = -other.scale(n) - _minus_d(own, U, -sector.value)
    tally = _Tally("singular_eta", {"model": "singular", "n": n, "sector": str(sector), "K": K},
                   RATIONAL)
    tally.vanishes({"identity": "second order eta"}, lhs - rhs)
    return SubsidiaryFunction(n, sector, own), tally.done()


# -- Bessel quotient ---------------------------------------------------------


def bessel_superpotential(J):
    """``U = z J_1(z)/J_0(z)`` to order ``J`` and ``V_- = -z**2 - 2 U**2``.

    The coefficients solve ``k upsilon_k = delta_{k,2} + (U**2)_k``, i.e.
    ``V_+ = -U**2 + z U' = z**2``.
    """
    if J < 2:
        raise ValueError("need J >= 2 to reach the first nonzero coefficient")
    ups = [Fraction(0)] * (J + 1)
    for k in range(1, J + 1):
        square = sum((ups[i] * ups[k - i] for i in range(1, k)), Fraction(0))
        ups[k] = (Fraction(int(k == 2)) + square) / k
    U = Superpotential(tuple(ups[1:]), exact=False)
    u = U.series
    v_minus = LaurentSeries.monomial(2, -1) - (u * u).scale(2)
    return U, v_minus.truncate(J)


def describe_values(values):
    return [format_coefficient(v) for v in values]
