"""Construction of the supersymmetric biorthogonal system for a superpotential.

Given ``U(z) = sum_{k>0} upsilon_k z**k`` and a magnetic shift ``nu``, this
module builds, level by level,

* the dual polynomials ``chi_n^(+/-)`` (Laurent polynomials in ``1/z``),
* their inhomogeneities ``Lambda_n^(+/-)`` (strictly positive powers),
* the eigenfunctions ``psi_n^(+/-)`` (power series starting at ``z**n``),

and supplies two independent routes for the eigenfunctions (the triangular
biorthonormality solve and explicit determinant minors) used as oracles.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import DegenerateParameterError, UndeterminedCoefficientError
from .series import (
    EXACT,
    FLOAT,
    MINUS,
    PLUS,
    RATIONAL,
    LaurentSeries,
    SectorSign,
    coerce,
    infer_ring,
    parse_coefficient,
    zero,
)

FLOAT_RTOL = 1e-12


def as_coefficient(value, ring):
    """Coerce ``value`` (int, Fraction, mpf or ``"p/q"`` string) into ``ring``."""
    if isinstance(value, str):
        return parse_coefficient(value, ring)
    return coerce(value, ring)


@dataclass(frozen=True)
class SectorPair:
    """The (+, -) twins that every object in the construction comes in."""

    plus: object
    minus: object

    def __getitem__(self, sign):
        return self.plus if SectorSign.parse(sign) is PLUS else self.minus

    def items(self):
        return ((PLUS, self.plus), (MINUS, self.minus))

    def map(self, fn):
        return SectorPair(fn(self.plus), fn(self.minus))


@dataclass(frozen=True)
class Superpotential:
    """Coefficients ``upsilon_1..upsilon_K`` of ``U(z)``.

    ``exact=True`` means ``U`` is this polynomial; ``exact=False`` means the
    list is a truncation of an infinite series and ``upsilon_{k>K}`` are
    unknown.
    """

    upsilon: tuple
    exact: bool = True
    ring: str = None

    def __post_init__(self):
        values = tuple(self.upsilon)
        if len(values) < 1:
            raise ValueError("a superpotential needs at least upsilon_1 (K >= 1)")
        ring = infer_ring([v for v in values if not isinstance(v, str)], self.ring)
        object.__setattr__(self, "upsilon", tuple(as_coefficient(v, ring) for v in values))
        object.__setattr__(self, "ring", ring)

    @property
    def K(self):
        return len(self.upsilon)

    def coefficient(self, k):
        if k < 1:
            return zero(self.ring)
        if k <= self.K:
            return self.upsilon[k - 1]
        if self.exact:
            return zero(self.ring)
        raise UndeterminedCoefficientError(
            f"upsilon_{k} is needed but the superpotential is truncated at K={self.K}"
        )

    @cached_property
    def series(self):
        return LaurentSeries(self.upsilon, 1, EXACT if self.exact else self.K, self.ring)

    def negated(self):
        return Superpotential(tuple(-v for v in self.upsilon), self.exact, self.ring)

    @classmethod
    def morse(cls, mu=1, ring=RATIONAL):
        """``U = mu z``."""
        return cls((mu,), True, ring)

    @classmethod
    def singular(cls, K, ring=RATIONAL):
        """``U = z/(1 - z)`` truncated after ``z**K``."""
        return cls((1,) * K, False, ring)


@dataclass(frozen=True)
class DualPolynomial:
    """``chi_n = z**-n * sum_{j=0}^n c_j z**j`` with ``c_0 = 1``."""

    level: int
    sector: SectorSign
    c: tuple

    @cached_property
    def series(self):
        return LaurentSeries(self.c, -self.level)


@dataclass(frozen=True)
class Inhomogeneity:
    """``Lambda_n = sum_{k>=1} lambda(k) z**k``; ``lam[0]`` is ``lambda(1)``."""

    level: int
    sector: SectorSign
    lam: tuple
    trunc_order: object = EXACT

    @cached_property
    def series(self):
        return LaurentSeries(self.lam, 1, self.trunc_order, _ring(self.lam))


@dataclass(frozen=True)
class Eigenfunction:
    """``psi_n = z**n * sum_{j=0}^J a_j z**j`` with ``a_0 = 1``."""

    level: int
    sector: SectorSign
    a: tuple

    @property
    def depth(self):
        return len(self.a) - 1

    @cached_property
    def series(self):
        return LaurentSeries(self.a, self.level, self.level + self.depth)


def _ring(values):
    return infer_ring(values)


def _nu_shift(n, nu):
    return n + nu


def check_nondegenerate(nu, N, J):
    """Refuse ``nu`` with ``2 nu`` a negative integer in ``[-(2N+J), -1]``."""
    twice = 2 * nu
    if twice == int(twice) and -(2 * N + J) <= twice <= -1:
        raise DegenerateParameterError(
            f"2*nu = {twice} is a negative integer inside the degeneracy window "
            f"[-{2 * N + J}, -1] for N={N}, J={J}"
        )


def build_dual_polynomials(n, U, nu=0):
    """Dual polynomials ``chi_n^(+/-)`` by the coupled 2x2 recursion.

    Each step solves::

        c_j^+ (j - n - nu) + S_j^+ + (n + nu) c_j^- = 0
        c_j^- (j - n - nu) - S_j^- + (n + nu) c_j^+ = 0

    with ``S_j^(+/-) = sum_{k=1}^j upsilon_k c_{j-k}^(+/-)``; the determinant
    is ``j (2n + 2nu - j)``.
    """
    if n < 0:
        raise ValueError("levels start at n = 0")
    ring = U.ring
    x = _nu_shift(n, as_coefficient(nu, ring))
    one = coerce(1, ring)
    cp, cm = [one], [one]
    for j in range(1, n + 1):
        det = j * (2 * x - j)
        if det == 0:
            raise DegenerateParameterError(
                f"dual recursion determinant j(2n+2nu-j) vanishes at n={n}, j={j}, nu={nu}"
            )
        sp = sum((U.coefficient(k) * cp[j - k] for k in range(1, j + 1)), zero(ring))
        sm = sum((U.coefficient(k) * cm[j - k] for k in range(1, j + 1)), zero(ring))
        cp.append(((j - x) * sp + x * sm) / det)
        cm.append(-((j - x) * sm + x * sp) / det)
    return SectorPair(DualPolynomial(n, PLUS, tuple(cp)), DualPolynomial(n, MINUS, tuple(cm)))


def build_inhomogeneity(n, chi_pair, U):
    """``lambda_n^(+/-)(k) = +/- sum_j upsilon_{k+n-j} c_{n,j}^(+/-)``."""
    if chi_pair.plus.level != n or chi_pair.minus.level != n:
        raise ValueError(f"dual polynomials are for level {chi_pair.plus.level}, not {n}")
    if U.exact:
        kmax, trunc = U.K, EXACT
    else:
        kmax = trunc = U.K - n
        if kmax < 0:
            raise UndeterminedCoefficientError(f"Lambda_{n} needs K >= {n}, have K={U.K}")

    def one_sector(chi):
        s = chi.sector.value
        lam = []
        for k in range(1, kmax + 1):
            total = sum((U.coefficient(k + n - j) * cj for j, cj in enumerate(chi.c)), zero(U.ring))
            lam.append(s * total)
        return Inhomogeneity(n, chi.sector, tuple(lam), trunc)

    return chi_pair.map(one_sector)


def build_eigenfunction(n, U, nu=0, J=8):
    """Eigenfunctions ``psi_n^(+/-)`` to depth ``J`` by coefficient matching.

    Matching ``z**(n+j)`` in ``(z d/dz + nu +/- U) psi^(+/-) = (n + nu) psi^(-/+)``
    gives a 2x2 system with determinant ``j (2n + 2nu + j)``.
    """
    if n < 0:
        raise ValueError("levels start at n = 0")
    ring = U.ring
    x = _nu_shift(n, as_coefficient(nu, ring))
    one = coerce(1, ring)
    ap, am = [one], [one]
    for j in range(1, J + 1):
        det = j * (2 * x + j)
        if det == 0:
            raise DegenerateParameterError(
                f"eigen recursion determinant j(2n+2nu+j) vanishes at n={n}, j={j}, nu={nu}"
            )
        top = min(j, U.K) if U.exact else j
        tp = sum((U.coefficient(k) * ap[j - k] for k in range(1, top + 1)), zero(ring))
        tm = sum((U.coefficient(k) * am[j - k] for k in range(1, top + 1)), zero(ring))
        ap.append(-((x + j) * tp - x * tm) / det)
        am.append(((x + j) * tm - x * tp) / det)
    return SectorPair(Eigenfunction(n, PLUS, tuple(ap)), Eigenfunction(n, MINUS, tuple(am)))


def _by_level(duals, sector=None):
    table = {}
    for d in duals:
        if sector is not None and d.sector is not sector:
            raise ValueError("duals from different sectors mixed")
        sector = d.sector
        table[d.level] = d
    return table, sector


def psi_from_duals_triangular(n, duals, J):
    """Solve biorthonormality for ``psi_n`` given ``chi_n .. chi_{n+J}``.

    Forward substitution in ``sum_{j=0}^{k-n} c_{k,k-n-j} a_j = 0`` (``k > n``).
    """
    table, sector = _by_level(duals)
    missing = [k for k in range(n, n + J + 1) if k not in table]
    if missing:
        raise ValueError(f"dual polynomials missing for levels {missing}")
    ring = _ring(table[n].c)
    a = [coerce(1, ring) / table[n].c[0]]
    for m in range(1, J + 1):
        c = table[n + m].c
        a.append(-sum((c[m - j] * a[j] for j in range(m)), zero(ring)) / c[0])
    return Eigenfunction(n, sector, tuple(a))


def determinant(matrix):
    """Determinant by fraction-exact Gaussian elimination with pivot search."""
    m = [list(row) for row in matrix]
    size = len(m)
    if size == 0:
        return 1
    det = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return 0 * m[0][0]
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for r in range(col + 1, size):
            f = m[r][col] / p
            if f != 0:
                for k in range(col, size):
                    m[r][k] -= f * m[col][k]
    return det


def _coefficient_or_unit(seq, i, one):
    if i == 0:
        return one
    if i < 0:
        return 0 * one
    return seq[i]


def psi_by_minors(n, duals, J):
    """``a_{n,j} = (-1)**j det M_j`` with ``M_j[r][s] = c_{n+r, r-s+1}`` (1-based)."""
    table, sector = _by_level(duals)
    one = coerce(1, _ring(table[n].c))
    a = [one]
    for j in range(1, J + 1):
        if n + j not in table:
            raise ValueError(f"dual polynomial for level {n + j} missing")
        minor = [[_coefficient_or_unit(table[n + r].c, r - s + 1, one) for s in range(1, j + 1)]
                 for r in range(1, j + 1)]
        a.append((-1) ** j * determinant(minor))
    return Eigenfunction(n, sector, tuple(a))


def chi_by_minors(n, eigenfunctions):
    """``c_{n,j} = (-1)**j det N_j`` with ``N_j[r][s] = a_{n-r, r-s+1}`` (1-based)."""
    table, sector = _by_level(eigenfunctions)
    if n == 0:
        return DualPolynomial(0, sector, (coerce(1, _ring(table[0].a) if table else RATIONAL),))
    one = coerce(1, _ring(table[0].a))
    c = [one]
    for j in range(1, n + 1):
        minor = []
        for r in range(1, j + 1):
            level = n - r
            if level not in table or table[level].depth < r:
                raise ValueError(f"eigenfunction psi_{level} to depth {r} is needed")
            minor.append([_coefficient_or_unit(table[level].a, r - s + 1, one) for s in range(1, j + 1)])
        c.append((-1) ** j * determinant(minor))
    return DualPolynomial(n, sector, tuple(c))


def determinant_oracles(n, J, duals=None, eigenfunctions=None):
    """Series for ``psi_n`` (from dual coefficients) or ``chi_n`` (from eigen coefficients)."""
    if duals is not None:
        return psi_by_minors(n, duals, J).series
    if eigenfunctions is not None:
        return chi_by_minors(n, eigenfunctions).series
    raise ValueError("pass duals or eigenfunctions")


def potential_series(U, sector):
    """``V_(+/-) = -U**2 +/- z U'``."""
    u = U.series
    s = SectorSign.parse(sector).value
    return -(u * u) + u.euler_derivative().scale(s)


def apply_first_order(f, U, shift, sign):
    """``(z d/dz + shift + sign * U) f``."""
    sign = SectorSign.parse(sign).value
    return f.euler_derivative() + f.scale(shift) + (U.series * f).scale(sign)


def series_close(series, scale=1):
    """Exact zero in the rational ring; relative 1e-12 in the float ring."""
    if series.ring == FLOAT:
        return series.max_abs() <= FLOAT_RTOL * max(1, abs(scale))
    return series.is_zero()


def hamiltonian_apply(f, U, nu, sector, dual=False):
    """Apply ``H_(+/-) = (z d/dz + nu)**2 + V_(+/-)``, or the dual ``H~`` with ``-nu``.

    The factorized form ``(D + nu -/+ U)(D + nu +/- U)`` and the expanded form
    are both evaluated and must agree on their common range.
    """
    sector = SectorSign.parse(sector)
    shift = as_coefficient(nu, f.ring)
    if dual:
        shift = -shift
    s = sector.value
    factored = apply_first_order(apply_first_order(f, U, shift, s), U, shift, -s)
    df = f.euler_derivative()
    expanded = (df.euler_derivative() + df.scale(2 * shift) + f.scale(shift * shift)
                + potential_series(U, sector) * f)
    if not series_close(factored - expanded, max(f.max_abs(), 1)):
        raise ArithmeticError("factorized and expanded Hamiltonians disagree")
    return expanded.truncate(min(factored.trunc_order, expanded.trunc_order))


@dataclass(frozen=True)
class BiorthogonalSystem:
    """Levels ``0..N`` of chi, Lambda and psi (depth ``J``) in both sectors."""

    nu: object
    U: Superpotential
    N: int
    J: int
    chi: tuple = field(repr=False)
    lam: tuple = field(repr=False)
    psi: tuple = field(repr=False)

    @property
    def ring(self):
        return self.U.ring

    def get(self, kind, n, sector):
        """Series for ``kind`` in {"chi", "lambda", "psi"} at level ``n``."""
        table = {"chi": self.chi, "lambda": self.lam, "psi": self.psi}[kind]
        return table[n][sector].series


def build_system(U, nu=0, N=4, J=8):
    """Build chi, Lambda, psi for ``n = 0..N`` with psi to depth ``J``."""
    if N < 0 or J < 0:
        raise ValueError("N and J must be non-negative")
    nu = as_coefficient(nu, U.ring)
    check_nondegenerate(nu, N, J)
    chi, lam, psi = [], [], []
    for n in range(N + 1):
        pair = build_dual_polynomials(n, U, nu)
        chi.append(pair)
        lam.append(build_inhomogeneity(n, pair, U))
        psi.append(build_eigenfunction(n, U, nu, J))
    return BiorthogonalSystem(nu, U, N, J, tuple(chi), tuple(lam), tuple(psi))


def intertwining_residuals(system):
    """First-order residuals for every level and sector.

    Returns ``(n, sector, kind, residual)`` tuples where the residual is::

        psi: (D + nu +/- U) psi^(+/-) - (n + nu) psi^(-/+)
        chi: (D - nu +/- U) chi^(+/-) + (n + nu) chi^(-/+) - Lambda^(+/-)
    """
    out = []
    nu, U = system.nu, system.U
    for n in range(system.N + 1):
        x = n + nu
        for sector in (PLUS, MINUS):
            other = sector.flip()
            psi, psi_o = system.get("psi", n, sector), system.get("psi", n, other)
            out.append((n, sector, "psi", apply_first_order(psi, U, nu, sector) - psi_o.scale(x)))
            chi, chi_o = system.get("chi", n, sector), system.get("chi", n, other)
            res = apply_first_order(chi, U, -nu, sector) + chi_o.scale(x) - system.get("lambda", n, sector)
            out.append((n, sector, "chi", res))
    return out


def random_superpotential(rng, K=4, span=9):
    """Random rational ``upsilon`` vector (used by tests and the CLI demo)."""
    values = []
    for _ in range(K):
        num = rng.randint(-span, span)
        values.append(Fraction(num, rng.randint(1, span)))
    if all(v == 0 for v in values):
        values[0] = Fraction(1)
    return Superpotential(tuple(values))
