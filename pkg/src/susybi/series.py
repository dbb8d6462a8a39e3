"""Truncated Laurent series over exact rationals or 50-digit floats.

A :class:`LaurentSeries` stores a dense run of coefficients starting at
``min_exp`` together with a truncation order.  Exponents below ``min_exp``
are known zeros, exponents above ``trunc_order`` are *unknown*.  Polynomials
carry ``trunc_order = EXACT`` (infinity) so that nothing above the stored
range is ever treated as unknown.

Coefficients live in one of two rings:

* ``"rational"`` -- :class:`fractions.Fraction`
* ``"float"`` -- ``mpf`` values of a private mpmath context (default 50 digits)

Plain ``int`` values are accepted in either ring and coerced.  Mixing the two
rings raises :class:`~susybi.errors.RingMismatchError`.
"""

import enum
import math
import os
from fractions import Fraction

import mpmath
from mpmath.ctx_mp_python import _mpf
from mpmath.libmp import repr_dps, to_str

from .errors import RingMismatchError, UndeterminedCoefficientError

RATIONAL = "rational"
FLOAT = "float"
RINGS = (RATIONAL, FLOAT)

EXACT = math.inf

_MAX_EXPONENT = 2**62
_MIN_DIGITS = 50

FLOAT_CTX = mpmath.MPContext()


def set_float_precision(digits=None):
    """Set the big-float precision in decimal digits.

    With ``digits=None`` the ``SUSYBI_PRECISION`` environment variable is read
    (default 50).  Fewer than 50 digits is rejected.
    """
    if digits is None:
        digits = int(os.environ.get("SUSYBI_PRECISION", _MIN_DIGITS))
    digits = int(digits)
    if digits < _MIN_DIGITS:
        raise ValueError(f"float precision must be at least {_MIN_DIGITS} digits, got {digits}")
    FLOAT_CTX.dps = digits
    return digits


set_float_precision()


def ring_of(value):
    """Return the ring tag of a scalar, or ``None`` for a ring-neutral int."""
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, Fraction):
        return RATIONAL
    if isinstance(value, int):
        return None
    if isinstance(value, _mpf):
        return FLOAT
    raise TypeError(
        f"unsupported coefficient type {type(value).__name__}; "
        "use fractions.Fraction, int, or an mpmath mpf"
    )


def coerce(value, ring):
    """Convert ``value`` into ``ring``; cross-ring conversion is refused."""
    src = ring_of(value)
    if src is not None and src != ring:
        raise RingMismatchError(f"cannot use a {src} coefficient in the {ring} ring")
    if ring == RATIONAL:
        return Fraction(value)
    if ring == FLOAT:
        return FLOAT_CTX.mpf(value)
    raise ValueError(f"unknown ring {ring!r}")


def zero(ring):
    return coerce(0, ring)


def to_float_ring(value):
    """Explicitly convert a rational or int into the big-float ring."""
    if isinstance(value, Fraction):
        return FLOAT_CTX.mpf(value.numerator) / value.denominator
    return coerce(value, FLOAT)


def format_coefficient(value):
    """Exact text form: ``"p/q"`` for rationals, round-trippable digits for floats."""
    if ring_of(value) == FLOAT:
        return to_str(value._mpf_, repr_dps(FLOAT_CTX.prec))
    return str(Fraction(value))


def parse_coefficient(text, ring=RATIONAL):
    if ring == RATIONAL:
        return Fraction(text)
    return FLOAT_CTX.mpf(text)


def infer_ring(values, ring=None):
    """Common ring of ``values``; ``ring`` wins when given and consistent."""
    found = {r for r in map(ring_of, values) if r is not None}
    if len(found) > 1:
        raise RingMismatchError("rational and float coefficients mixed")
    if ring is not None:
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        if found and found != {ring}:
            raise RingMismatchError(f"{found.pop()} coefficients given for the {ring} ring")
        return ring
    return found.pop() if found else RATIONAL


def _check_exponent(e):
    if abs(e) > _MAX_EXPONENT:
        raise OverflowError(f"exponent {e} exceeds the supported range")


class SectorSign(enum.Enum):
    """The two supersymmetric sectors, carried as +1 / -1."""

    PLUS = 1
    MINUS = -1

    def flip(self):
        return SectorSign.MINUS if self is SectorSign.PLUS else SectorSign.PLUS

    @property
    def label(self):
        return "plus" if self is SectorSign.PLUS else "minus"

    def __str__(self):
        return "+" if self is SectorSign.PLUS else "-"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        table = {"+": cls.PLUS, "plus": cls.PLUS, 1: cls.PLUS,
                 "-": cls.MINUS, "minus": cls.MINUS, -1: cls.MINUS}
        try:
            return table[value]
        except (KeyError, TypeError):
            raise ValueError(f"not a sector sign: {value!r}") from None


PLUS = SectorSign.PLUS
MINUS = SectorSign.MINUS


class LaurentSeries:
    """Immutable truncated Laurent series ``sum_e f_e z**e``.

    Parameters
    ----------
    coeffs : iterable
        Coefficients of ``z**min_exp, z**(min_exp + 1), ...``.
    min_exp : int
        Exponent of the first stored coefficient; everything below is zero.
    trunc_order : int or EXACT
        Highest exponent whose coefficient is known.  Stored values above it
        are discarded; implicit values between the stored range and
        ``trunc_order`` are zero.
    ring : {"rational", "float"}, optional
        Inferred from the coefficients when omitted (ints alone mean rational).
    """

    __slots__ = ("ring", "min_exp", "coeffs", "trunc_order")

    def __init__(self, coeffs=(), min_exp=0, trunc_order=EXACT, ring=None):
        coeffs = list(coeffs)
        ring = infer_ring(coeffs, ring)
        min_exp = int(min_exp)
        _check_exponent(min_exp)
        if trunc_order != EXACT:
            trunc_order = int(trunc_order)
            _check_exponent(trunc_order)
            coeffs = coeffs[: max(0, trunc_order - min_exp + 1)]
        coeffs = [coerce(c, ring) for c in coeffs]

        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        lead = 0
        while lead < len(coeffs) and coeffs[lead] == 0:
            lead += 1
        if lead == len(coeffs):
            coeffs = []
            min_exp = 0 if trunc_order == EXACT else trunc_order + 1
        else:
            coeffs = coeffs[lead:]
            min_exp += lead

        self.ring = ring
        self.min_exp = min_exp
        self.coeffs = tuple(coeffs)
        self.trunc_order = trunc_order

    def __setattr__(self, name, value):
        if hasattr(self, "trunc_order"):
            raise AttributeError("LaurentSeries is immutable")
        object.__setattr__(self, name, value)

    # -- construction helpers -------------------------------------------

    @classmethod
    def zero(cls, ring=RATIONAL, trunc_order=EXACT):
        return cls((), 0 if trunc_order == EXACT else trunc_order + 1, trunc_order, ring)

    @classmethod
    def monomial(cls, exponent, coefficient=1, trunc_order=EXACT, ring=None):
        return cls([coefficient], exponent, trunc_order, ring)

    @classmethod
    def from_dict(cls, terms, trunc_order=EXACT, ring=None):
        """Build from ``{exponent: coefficient}``."""
        if not terms:
            return cls.zero(ring or RATIONAL, trunc_order)
        lo, hi = min(terms), max(terms)
        ring = infer_ring(terms.values(), ring)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo, trunc_order, ring)

    # -- inspection ------------------------------------------------------

    @property
    def is_exact(self):
        return self.trunc_order == EXACT

    @property
    def max_exp(self):
        """Highest stored exponent (``min_exp - 1`` for an empty series)."""
        return self.min_exp + len(self.coeffs) - 1

    @property
    def valuation(self):
        """Lowest exponent that may be nonzero."""
        if self.coeffs:
            return self.min_exp
        return self.trunc_order + 1

    def is_zero(self):
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def __getitem__(self, exponent):
        if exponent > self.trunc_order:
            raise UndeterminedCoefficientError(
                f"coefficient of z^{exponent} is beyond trunc_order {self.trunc_order}"
            )
        return self._get(exponent)

    def _get(self, e):
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return zero(self.ring)

    def items(self):
        """``(exponent, coefficient)`` for the stored range."""
        return [(self.min_exp + i, c) for i, c in enumerate(self.coeffs)]

    def coefficients(self, lo, hi):
        """Coefficient list for exponents ``lo..hi`` inclusive (all must be known)."""
        return [self[e] for e in range(lo, hi + 1)]

    def max_abs(self):
        """Largest coefficient magnitude (0 for a zero series)."""
        if not self.coeffs:
            return zero(self.ring)
        return max(abs(c) for c in self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def _other(self, other):
        if not isinstance(other, LaurentSeries):
            return None
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} series combined with {other.ring} series")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        trunc = min(self.trunc_order, other.trunc_order)
        if self.is_zero() and other.is_zero():
            return LaurentSeries.zero(self.ring, trunc)
        parts = [s for s in (self, other) if s.coeffs]
        lo = min(s.min_exp for s in parts)
        hi = max(s.max_exp for s in parts)
        if trunc != EXACT:
            hi = min(hi, trunc)
        out = [self._get(e) + other._get(e) for e in range(lo, hi + 1)]
        return LaurentSeries(out, lo, trunc, self.ring)

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.min_exp, self.trunc_order, self.ring)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            try:
                ring_of(other)
            except TypeError:
                return NotImplemented
            return self.scale(other)
        other = self._other(other)
        trunc = min(self.trunc_order + other.valuation, other.trunc_order + self.valuation)
        if self.is_zero() or other.is_zero():
            return LaurentSeries.zero(self.ring, trunc)
        lo = self.min_exp + other.min_exp
        hi = self.max_exp + other.max_exp
        if trunc != EXACT:
            hi = min(hi, trunc)
        if hi < lo:
            return LaurentSeries.zero(self.ring, trunc)
        out = [zero(self.ring)] * (hi - lo + 1)
        b = other.coeffs
        for i, ai in enumerate(self.coeffs):
            if ai == 0:
                continue
            for j in range(min(len(b), hi - lo - i + 1)):
                out[i + j] += ai * b[j]
        return LaurentSeries(out, lo, trunc, self.ring)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c):
        """Multiply every coefficient by the scalar ``c`` (same ring)."""
        c = coerce(c, self.ring)
        if c == 0:
            return LaurentSeries.zero(self.ring, self.trunc_order)
        return LaurentSeries([c * x for x in self.coeffs], self.min_exp, self.trunc_order, self.ring)

    def shift(self, k):
        """Multiply by ``z**k``."""
        return LaurentSeries(self.coeffs, self.min_exp + k, self.trunc_order + k, self.ring)

    def truncate(self, order):
        """Forget every coefficient above ``order``."""
        new = min(self.trunc_order, order)
        if self.min_exp > new + 1:
            return LaurentSeries.zero(self.ring, new)
        return LaurentSeries(self.coeffs, self.min_exp, new, self.ring)

    def euler_derivative(self):
        """Apply ``z d/dz``: ``f_e -> e * f_e``."""
        out = [(self.min_exp + i) * c for i, c in enumerate(self.coeffs)]
        return LaurentSeries(out, self.min_exp, self.trunc_order, self.ring)

    def to_float(self):
        """Copy into the big-float ring."""
        return LaurentSeries([to_float_ring(c) for c in self.coeffs], self.min_exp, self.trunc_order, FLOAT)

    # -- comparison / display -------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.ring == other.ring and self.trunc_order == other.trunc_order
                and self.min_exp == other.min_exp and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.min_exp, self.coeffs, self.trunc_order))

    def __repr__(self):
        terms = " + ".join(f"({format_coefficient(c)})z^{e}" for e, c in self.items()) or "0"
        tail = "" if self.is_exact else f" + O(z^{self.trunc_order + 1})"
        return f"LaurentSeries({terms}{tail})"


def series_arith(a, b=None, op="add", c=None):
    """Dispatch ``add``/``sub``/``mul`` on two series, or ``scale`` by ``c``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(c)
    raise ValueError(f"unknown series operation {op!r}")


def euler_derivative(f):
    return f.euler_derivative()


def pairing(f, g):
    """Constant coefficient of ``f * g``.

    For Laurent series on a circle around the origin this is the contour
    integral ``(1/2 pi i) \\oint dz/z f(z) g(z)``.
    """
    if f.ring != g.ring:
        raise RingMismatchError(f"cannot pair {f.ring} with {g.ring} series")
    missing = []
    if g.trunc_order < -f.valuation:
        missing.append(f"second factor needs z^{g.trunc_order + 1}..z^{-f.valuation}")
    if f.trunc_order < -g.valuation:
        missing.append(f"first factor needs z^{f.trunc_order + 1}..z^{-g.valuation}")
    if missing:
        raise UndeterminedCoefficientError("pairing undetermined: " + "; ".join(missing))
    total = zero(f.ring)
    for e, fe in f.items():
        total += fe * g._get(-e)
    return total


def boundary_values(f):
    """Return ``(f(1), f'(1))`` for a finite Laurent polynomial."""
    if not f.is_exact:
        raise UndeterminedCoefficientError(
            f"boundary values need an exact polynomial, series is truncated at z^{f.trunc_order}"
        )
    value = zero(f.ring)
    slope = zero(f.ring)
    for e, c in f.items():
        value += c
        slope += e * c
    return value, slope
