"""Input checks for the estimator wrapper."""

import numbers
from fractions import Fraction

import numpy as np
from sklearn.utils.validation import check_array

from .builder import Superpotential


def check_rational(value, name):
    """Exact rational from an int, Fraction or ``"p/q"`` string.

    Floats are accepted only when integral, since a binary float is rarely the
    rational the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError(f"{name} must be rational, got bool")
    if isinstance(value, (numbers.Integral, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{name}={value!r} is not a p/q rational") from None
    if isinstance(value, numbers.Real) and float(value).is_integer():
        return Fraction(int(value))
    raise TypeError(f"{name} must be an int, Fraction or 'p/q' string, got {value!r}")


def check_count(value, name, minimum=0):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def check_superpotential(upsilon, exact):
    if isinstance(upsilon, Superpotential):
        return upsilon
    values = tuple(check_rational(v, "upsilon") for v in np.ravel(np.asarray(upsilon, dtype=object)))
    return Superpotential(values, bool(exact))


def _is_exact(X):
    arr = np.asarray(X, dtype=object)
    return (arr.size > 0 and any(isinstance(v, Fraction) for v in arr.flat)
            and all(isinstance(v, (numbers.Integral, Fraction)) for v in arr.flat))


def check_coefficients(X, n_features=None, name="X", estimator=None):
    """2-D coefficient array: object dtype of Fractions kept exact, else finite float64."""
    if not _is_exact(X):
        X = check_array(X, dtype=np.float64, input_name=name, estimator=estimator)
    else:
        X = np.asarray(X, dtype=object)
        if X.ndim != 2:
            raise ValueError(f"Expected 2D array for {name}, got {X.ndim}D array instead. "
                             "Reshape your data")
        X = np.vectorize(Fraction, otypes=[object])(X)
    if n_features is not None and X.shape[1] != n_features:
        who = type(estimator).__name__ if estimator is not None else "the estimator"
        raise ValueError(f"{name} has {X.shape[1]} features, but {who} is expecting "
                         f"{n_features} features as input")
    return X
