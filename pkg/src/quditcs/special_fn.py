"""Probabilists' Hermite polynomials, their root/weight tables, associated
Laguerre polynomials, and a shared log-factorial cache.

The probabilists' family He_n is the one orthogonal under the standard
normal weight exp(-x^2/2); everything downstream (coefficient expansions,
quadrature weights) is phrased in terms of the orthonormal version
p_n = He_n / sqrt(n!), which stays O(1) where the raw polynomials overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError

__all__ = [
    "MAX_DEGREE",
    "HermiteRootTable",
    "LogFactorialCache",
    "he_asymptotic",
    "he_eval",
    "he_roots",
    "he_zero",
    "laguerre_eval",
    "log_factorial",
    "orthonormal_he_eval",
    "orthonormal_he_table",
]

# Largest Hermite degree / Fock dimension the package commits to handling.
MAX_DEGREE = 150


def _as_float_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def he_eval(n: int, x):
    """Probabilists' Hermite polynomial He_n(x).

    Uses the three-term recurrence He_{k+1} = x He_k - k He_{k-1}.
    Accepts a scalar or an array; returns the matching shape.
    """
    if n < 0:
        raise ValueError(f"polynomial degree must be nonnegative, got {n}")
    arr, scalar = _as_float_array(x)
    prev = np.zeros_like(arr)
    cur = np.ones_like(arr)
    for k in range(n):
        prev, cur = cur, arr * cur - k * prev
    return float(cur) if scalar else cur


def orthonormal_he_eval(n: int, x):
    """Orthonormal probabilists' Hermite polynomial p_n(x) = He_n(x)/sqrt(n!).

    Evaluated by its own recurrence
    p_{k+1} = (x p_k - sqrt(k) p_{k-1}) / sqrt(k+1),
    which keeps every intermediate O(1) in the oscillatory region.
    """
    if n < 0:
        raise ValueError(f"polynomial degree must be nonnegative, got {n}")
    arr, scalar = _as_float_array(x)
    prev = np.zeros_like(arr)
    cur = np.ones_like(arr)
    for k in range(n):
        prev, cur = cur, (arr * cur - math.sqrt(k) * prev) / math.sqrt(k + 1)
    return float(cur) if scalar else cur


def orthonormal_he_table(n_max: int, x) -> np.ndarray:
    """All orthonormal polynomials p_0..p_{n_max} at once.

    Returns an array of shape (n_max + 1,) + shape(x); row n holds p_n(x).
    """
    if n_max < 0:
        raise ValueError(f"polynomial degree must be nonnegative, got {n_max}")
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    table = np.empty((n_max + 1,) + arr.shape)
    table[0] = 1.0
    if n_max >= 1:
        table[1] = arr
    for k in range(1, n_max):
        table[k + 1] = (arr * table[k] - math.sqrt(k) * table[k - 1]) / math.sqrt(k + 1)
    return table


def he_zero(n: int) -> float:
    """He_n(0): zero for odd n, (-1)^(n/2) (n-1)!! for even n."""
    if n < 0:
        raise ValueError(f"polynomial degree must be nonnegative, got {n}")
    if n % 2:
        return 0.0
    acc = 1.0
    for k in range(1, n, 2):
        acc *= k
    return acc if (n // 2) % 2 == 0 else -acc


def he_asymptotic(n: int, x):
    """Large-n oscillatory approximation of He_n near x = 0.

    Even n:  (-1)^(n/2) (n-1)!! e^(x^2/4) cos(x sqrt(n + 1/2))
    Odd n:  -(-1)^((n+1)/2) (n!!/sqrt(n)) e^(x^2/4) sin(x sqrt(n + 1/2))

    Useful only as a cross-check of root locations; production code always
    evaluates the exact recurrence.
    """
    if n < 0:
        raise ValueError(f"polynomial degree must be nonnegative, got {n}")
    arr, scalar = _as_float_array(x)
    envelope = np.exp(arr * arr / 4.0)
    freq = math.sqrt(n + 0.5)
    if n % 2 == 0:
        df = 1.0
        for k in range(1, n, 2):
            df *= k
        sign = 1.0 if (n // 2) % 2 == 0 else -1.0
        out = sign * df * envelope * np.cos(arr * freq)
    else:
        df = 1.0
        for k in range(2, n + 1, 2):
            df *= k
        sign = -1.0 if ((n + 1) // 2) % 2 == 0 else 1.0
        out = sign * (df / math.sqrt(n)) * envelope * np.sin(arr * freq)
    return float(out) if scalar else out


@dataclass(frozen=True)
class HermiteRootTable:
    """Roots of He_degree together with their Christoffel weights.

    christoffel[k] = 1 / (degree * p_{degree-1}(roots[k])^2); the weights are
    positive and sum to 1, and double as |<0|x_k>|^2 for the normalized
    eigenbasis of the truncated position operator.
    """

    degree: int
    roots: np.ndarray
    christoffel: np.ndarray


@lru_cache(maxsize=None)
def he_roots(d: int) -> HermiteRootTable:
    """All d roots of He_d with Christoffel weights, by the Jacobi-matrix method.

    The roots are the eigenvalues of the symmetric tridiagonal matrix with
    zero diagonal and off-diagonal entries sqrt(1), ..., sqrt(d-1); the
    weights are the squared first components of the normalized eigenvectors.
    Roots are symmetrized exactly about 0 (averaged against their mirror
    partner; the central root of odd d is snapped to 0.0) because downstream
    parity splits rely on exact sign symmetry.
    """
    if not 1 <= d <= MAX_DEGREE:
        raise ValueError(f"degree must lie in [1, {MAX_DEGREE}], got {d}")
    if d == 1:
        roots = np.zeros(1)
        weights = np.ones(1)
    else:
        try:
            vals, vecs = eigh_tridiagonal(np.zeros(d), np.sqrt(np.arange(1.0, d)))
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"eigen-solve failed for degree {d}") from exc
        roots = 0.5 * (vals - vals[::-1])
        weights = vecs[0] ** 2
        weights = 0.5 * (weights + weights[::-1])
        if d % 2:
            roots[d // 2] = 0.0
    roots.flags.writeable = False
    weights.flags.writeable = False
    return HermiteRootTable(degree=d, roots=roots, christoffel=weights)


def laguerre_eval(k: int, m: int, x):
    """Associated Laguerre polynomial L_k^(m)(x) by the stable recurrence

    (k+1) L_{k+1}^(m) = (2k + 1 + m - x) L_k^(m) - (k + m) L_{k-1}^(m).
    """
    if k < 0 or m < 0:
        raise ValueError(f"laguerre indices must be nonnegative, got k={k}, m={m}")
    arr, scalar = _as_float_array(x)
    prev = np.zeros_like(arr)
    cur = np.ones_like(arr)
    for j in range(k):
        prev, cur = cur, ((2 * j + 1 + m - arr) * cur - (j + m) * prev) / (j + 1)
    return float(cur) if scalar else cur


class LogFactorialCache:
    """Immutable table of ln(n!) for n = 0..n_max, built by one cumulative sum."""

    def __init__(self, n_max: int):
        if n_max < 0:
            raise ValueError(f"table size must be nonnegative, got {n_max}")
        values = np.zeros(n_max + 1)
        if n_max:
            np.cumsum(np.log(np.arange(1.0, n_max + 1)), out=values[1:])
        values.flags.writeable = False
        self.n_max = n_max
        self.values = values

    def __getitem__(self, n: int) -> float:
        if n < 0:
            raise ValueError(f"factorial argument must be nonnegative, got {n}")
        return float(self.values[n])


_shared_cache = LogFactorialCache(2 * MAX_DEGREE)


def log_factorial(n: int) -> float:
    """ln(n!) from a shared read-only table (grown by replacement on demand)."""
    global _shared_cache
    if n > _shared_cache.n_max:
        _shared_cache = LogFactorialCache(max(n, 2 * _shared_cache.n_max))
    return _shared_cache[n]


def log_factorial_array(n_max: int) -> np.ndarray:
    """Read-only view of ln(n!) for n = 0..n_max."""
    log_factorial(n_max)
    return _shared_cache.values[: n_max + 1]
