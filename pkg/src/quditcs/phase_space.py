"""Wigner functions of truncated Fock-space states.

The Wigner function is assembled from bounded building blocks

    G_k^(m)(z) = sqrt(k!/(k+m)!) (2|z|)^m e^{-2|z|^2} L_k^(m)(4|z|^2),

swept by a three-term recurrence in k. Each block is O(1) for every k, m,
|z| in the supported range, so no per-point rescaling is needed: the diagonal
(mixture) terms contribute |c_n|^2 (-1)^n G_n^(0) and the off-diagonal
(interference) terms 2 (-1)^k Re[c_k* c_{k+m} u^m] G_k^(m) with
u = (q - i p)/|z|. The module also hosts uniform grid sampling, CSV/JSON
export, and the nonclassical-volume measure (integrated |W| minus one).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import ConvergenceError
from .fock import QuditState
from .special_fn import log_factorial

__all__ = [
    "PhasePoint",
    "QuadratureSpec",
    "WignerGrid",
    "nonclassical_volume",
    "outer_radius",
    "wigner_cross",
    "wigner_fock",
    "wigner_grid",
    "wigner_mixture",
    "wigner_state",
    "wigner_values",
]

TWO_OVER_PI = 2.0 / math.pi


@dataclass(frozen=True)
class PhasePoint:
    """A point z = q + ip of the complex phase plane."""

    q: float
    p: float

    @property
    def z(self) -> complex:
        return complex(self.q, self.p)


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings for square-window Simpson quadrature with refinement doubling.

    half_width of None means "choose from the state": outer_radius(dim) + 3.
    """

    half_width: float | None = None
    base_points: int = 129
    tol: float = 1e-3
    max_refinements: int = 6

    def __post_init__(self):
        if self.base_points < 17 or self.base_points % 2 == 0:
            raise ValueError("base_points must be an odd integer >= 17")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_refinements < 0:
            raise ValueError("max_refinements must be nonnegative")


def outer_radius(d: int) -> float:
    """Radius of the outer phase-space circle a d-level state can reach:

    sqrt(d - 1) + sqrt(ln(2)/2).
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    return math.sqrt(d - 1.0) + math.sqrt(0.5 * math.log(2.0))


def _eval_wigner(amps: np.ndarray, q, p) -> np.ndarray:
    """Vectorized W(q, p) for one amplitude vector; q, p broadcast together."""
    d = amps.size
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    q, p = np.broadcast_arrays(q, p)
    shape = q.shape
    q = q.ravel()
    p = p.ravel()
    r2 = q * q + p * p
    targ = 4.0 * r2
    absz = np.sqrt(r2)

    probs = np.abs(amps) ** 2
    acc = np.zeros(q.size)

    # Diagonal sweep (m = 0): G_0 = e^{-2|z|^2} needs no logs.
    g_prev = np.zeros(q.size)
    g = np.exp(-2.0 * r2)
    for k in range(d):
        if probs[k]:
            acc += probs[k] * ((-1.0) ** k) * g
        g_prev, g = g, ((2 * k + 1 - targ) * g - k * g_prev) / (k + 1)

    if d > 1:
        with np.errstate(divide="ignore"):
            log2z = np.log(2.0 * absz)
        safe = np.where(absz > 0.0, absz, 1.0)
        u = np.where(absz > 0.0, (q - 1j * p) / safe, 1.0 + 0.0j)
        um = np.ones(q.size, dtype=complex)
        for m in range(1, d):
            um = um * u
            cross = np.conj(amps[: d - m]) * amps[m:]
            with np.errstate(over="ignore"):
                g = np.exp(m * log2z - 2.0 * r2 - 0.5 * log_factorial(m))
            g_prev = np.zeros(q.size)
            for k in range(d - m):
                c = cross[k]
                if c:
                    acc += 2.0 * ((-1.0) ** k) * (c * um).real * g
                g_prev, g = g, (
                    (2 * k + 1 + m - targ) * g - math.sqrt(k * (k + m)) * g_prev
                ) / math.sqrt((k + 1) * (k + 1 + m))

    return (TWO_OVER_PI * acc).reshape(shape)


def wigner_values(s: QuditState, q, p) -> np.ndarray:
    """W sampled at broadcastable arrays of quadrature coordinates."""
    return _eval_wigner(s.amps, q, p)


def wigner_state(s: QuditState, pt: PhasePoint) -> float:
    """W(z) for a pure state: mixture part plus interference part."""
    return float(_eval_wigner(s.amps, pt.q, pt.p)[()])


def wigner_fock(n: int, pt: PhasePoint) -> float:
    """Wigner function of the Fock state |n>:

    W_n(z) = (2/pi) (-1)^n e^{-2|z|^2} L_n(4|z|^2),

    evaluated through the bounded G-recurrence (no overflow for any
    supported n and |z|).
    """
    if n < 0:
        raise ValueError(f"Fock index must be nonnegative, got {n}")
    r2 = pt.q * pt.q + pt.p * pt.p
    targ = 4.0 * r2
    g_prev, g = 0.0, math.exp(-2.0 * r2)
    for k in range(n):
        g_prev, g = g, ((2 * k + 1 - targ) * g - k * g_prev) / (k + 1)
    return TWO_OVER_PI * ((-1.0) ** n) * g


def wigner_cross(k: int, l: int, pt: PhasePoint) -> complex:
    """Off-diagonal Wigner kernel element W_kl(z) for l > k:

    (2/pi) (-1)^k sqrt(k!/l!) (2 z*)^{l-k} e^{-2|z|^2} L_k^{(l-k)}(4|z|^2).

    The (l, k) element is its complex conjugate, which is what makes the
    interference sum real.
    """
    if k < 0 or l <= k:
        raise ValueError(f"need l > k >= 0, got k={k}, l={l}")
    m = l - k
    r2 = pt.q * pt.q + pt.p * pt.p
    absz = math.sqrt(r2)
    if absz == 0.0:
        return 0.0j
    targ = 4.0 * r2
    g_prev = 0.0
    g = math.exp(m * math.log(2.0 * absz) - 2.0 * r2 - 0.5 * log_factorial(m))
    for j in range(k):
        g_prev, g = g, ((2 * j + 1 + m - targ) * g - math.sqrt(j * (j + m)) * g_prev) / math.sqrt(
            (j + 1) * (j + 1 + m)
        )
    u = complex(pt.q, -pt.p) / absz
    return TWO_OVER_PI * ((-1.0) ** k) * g * u**m


def wigner_mixture(s: QuditState, pt: PhasePoint) -> float:
    """The Fock-diagonal (mixture) part alone: sum_n |c_n|^2 W_n(z).

    Depends on |z| only, hence invariant under phase-space rotations.
    """
    return float(
        sum(
            prob * wigner_fock(n, pt)
            for n, prob in enumerate(np.abs(s.amps) ** 2)
            if prob
        )
    )


def _thread_count() -> int:
    raw = os.environ.get("QCS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"QCS_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


@dataclass(frozen=True)
class WignerGrid:
    """W sampled on a uniform rectangle; values[i, j] = W(q_i, p_j)."""

    q_min: float
    q_max: float
    p_min: float
    p_max: float
    nq: int
    np: int
    values: np.ndarray
    state_meta: str

    def q_axis(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.nq)

    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)

    def write_csv(self, path) -> None:
        """Rows of q,p,w with q as the outer loop; 17 significant digits."""
        qs = self.q_axis()
        ps = self.p_axis()
        with open(path, "w", newline="\n") as fh:
            fh.write("q,p,w\n")
            for i, qv in enumerate(qs):
                row = self.values[i]
                for j, pv in enumerate(ps):
                    fh.write(f"{qv:.17g},{pv:.17g},{row[j]:.17g}\n")

    def to_json_dict(self) -> dict:
        return {
            "q_min": self.q_min,
            "q_max": self.q_max,
            "p_min": self.p_min,
            "p_max": self.p_max,
            "nq": self.nq,
            "np": self.np,
            "state_meta": self.state_meta,
            "values": self.values.tolist(),
        }


def wigner_grid(
    s: QuditState,
    window=None,
    nq: int = 201,
    npts: int = 201,
    state_meta: str | None = None,
) -> WignerGrid:
    """Sample W on a uniform grid.

    window is (q_min, q_max, p_min, p_max); None means the square of
    half-width outer_radius(dim) + 2 centered at the origin. Sampling is
    split over threads (QCS_THREADS) by q-rows; the per-point summation
    order is fixed, so results are bit-identical at any thread count.
    """
    if nq < 16 or npts < 16:
        raise ValueError(f"grid needs at least 16 points per axis, got {nq} x {npts}")
    if window is None:
        hw = outer_radius(s.dim) + 2.0
        window = (-hw, hw, -hw, hw)
    q_min, q_max, p_min, p_max = (float(v) for v in window)
    if not (q_min < q_max and p_min < p_max):
        raise ValueError(f"degenerate window {window}")
    qs = np.linspace(q_min, q_max, nq)
    ps = np.linspace(p_min, p_max, npts)
    threads = _thread_count()
    if threads == 1:
        values = _eval_wigner(s.amps, qs[:, None], ps[None, :])
    else:
        values = np.empty((nq, npts))
        bounds = np.linspace(0, nq, threads + 1).astype(int)
        chunks = [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]

        def fill(span):
            lo, hi = span
            values[lo:hi] = _eval_wigner(s.amps, qs[lo:hi, None], ps[None, :])

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, chunks))
    if state_meta is None:
        state_meta = f"dim={s.dim}"
    return WignerGrid(
        q_min=q_min,
        q_max=q_max,
        p_min=p_min,
        p_max=p_max,
        nq=nq,
        np=npts,
        values=values,
        state_meta=state_meta,
    )


def nonclassical_volume(s: QuditState, quad_spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Nonclassical volume: integral of |W| over the plane, minus 1.

    Zero exactly for states with nonnegative W (the integral is then the
    normalization); positive whenever W dips below zero. Computed by Simpson
    quadrature on a centered square window, refined by doubling until two
    successive estimates agree within quad_spec.tol.
    """
    needed = outer_radius(s.dim) + 3.0
    hw = needed if quad_spec.half_width is None else float(quad_spec.half_width)
    if hw < needed - 1e-9:
        raise ValueError(
            f"window half-width {hw} does not cover the required radius {needed}"
        )
    n = quad_spec.base_points
    prev = None
    for _ in range(quad_spec.max_refinements + 1):
        xs = np.linspace(-hw, hw, n)
        w = np.abs(_eval_wigner(s.amps, xs[:, None], xs[None, :]))
        integral = float(simpson(simpson(w, x=xs, axis=1), x=xs))
        if prev is not None and abs(integral - prev) <= quad_spec.tol:
            delta = integral - 1.0
            if delta < -2e-4:
                raise ConvergenceError(
                    f"quadrature lost probability mass: integral {integral:.6g}"
                )
            return max(delta, 0.0)
        prev = integral
        n = 2 * n - 1
    raise ConvergenceError(
        f"volume quadrature did not settle within tol={quad_spec.tol} "
        f"after {quad_spec.max_refinements} refinements"
    )
