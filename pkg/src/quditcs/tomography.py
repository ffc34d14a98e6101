"""Optical tomograms: probability densities of the rotated quadrature.

The tomogram of a state with Fock amplitudes c_n is computed through the
squared rotated wavefunction

    w(q, theta) = | sum_n c_n e^{-i n theta} psi_n(q) |^2,

where psi_n are the Hermite-Gauss functions. This form is manifestly
nonnegative and overflow-free at any supported dimension. An independent
route integrates the Wigner function along the rotated direction; the two
agree, which is the main internal consistency check between modules.

Units: tomogram quadratures carry vacuum variance 1/2 (vacuum tomogram
e^{-q^2}/sqrt(pi)), while the Wigner plane is scaled so the vacuum is
(2/pi) e^{-2|z|^2}; the marginal route therefore substitutes q/sqrt(2) and
divides the line integral by sqrt(2).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .errors import ConvergenceError
from .fock import QuditState
from .phase_space import QuadratureSpec, _thread_count, outer_radius, wigner_values

__all__ = [
    "Tomogram",
    "tomogram_closed_form",
    "tomogram_from_wigner",
    "tomogram_grid",
]

# Tighter default than the Wigner-volume quadrature: the integrand here is a
# smooth one-dimensional Gaussian-tailed slice, so refinement is cheap and the
# cross-module agreement contract (1e-5) needs headroom.
_MARGINAL_QUAD = QuadratureSpec(base_points=257, tol=1e-8, max_refinements=8)


def _hermite_gauss_table(n_max: int, q) -> np.ndarray:
    """Orthonormal oscillator wavefunctions psi_0..psi_{n_max} at q.

    psi_0 = pi^{-1/4} e^{-q^2/2}, with the recurrence
    psi_{n+1} = sqrt(2/(n+1)) q psi_n - sqrt(n/(n+1)) psi_{n-1}.
    """
    q = np.atleast_1d(np.asarray(q, dtype=float))
    table = np.empty((n_max + 1,) + q.shape)
    table[0] = math.pi ** -0.25 * np.exp(-0.5 * q * q)
    if n_max >= 1:
        table[1] = math.sqrt(2.0) * q * table[0]
    for n in range(1, n_max):
        table[n + 1] = math.sqrt(2.0 / (n + 1)) * q * table[n] - math.sqrt(
            n / (n + 1.0)
        ) * table[n - 1]
    return table


def _tomogram_rows(amps: np.ndarray, q: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """values[i, j] = w(q_j, theta_i) for one amplitude vector."""
    d = amps.size
    psi = _hermite_gauss_table(d - 1, q)
    n = np.arange(d)
    out = np.empty((thetas.size, q.size))
    for i, theta in enumerate(thetas):
        rotated = (amps * np.exp(-1j * n * theta)) @ psi
        out[i] = rotated.real**2 + rotated.imag**2
    return out


def tomogram_closed_form(s: QuditState, q: float, theta: float) -> float:
    """w(q, theta) through the squared rotated wavefunction."""
    return float(_tomogram_rows(s.amps, np.atleast_1d(float(q)), np.atleast_1d(float(theta)))[0, 0])


def tomogram_from_wigner(
    s: QuditState,
    q: float,
    theta: float,
    quad_spec: QuadratureSpec = _MARGINAL_QUAD,
) -> float:
    """w(q, theta) by integrating the Wigner function along the rotated line.

    With z-plane coordinates scaled as in the module docstring, the marginal
    reads

      w(q, theta) = (1/sqrt(2)) Int W(q' cos t - p sin t, q' sin t + p cos t) dp

    with q' = q/sqrt(2). Simpson quadrature with refinement doubling; raises
    if two successive refinements never agree within quad_spec.tol.
    """
    needed = outer_radius(s.dim) + 3.0
    hw = needed if quad_spec.half_width is None else float(quad_spec.half_width)
    if hw < needed - 1e-9:
        raise ValueError(
            f"window half-width {hw} does not cover the required radius {needed}"
        )
    qz = float(q) / math.sqrt(2.0)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    n = quad_spec.base_points
    prev = None
    for _ in range(quad_spec.max_refinements + 1):
        ps = np.linspace(-hw, hw, n)
        line = wigner_values(s, qz * cos_t - ps * sin_t, qz * sin_t + ps * cos_t)
        integral = float(simpson(line, x=ps)) / math.sqrt(2.0)
        if prev is not None and abs(integral - prev) <= quad_spec.tol:
            return integral
        prev = integral
        n = 2 * n - 1
    raise ConvergenceError(
        f"marginal quadrature did not settle within tol={quad_spec.tol} "
        f"after {quad_spec.max_refinements} refinements"
    )


@dataclass(frozen=True)
class Tomogram:
    """w sampled on uniform grids; values[i, j] = w(q_grid[j], theta_grid[i])."""

    q_grid: np.ndarray
    theta_grid: np.ndarray
    values: np.ndarray
    state_meta: str

    def write_csv(self, path) -> None:
        """Rows of q,theta,w with theta as the outer loop; 17 significant digits."""
        with open(path, "w", newline="\n") as fh:
            fh.write("q,theta,w\n")
            for i, tv in enumerate(self.theta_grid):
                row = self.values[i]
                for j, qv in enumerate(self.q_grid):
                    fh.write(f"{qv:.17g},{tv:.17g},{row[j]:.17g}\n")

    def to_json_dict(self) -> dict:
        return {
            "q_grid": self.q_grid.tolist(),
            "theta_grid": self.theta_grid.tolist(),
            "state_meta": self.state_meta,
            "values": self.values.tolist(),
        }


def tomogram_grid(
    s: QuditState,
    nq: int = 201,
    ntheta: int = 181,
    state_meta: str | None = None,
) -> Tomogram:
    """Sample the tomogram on q in [-(outer_radius+2), outer_radius+2] and
    theta in [0, 2 pi] (both ends included).

    Rows are distributed over threads (QCS_THREADS); each row's summation
    order is fixed, so output does not depend on the thread count.
    """
    if nq < 32 or ntheta < 32:
        raise ValueError(f"grid needs at least 32 points per axis, got {nq} x {ntheta}")
    hw = outer_radius(s.dim) + 2.0
    qs = np.linspace(-hw, hw, nq)
    thetas = np.linspace(0.0, 2.0 * math.pi, ntheta)
    threads = _thread_count()
    if threads == 1:
        values = _tomogram_rows(s.amps, qs, thetas)
    else:
        values = np.empty((ntheta, nq))
        bounds = np.linspace(0, ntheta, threads + 1).astype(int)
        chunks = [(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]

        def fill(span):
            lo, hi = span
            values[lo:hi] = _tomogram_rows(s.amps, qs, thetas[lo:hi])

        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, chunks))
    np.maximum(values, 0.0, out=values)
    if state_meta is None:
        state_meta = f"dim={s.dim}"
    qs.flags.writeable = False
    thetas.flags.writeable = False
    values.flags.writeable = False
    return Tomogram(q_grid=qs, theta_grid=thetas, values=values, state_meta=state_meta)
