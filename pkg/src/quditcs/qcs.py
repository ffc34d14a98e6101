"""Qudit coherent states.

Two inequivalent finite-dimensional generalizations of the coherent state
live here: the displacement family (vacuum pushed through the truncated
displacement unitary, evaluated through a Hermite root expansion) and the
Poissonian family (the first d terms of the usual exp-series, renormalized).
On top of them sit parity (cat) projections, the complementary state that
closes the superposition identity between the two families, quasiperiods,
and closed forms for d = 2, 3, 4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NullStateError
from .fock import QuditState
from .special_fn import he_roots, log_factorial_array, orthonormal_he_table

__all__ = [
    "QcsParams",
    "Quasiperiod",
    "cat_state",
    "closed_form_qcs",
    "complementary_state",
    "linear_qcs",
    "nonlinear_qcs",
    "parity_coefficients",
    "quasiperiod",
]


@dataclass(frozen=True)
class QcsParams:
    """Dimension and complex amplitude defining one coherent-family state."""

    dim: int
    amplitude: complex

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    @property
    def modulus(self) -> float:
        return abs(self.amplitude)

    @property
    def phi0(self) -> float:
        """Phase of the amplitude, in (-pi, pi]; 0 for a zero amplitude."""
        return cmath.phase(self.amplitude) if self.amplitude != 0 else 0.0


@dataclass(frozen=True)
class Quasiperiod:
    dim: int
    value: float


def quasiperiod(d: int) -> Quasiperiod:
    """Amplitude (quasi)period of the displacement family.

    Exact periods pi and 2 pi/sqrt(3) for d = 2, 3; for larger d the revival
    is only approximate and the quasiperiod is sqrt(4d + 2), twice the
    spacing of the central Hermite roots.
    """
    if d < 2:
        raise ValueError(f"quasiperiod needs dimension >= 2, got {d}")
    if d == 2:
        value = math.pi
    elif d == 3:
        value = 2.0 * math.pi / math.sqrt(3.0)
    else:
        value = math.sqrt(4.0 * d + 2.0)
    return Quasiperiod(dim=d, value=value)


def _raw_coefficients(d: int, modulus: float, phi0: float) -> np.ndarray:
    """Displacement coefficients before normalization:

    c_n = e^{i n (phi0 - pi/2)} sum_k w_k p_n(x_k) e^{i x_k |alpha|}

    over all roots x_k of He_d with Christoffel weights w_k. Mathematically
    the vector is already normalized (it is a unitary's column); the residual
    deviation is pure rounding.
    """
    table = he_roots(d)
    p = orthonormal_he_table(d - 1, table.roots)
    phased = (p * table.christoffel) @ np.exp(1j * table.roots * modulus)
    n = np.arange(d)
    return np.exp(1j * n * (phi0 - 0.5 * math.pi)) * phased


def nonlinear_qcs(params: QcsParams) -> QuditState:
    """Displacement-family coherent state |alpha>_d = exp(alpha a+ - alpha* a)|0>.

    Evaluated through the Hermite root expansion rather than a matrix
    exponential, which keeps every intermediate O(1) up to the maximum
    supported dimension.
    """
    return QuditState.from_amplitudes(
        _raw_coefficients(params.dim, params.modulus, params.phi0)
    )


def linear_qcs(params: QcsParams) -> QuditState:
    """Poissonian-family coherent state: first d terms of the exp-series,

    c_n proportional to beta^n / sqrt(n!), renormalized on the truncated space.
    Magnitudes are assembled in log scale so large |beta| cannot overflow.
    """
    d = params.dim
    n = np.arange(d)
    if params.modulus == 0.0:
        return QuditState.basis(d, 0)
    logmag = n * math.log(params.modulus) - 0.5 * log_factorial_array(d - 1)
    logmag -= logmag.max()
    amps = np.exp(logmag) * np.exp(1j * n * params.phi0)
    return QuditState.from_amplitudes(amps)


def cat_state(kind: str, sign: str, params: QcsParams) -> QuditState:
    """Even or odd cat state: the normalized projection of a coherent-family
    state onto even-index or odd-index Fock states.

    Equivalently the normalized superposition of the states at +amplitude and
    -amplitude, since flipping the amplitude sign flips the sign of every
    odd-index coefficient.
    """
    if kind == "alpha":
        base = nonlinear_qcs(params)
    elif kind == "beta":
        base = linear_qcs(params)
    else:
        raise ValueError(f"unknown coherent family {kind!r}, expected 'alpha' or 'beta'")
    if sign == "even":
        keep = 0
    elif sign == "odd":
        keep = 1
    else:
        raise ValueError(f"unknown parity {sign!r}, expected 'even' or 'odd'")
    mask = (np.arange(params.dim) % 2) == keep
    return QuditState.from_amplitudes(np.where(mask, base.amps, 0.0))


def complementary_state(params: QcsParams) -> QuditState:
    """The unit vector completing the two-family superposition identity,

    |gamma> = 2 <alpha|beta> |alpha> - |beta>,

    so that |alpha> is proportional to |beta> + |gamma>. The construction is
    exactly normalized whenever the overlap is nonzero; it degenerates when
    the two families are orthogonal at this amplitude.
    """
    a = nonlinear_qcs(params)
    b = linear_qcs(params)
    ov = a.overlap(b)
    if 2.0 * abs(ov) < 1e-12:
        raise NullStateError(
            "the two coherent families are orthogonal at this amplitude; "
            "no complementary state exists"
        )
    return QuditState.from_amplitudes(2.0 * ov * a.amps - b.amps)


def closed_form_qcs(d: int, params: QcsParams) -> QuditState:
    """Hand-derived trigonometric closed forms of the displacement family
    for the three smallest nontrivial dimensions.

    d=2: [cos|a|, e^{i phi0} sin|a|]
    d=3: (1/3)[2 + cos(sqrt(3)|a|)], e^{i phi0} sin(sqrt(3)|a|)/sqrt(3),
         e^{2i phi0} sqrt(2)/3 [1 - cos(sqrt(3)|a|)]
    d=4: a two-root cosine/sine combination over x = sqrt(3 +- sqrt(6))
    """
    if d != params.dim:
        raise DimensionMismatchError(
            f"requested dimension {d} but params carry {params.dim}"
        )
    a = params.modulus
    ph = np.exp(1j * np.arange(d) * params.phi0)
    if d == 2:
        amps = np.array([math.cos(a), math.sin(a)], dtype=complex)
    elif d == 3:
        s3 = math.sqrt(3.0)
        amps = np.array(
            [
                (2.0 + math.cos(s3 * a)) / 3.0,
                math.sin(s3 * a) / s3,
                math.sqrt(2.0) / 3.0 * (1.0 - math.cos(s3 * a)),
            ],
            dtype=complex,
        )
    elif d == 4:
        amps = np.zeros(4, dtype=complex)
        for k, x in ((1, math.sqrt(3.0 + math.sqrt(6.0))), (2, math.sqrt(3.0 - math.sqrt(6.0)))):
            y = x * a
            flip = (-1.0) ** k
            amps[0] += math.cos(y) / x**2
            amps[1] += math.sin(y) / x
            amps[2] += flip * math.cos(y) / math.sqrt(3.0)
            amps[3] += flip * math.sin(y) / x
        amps *= 0.5
    else:
        raise ValueError(f"no closed form for dimension {d}; supported: 2, 3, 4")
    return QuditState(ph * amps)


def parity_coefficients(d: int, alpha_mod: float):
    """Displacement coefficients at phase 0 split by Fock-index parity.

    Using the exact sign symmetry of the root table, the full-root sum
    collapses onto the positive roots: even-n entries pick up a cosine sum
    (plus the zero-root term when d is odd), odd-n entries a sine sum.
    Returns (even_part, odd_part) as full-length vectors that are zero on the
    opposite parity; their sum equals the unnormalized coefficient vector.
    """
    if alpha_mod < 0:
        raise ValueError(f"amplitude modulus must be nonnegative, got {alpha_mod}")
    table = he_roots(d)
    half = d // 2
    pos_roots = table.roots[d - half :]
    pos_weights = table.christoffel[d - half :]
    p_pos = orthonormal_he_table(d - 1, pos_roots)
    cos_sum = 2.0 * (p_pos * pos_weights) @ np.cos(pos_roots * alpha_mod)
    sin_sum = 2.0 * (p_pos * pos_weights) @ np.sin(pos_roots * alpha_mod)
    if d % 2:
        p_zero = orthonormal_he_table(d - 1, np.zeros(1))[:, 0]
        cos_sum = cos_sum + table.christoffel[half] * p_zero
    n = np.arange(d)
    phase = np.exp(-0.5j * math.pi * n)
    even_part = np.where(n % 2 == 0, phase * cos_sum, 0.0 + 0.0j)
    odd_part = np.where(n % 2 == 1, phase * 1j * sin_sum, 0.0 + 0.0j)
    return even_part, odd_part
