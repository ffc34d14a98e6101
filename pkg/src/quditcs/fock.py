"""Finite-dimensional Fock space: normalized states, the truncated ladder
operators, the displacement unitary exp(alpha a+ - alpha* a), and fidelity
measures between pure states and simple mixtures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NullStateError

__all__ = [
    "QuditOperator",
    "QuditState",
    "annihilation",
    "creation",
    "displaced_vacuum",
    "displacement_oracle",
    "fidelity",
    "mixed_fidelity",
    "photon_distribution",
]

_NORM_TOL = 1e-10
_NULL_TOL = 1e-12


@dataclass(frozen=True)
class QuditState:
    """A normalized pure state on a d-dimensional Fock ladder.

    The amplitude vector is validated to unit norm (within 1e-10) and made
    read-only, so instances are safe to share across threads.
    """

    amps: np.ndarray

    def __post_init__(self):
        amps = np.atleast_1d(np.asarray(self.amps, dtype=complex))
        if amps.ndim != 1 or amps.size == 0:
            raise ValueError("amplitudes must form a nonempty vector")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state vector has norm {norm:.17g}, expected 1")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size

    @classmethod
    def from_amplitudes(cls, amps) -> "QuditState":
        """Normalize an arbitrary nonzero vector into a state."""
        amps = np.atleast_1d(np.asarray(amps, dtype=complex))
        norm = np.linalg.norm(amps)
        if norm < _NULL_TOL:
            raise NullStateError("cannot normalize a (numerically) zero vector")
        return cls(amps / norm)

    @classmethod
    def basis(cls, dim: int, n: int) -> "QuditState":
        """The Fock basis state |n> in dimension dim."""
        if not 0 <= n < dim:
            raise ValueError(f"basis index {n} outside dimension {dim}")
        amps = np.zeros(dim, dtype=complex)
        amps[n] = 1.0
        return cls(amps)

    def overlap(self, other: "QuditState") -> complex:
        """Inner product <self|other>."""
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"dimensions differ: {self.dim} vs {other.dim}"
            )
        return complex(np.vdot(self.amps, other.amps))

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "amps_re": self.amps.real.tolist(),
            "amps_im": self.amps.imag.tolist(),
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "QuditState":
        re = np.asarray(payload["amps_re"], dtype=float)
        im = np.asarray(payload["amps_im"], dtype=float)
        if re.shape != im.shape or re.size != payload["dim"]:
            raise ValueError("inconsistent serialized state")
        return cls(re + 1j * im)


@dataclass(frozen=True)
class QuditOperator:
    """A d x d operator on the truncated Fock space (entries are read-only)."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"operator must be square, got shape {entries.shape}")
        entries = entries.copy()
        entries.flags.writeable = False
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> "QuditOperator":
        return QuditOperator(self.entries.conj().T)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-vector product on a raw amplitude vector."""
        vec = np.asarray(vec, dtype=complex)
        if vec.shape != (self.dim,):
            raise DimensionMismatchError(
                f"vector of length {vec.size} does not fit dimension {self.dim}"
            )
        return self.entries @ vec

    def __matmul__(self, other: "QuditOperator") -> "QuditOperator":
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"dimensions differ: {self.dim} vs {other.dim}"
            )
        return QuditOperator(self.entries @ other.entries)


def annihilation(d: int) -> QuditOperator:
    """Truncated lowering operator: a|n> = sqrt(n)|n-1>, a|0> = 0.

    The commutator with its adjoint is the identity minus d |d-1><d-1|,
    which is the footprint the truncation leaves behind.
    """
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    entries = np.zeros((d, d), dtype=complex)
    ns = np.arange(1, d)
    entries[ns - 1, ns] = np.sqrt(ns)
    return QuditOperator(entries)


def creation(d: int) -> QuditOperator:
    """Truncated raising operator, the adjoint of annihilation(d)."""
    return annihilation(d).dagger()


def displacement_oracle(d: int, alpha: complex) -> QuditOperator:
    """The unitary exp(alpha a+ - alpha* a) on the truncated space.

    Built by eigendecomposition of the Hermitian generator
    i(alpha a+ - alpha* a); exact unitarity to rounding, with no series
    truncation. This is the reference implementation the fast coefficient
    path is checked against.
    """
    a = annihilation(d).entries
    gen = alpha * a.conj().T - np.conj(alpha) * a
    vals, vecs = np.linalg.eigh(1j * gen)
    u = (vecs * np.exp(-1j * vals)) @ vecs.conj().T
    return QuditOperator(u)


def displaced_vacuum(d: int, alpha: complex) -> QuditState:
    """First column of the displacement unitary, as a normalized state."""
    u = displacement_oracle(d, alpha)
    return QuditState.from_amplitudes(u.entries[:, 0])


def fidelity(a: QuditState, b: QuditState) -> float:
    """Pure-state fidelity |<a|b>|^2 (symmetric, global-phase invariant)."""
    ov = a.overlap(b)
    return min(float(abs(ov) ** 2), 1.0)


def mixed_fidelity(
    alpha_state: QuditState, beta_plus: QuditState, beta_minus: QuditState
) -> float:
    """Fidelity of a pure state against the even mixture of two others:

    <psi| rho |psi> with rho = (|b+><b+| + |b-><b-|)/2.
    """
    return 0.5 * (fidelity(alpha_state, beta_plus) + fidelity(alpha_state, beta_minus))


def photon_distribution(s: QuditState) -> np.ndarray:
    """Occupation probabilities P_n = |c_n|^2 as a fresh writable array."""
    return np.abs(s.amps) ** 2
