"""Trace-preserving completely positive maps in Kraus form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, InvalidProjectorsError, OutOfRangeError
from .states import DensityOperator

CPTP_TOL = 1e-10


@dataclass(frozen=True)
class QuantumChannel:
    """Nonempty list of d_out x d_in Kraus operators with sum K+K = I."""

    kraus: tuple
    d_in: int
    d_out: int


@dataclass(frozen=True)
class CPTPReport:
    defect: float
    passed: bool


def make_channel(kraus) -> QuantumChannel:
    kraus = tuple(np.asarray(K, dtype=complex) for K in kraus)
    if not kraus:
        raise ValueError("a channel needs at least one Kraus operator")
    d_out, d_in = kraus[0].shape
    for K in kraus:
        if K.shape != (d_out, d_in):
            raise DimensionMismatchError("Kraus operators have mismatched shapes")
    return QuantumChannel(kraus=kraus, d_in=d_in, d_out=d_out)


def validate_cptp(channel: QuantumChannel, tol: float = CPTP_TOL) -> CPTPReport:
    """Frobenius distance of sum K+K from the identity."""
    acc = sum(K.conj().T @ K for K in channel.kraus)
    defect = linalg.frobenius_norm(acc - np.eye(channel.d_in))
    return CPTPReport(defect=float(defect), passed=defect < tol)


def apply_channel(channel: QuantumChannel, rho: DensityOperator) -> DensityOperator:
    if rho.dim != channel.d_in:
        raise DimensionMismatchError(
            f"state dim {rho.dim} != channel input dim {channel.d_in}"
        )
    out = sum(K @ rho.matrix @ K.conj().T for K in channel.kraus)
    return DensityOperator((out + out.conj().T) / 2)


def identity_channel(d: int) -> QuantumChannel:
    return make_channel([np.eye(d)])


def _weyl_operators(d: int):
    """The d*d unitary shift/clock products X**a Z**b."""
    omega = np.exp(2j * np.pi / d)
    X = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    Z = np.diag(omega ** np.arange(d))
    for a in range(d):
        for b in range(d):
            yield a, b, np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, b)


def depolarizing_channel(d: int, p: float) -> QuantumChannel:
    """rho -> (1-p) rho + p I/d via the Weyl Kraus set."""
    if not 0.0 <= p <= 1.0:
        raise OutOfRangeError(f"p must lie in [0, 1], got {p}")
    kraus = []
    for a, b, W in _weyl_operators(d):
        weight = (1.0 - p) + p / d**2 if (a, b) == (0, 0) else p / d**2
        if weight > 0:
            kraus.append(np.sqrt(weight) * W)
    return make_channel(kraus)


def pinching_channel(projectors) -> QuantumChannel:
    """rho -> sum_i P_i rho P_i for orthogonal projectors resolving I."""
    projectors = [np.asarray(P, dtype=complex) for P in projectors]
    if not projectors:
        raise InvalidProjectorsError("need at least one projector")
    d = projectors[0].shape[0]
    for P in projectors:
        if linalg.frobenius_norm(P @ P - P) > 1e-10:
            raise InvalidProjectorsError("not idempotent within tolerance")
        if linalg.hermiticity_defect(P) > 1e-10:
            raise InvalidProjectorsError("projector not Hermitian")
    for i, P in enumerate(projectors):
        for Q in projectors[i + 1 :]:
            if linalg.frobenius_norm(P @ Q) > 1e-10:
                raise InvalidProjectorsError("projectors not pairwise orthogonal")
    if linalg.frobenius_norm(sum(projectors) - np.eye(d)) > 1e-10:
        raise InvalidProjectorsError("projectors do not sum to the identity")
    return make_channel(projectors)


def basis_pinching_channel(d: int) -> QuantumChannel:
    """Computational-basis pinching (full dephasing)."""
    eye = np.eye(d, dtype=complex)
    return pinching_channel([np.outer(eye[:, k], eye[:, k]) for k in range(d)])


def random_channel(d: int, k: int, seed: int) -> QuantumChannel:
    """Kraus operators as the d x d blocks of a Haar-random (k d) x d isometry."""
    if d < 1 or k < 1:
        raise OutOfRangeError("need d >= 1 and k >= 1")
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((k * d, d)) + 1j * rng.standard_normal((k * d, d))
    Q, R = np.linalg.qr(G)
    diag = np.diagonal(R)
    V = Q * (diag / np.abs(diag))
    return make_channel([V[i * d : (i + 1) * d, :] for i in range(k)])


def local_channel(phi1: QuantumChannel, phi2: QuantumChannel) -> QuantumChannel:
    """Tensor product channel with Kraus set {K_i (x) L_j}."""
    kraus = [np.kron(K, L) for K in phi1.kraus for L in phi2.kraus]
    return make_channel(kraus)
