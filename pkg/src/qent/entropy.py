"""Deformed logarithms and the entropic functionals.

All logarithms are natural.  The relative entropies return an
``EntropyValue`` that is +inf exactly when the first argument has weight
outside the support of the second (support violation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, DomainError
from .states import DensityOperator

#: Tr[(I - supp sigma) rho] above this counts as a genuine divergence
SUPPORT_VIOLATION_TOL = 1e-10


@dataclass(frozen=True)
class EntropyValue:
    value: float
    q: float
    support_violation: bool = False

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)


def q_log(x: float, q: float) -> float:
    """ln_q(x) = (x**(1-q) - 1) / (1-q), with the natural log at q = 1.

    Returns -inf at x = 0 when 1-q <= 0 would require it; callers guard
    that case.
    """
    if x < 0:
        raise DomainError(f"q_log requires x >= 0, got {x}")
    if q == 1.0:
        return math.log(x) if x > 0 else -math.inf
    if x == 0.0:
        return -1.0 / (1.0 - q) if q < 1.0 else -math.inf
    return (x ** (1.0 - q) - 1.0) / (1.0 - q)


def tsallis_entropy(rho: DensityOperator, q: float) -> float:
    """S_q = -sum_i w_i**q ln_q(w_i) over the spectrum; S_1 is von Neumann."""
    if not 0.0 <= q <= 2.0:
        raise DomainError(f"q must lie in [0, 2], got {q}")
    w = linalg.eig_hermitian(rho.matrix).eigenvalues
    w = np.clip(w, 0.0, None)
    w = w[w > linalg.SUPPORT_TOL]
    if q == 1.0:
        return float(-np.sum(w * np.log(w)))
    return float(-np.sum(w**q * (w ** (1.0 - q) - 1.0) / (1.0 - q)))


def von_neumann_entropy(rho: DensityOperator) -> float:
    """S(rho) = -Tr[rho ln rho], with 0 ln 0 = 0."""
    return tsallis_entropy(rho, 1.0)


def _check_dims(rho: DensityOperator, sigma: DensityOperator) -> None:
    if rho.dim != sigma.dim:
        raise DimensionMismatchError(f"dims differ: {rho.dim} vs {sigma.dim}")


def _support_violation(rho: DensityOperator, sigma_support: np.ndarray) -> float:
    comp = np.eye(rho.dim) - sigma_support
    return float(np.trace(comp @ rho.matrix).real)


def umegaki_relative_entropy(
    rho: DensityOperator, sigma: DensityOperator
) -> EntropyValue:
    """U(rho|sigma) = Tr[rho (ln rho - ln sigma)]."""
    _check_dims(rho, sigma)
    log_sigma = linalg.matrix_log(sigma.matrix)
    if _support_violation(rho, log_sigma.support) > SUPPORT_VIOLATION_TOL:
        return EntropyValue(math.inf, 1.0, support_violation=True)
    log_rho = linalg.matrix_log(rho.matrix)
    value = np.trace(rho.matrix @ (log_rho.value - log_sigma.value)).real
    return EntropyValue(float(value), 1.0)


def tsallis_relative_entropy(
    rho: DensityOperator, sigma: DensityOperator, q: float
) -> EntropyValue:
    """D_q(rho|sigma) = Tr[rho - rho**q sigma**(1-q)] / (1-q).

    q = 1 dispatches to the Umegaki relative entropy; q = 0 is identically 0
    under the M**0 = I convention.  The trace is evaluated in the
    symmetrized form Tr[sigma**((1-q)/2) rho**q sigma**((1-q)/2)], which is
    manifestly real and equal by cyclicity.
    """
    _check_dims(rho, sigma)
    if not 0.0 <= q <= 2.0:
        raise DomainError(f"q must lie in [0, 2], got {q}")
    if q == 1.0:
        return umegaki_relative_entropy(rho, sigma)
    if q == 0.0:
        return EntropyValue(0.0, 0.0)

    rho_q = linalg.matrix_power_q(rho.matrix, q)
    half = (1.0 - q) / 2.0
    if q < 1.0:
        A = linalg.matrix_power_q(sigma.matrix, half)
    else:
        # negative half-power, taken on the support of sigma only
        spec = linalg.eig_hermitian(sigma.matrix)
        w = np.clip(spec.eigenvalues, 0.0, None)
        on = w > linalg.SUPPORT_TOL
        if _support_violation(rho, (spec.eigenvectors * on.astype(float))
                              @ spec.eigenvectors.conj().T) > SUPPORT_VIOLATION_TOL:
            return EntropyValue(math.inf, q, support_violation=True)
        powers = np.where(on, np.power(np.where(on, w, 1.0), half), 0.0)
        V = spec.eigenvectors
        A = (V * powers) @ V.conj().T
    inner = np.trace(A @ rho_q @ A).real
    return EntropyValue(float((1.0 - inner) / (1.0 - q)), q)


def tsallis_relative_entropy_diagonal(p, r, q: float) -> float:
    """Scalar-path D_q for commuting (diagonal) inputs, used as an oracle."""
    p = np.asarray(p, dtype=float)
    r = np.asarray(r, dtype=float)
    if q == 1.0:
        mask = p > 0
        if np.any(r[mask] <= 0):
            return math.inf
        return float(np.sum(p[mask] * (np.log(p[mask]) - np.log(r[mask]))))
    if q == 0.0:
        return 0.0
    terms = np.where(p > 0, np.power(p, q), 0.0) * np.where(
        r > 0, np.power(r, 1.0 - q), 0.0
    )
    if q > 1.0 and np.any((p > SUPPORT_VIOLATION_TOL) & (r <= linalg.SUPPORT_TOL)):
        return math.inf
    return float((1.0 - np.sum(terms)) / (1.0 - q))
