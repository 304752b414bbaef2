"""Density operators: construction, validation, randomization, file I/O.

Qubit-pair basis order is |uu>, |ud>, |du>, |dd> (row-major), which pins
the numeric matrix of the Werner family bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import OutOfRangeError, ZeroVectorError

DENSITY_TOL = 1e-9


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, PSD, unit-trace complex matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", linalg.as_complex_matrix(self.matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BipartiteState:
    """A density operator with a fixed tensor split dim = dA * dB."""

    state: DensityOperator
    dA: int
    dB: int

    def __post_init__(self):
        if self.dA * self.dB != self.state.dim:
            raise OutOfRangeError(
                f"dA*dB = {self.dA * self.dB} != dim = {self.state.dim}"
            )

    @property
    def matrix(self) -> np.ndarray:
        return self.state.matrix

    def reduction(self, keep: str) -> DensityOperator:
        red = linalg.partial_trace(self.matrix, self.dA, self.dB, keep=keep)
        return DensityOperator(red)


@dataclass(frozen=True)
class DensityReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    passed: bool


def validate_density(M, tol: float = DENSITY_TOL) -> DensityReport:
    """Hermiticity / trace / positivity diagnostics for a candidate state."""
    M = linalg.as_complex_matrix(M)
    herm = linalg.hermiticity_defect(M)
    trace = abs(np.trace(M) - 1.0)
    w = np.linalg.eigvalsh((M + M.conj().T) / 2)
    min_eig = float(w[0])
    passed = herm <= tol and trace <= tol and min_eig >= -tol
    return DensityReport(herm, float(trace), min_eig, passed)


def density_from_pure(v) -> DensityOperator:
    """Rank-one projector |v><v| / <v|v>."""
    v = np.asarray(v, dtype=complex).ravel()
    norm2 = float(np.vdot(v, v).real)
    if norm2 <= 0.0:
        raise ZeroVectorError("cannot build a state from the zero vector")
    return DensityOperator(np.outer(v, v.conj()) / norm2)


_BELL_VECTORS = {
    "psi+": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2),
    "phi+": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2),
}


def bell_vector(kind: str) -> np.ndarray:
    try:
        return _BELL_VECTORS[kind].copy()
    except KeyError:
        raise OutOfRangeError(f"unknown Bell state {kind!r}") from None


def bell_state(kind: str) -> BipartiteState:
    """One of the four Bell states as a 2x2 bipartite density operator."""
    return BipartiteState(density_from_pure(bell_vector(kind)), 2, 2)


def werner_state(F: float) -> BipartiteState:
    """F on the singlet, (1-F)/3 on each of the other three Bell projectors."""
    if not 0.0 <= F <= 1.0:
        raise OutOfRangeError(f"F must lie in [0, 1], got {F}")
    M = F * density_from_pure(bell_vector("psi-")).matrix
    for kind in ("psi+", "phi-", "phi+"):
        M = M + (1.0 - F) / 3.0 * density_from_pure(bell_vector(kind)).matrix
    return BipartiteState(DensityOperator(M), 2, 2)


def _complex_gaussian(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_density(dim: int, seed: int) -> DensityOperator:
    """Hilbert-Schmidt (Ginibre) random state, deterministic per seed."""
    G = _complex_gaussian(dim, np.random.default_rng(seed))
    M = G @ G.conj().T
    return DensityOperator(M / np.trace(M).real)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian with phase fix."""
    G = _complex_gaussian(dim, np.random.default_rng(seed))
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_bipartite(dA: int, dB: int, seed: int) -> BipartiteState:
    return BipartiteState(random_density(dA * dB, seed), dA, dB)


def reduced_product(sigma: BipartiteState) -> DensityOperator:
    """Tensor product of the two reductions of a bipartite state."""
    rho1 = sigma.reduction("A").matrix
    rho2 = sigma.reduction("B").matrix
    return DensityOperator(linalg.kron(rho1, rho2))


# --- state file format -----------------------------------------------------
#
# JSON object {"dims": [dA, dB] or [d], "re": [[...]], "im": [[...]]} with
# row-major real/imaginary parts, written with 17 significant digits.


def _grid(M: np.ndarray, part) -> str:
    rows = [
        "[" + ", ".join(format(x, ".17g") for x in part(row)) + "]" for row in M
    ]
    return "[" + ", ".join(rows) + "]"


def state_to_json(M: np.ndarray, dims) -> str:
    M = linalg.as_complex_matrix(M)
    dims_txt = "[" + ", ".join(str(int(d)) for d in dims) + "]"
    return (
        "{"
        + f'"dims": {dims_txt}, "re": {_grid(M, np.real)}, "im": {_grid(M, np.imag)}'
        + "}"
    )


def save_state(path, M: np.ndarray, dims) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(state_to_json(M, dims) + "\n")


def load_state(path):
    """Read a state file; returns (matrix, dims list)."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    dims = [int(d) for d in obj["dims"]]
    M = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    M = linalg.as_complex_matrix(M)
    expected = int(np.prod(dims))
    if M.shape[0] != expected:
        raise ValueError(f"dims {dims} inconsistent with matrix size {M.shape[0]}")
    return M, dims
