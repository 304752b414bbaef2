import json

import numpy as np
import pytest

from qent import linalg, states
from qent.entropy import von_neumann_entropy
from qent.errors import OutOfRangeError, ZeroVectorError


class TestDensityFromPure:
    def test_basis_vector(self):
        rho = states.density_from_pure([1, 0])
        assert np.allclose(rho.matrix, np.diag([1.0, 0.0]))

    def test_plus_state(self):
        rho = states.density_from_pure(np.array([1, 1]) / np.sqrt(2))
        assert np.allclose(rho.matrix, 0.5 * np.ones((2, 2)))

    def test_purity(self):
        rng = np.random.default_rng(9)
        v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        rho = states.density_from_pure(v).matrix
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-12)

    def test_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            states.density_from_pure([0, 0])


class TestBellStates:
    def test_orthogonality(self):
        assert abs(np.vdot(states.bell_vector("psi+"), states.bell_vector("psi-"))) < 1e-15

    def test_reductions_maximally_mixed(self):
        for kind in ("psi+", "psi-", "phi+", "phi-"):
            b = states.bell_state(kind)
            assert np.allclose(b.reduction("A").matrix, np.eye(2) / 2, atol=1e-12)
            assert np.allclose(b.reduction("B").matrix, np.eye(2) / 2, atol=1e-12)

    def test_reduction_entropy(self):
        s = von_neumann_entropy(states.bell_state("phi+").reduction("A"))
        assert s == pytest.approx(np.log(2), abs=1e-12)


class TestWernerState:
    def test_f_one_is_singlet(self):
        w = states.werner_state(1.0)
        singlet = states.density_from_pure(states.bell_vector("psi-"))
        assert np.allclose(w.matrix, singlet.matrix, atol=1e-14)

    def test_f_quarter_is_maximally_mixed(self):
        assert np.allclose(states.werner_state(0.25).matrix, np.eye(4) / 4, atol=1e-14)

    def test_eigenvalues(self):
        F = 0.7
        w = np.sort(np.linalg.eigvalsh(states.werner_state(F).matrix))
        assert np.allclose(w, sorted([F] + [(1 - F) / 3] * 3), atol=1e-12)

    @pytest.mark.parametrize("F", [0.0, 0.5, 0.9])
    def test_reductions(self, F):
        w = states.werner_state(F)
        assert np.allclose(w.reduction("A").matrix, np.eye(2) / 2, atol=1e-12)
        assert np.allclose(w.reduction("B").matrix, np.eye(2) / 2, atol=1e-12)

    def test_out_of_range(self):
        with pytest.raises(OutOfRangeError):
            states.werner_state(1.5)


class TestRandomStates:
    def test_contract(self):
        for seed in range(100):
            rho = states.random_density(3, seed).matrix
            assert abs(np.trace(rho) - 1.0) < 1e-12
            assert np.linalg.eigvalsh(rho)[0] >= -1e-12

    def test_determinism_and_variation(self):
        a = states.random_density(4, 0).matrix
        b = states.random_density(4, 0).matrix
        c = states.random_density(4, 1).matrix
        assert np.array_equal(a, b)
        assert np.linalg.norm(a - c) > 1e-3

    def test_unitary_contract(self):
        for seed in range(100):
            U = states.random_unitary(3, seed)
            assert np.linalg.norm(U.conj().T @ U - np.eye(3)) < 1e-10
        assert abs(abs(np.linalg.det(states.random_unitary(4, 7))) - 1.0) < 1e-8

    def test_unitary_preserves_spectrum(self):
        rho = states.random_density(4, 2).matrix
        U = states.random_unitary(4, 3)
        w1 = np.linalg.eigvalsh(rho)
        w2 = np.linalg.eigvalsh(U @ rho @ U.conj().T)
        assert np.allclose(w1, w2, atol=1e-10)


class TestReducedProduct:
    def test_product_fixed_point(self):
        rho = states.random_density(2, 1).matrix
        tau = states.random_density(2, 2).matrix
        sigma = states.BipartiteState(
            states.DensityOperator(linalg.kron(rho, tau)), 2, 2
        )
        assert np.allclose(
            states.reduced_product(sigma).matrix, linalg.kron(rho, tau), atol=1e-12
        )

    @pytest.mark.parametrize("F", [0.1, 0.6, 1.0])
    def test_werner_reduced_product(self, F):
        out = states.reduced_product(states.werner_state(F))
        assert np.allclose(out.matrix, np.eye(4) / 4, atol=1e-12)

    def test_bell_reduced_product(self):
        out = states.reduced_product(states.bell_state("psi-"))
        assert np.allclose(out.matrix, np.eye(4) / 4, atol=1e-12)


class TestValidateDensity:
    def test_pass(self):
        assert states.validate_density(np.eye(2) / 2, 1e-9).passed

    def test_trace_failure(self):
        rep = states.validate_density(np.diag([1.0, 1.0]), 1e-9)
        assert not rep.passed
        assert rep.trace_defect == pytest.approx(1.0)

    def test_negative_eigenvalue_failure(self):
        rep = states.validate_density(np.diag([1.2, -0.2]), 1e-9)
        assert not rep.passed
        assert rep.min_eigenvalue == pytest.approx(-0.2)

    def test_constructors_pass(self):
        for M in (
            states.werner_state(0.33).matrix,
            states.bell_state("phi-").matrix,
            states.random_density(4, 11).matrix,
        ):
            assert states.validate_density(M, 1e-9).passed


class TestStateFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "w.json"
        M = states.werner_state(0.9).matrix
        states.save_state(path, M, [2, 2])
        loaded, dims = states.load_state(path)
        assert dims == [2, 2]
        assert np.array_equal(loaded, M)

    def test_schema(self, tmp_path):
        path = tmp_path / "s.json"
        states.save_state(path, states.random_density(2, 5).matrix, [2])
        obj = json.loads(path.read_text())
        assert set(obj) == {"dims", "re", "im"}
        assert obj["dims"] == [2]
        assert len(obj["re"]) == 2 and len(obj["re"][0]) == 2

    def test_dims_mismatch(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dims": [3], "re": [[1.0, 0.0], [0.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}')
        with pytest.raises(ValueError):
            states.load_state(path)
