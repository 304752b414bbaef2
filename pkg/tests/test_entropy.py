import math

import numpy as np
import pytest

from qent import entropy, states
from qent.errors import DimensionMismatchError, DomainError


def diag_state(*vals):
    return states.DensityOperator(np.diag(vals).astype(complex))


class TestQLog:
    @pytest.mark.parametrize("q", [0.0, 0.5, 1.0, 2.0])
    def test_log_of_one(self, q):
        assert entropy.q_log(1.0, q) == pytest.approx(0.0, abs=1e-15)

    def test_limit_branch(self):
        assert entropy.q_log(math.e, 1.0) == pytest.approx(1.0)

    def test_deformed_value(self):
        # (sqrt(2) - 1) / 0.5
        assert entropy.q_log(2.0, 0.5) == pytest.approx(2 * (math.sqrt(2) - 1))

    def test_negative_argument(self):
        with pytest.raises(DomainError):
            entropy.q_log(-1.0, 0.5)


class TestTsallisEntropy:
    @pytest.mark.parametrize("q", [0.3, 1.0, 1.8])
    def test_pure_state_zero(self, q):
        rho = states.density_from_pure([1, 1j])
        assert entropy.tsallis_entropy(rho, q) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_q2(self):
        # S_q(I/d) = ln_q d, and ln_2(2) = 0.5
        assert entropy.tsallis_entropy(diag_state(0.5, 0.5), 2.0) == pytest.approx(0.5)

    def test_maximally_mixed_q1(self):
        assert entropy.tsallis_entropy(diag_state(0.5, 0.5), 1.0) == pytest.approx(
            math.log(2)
        )


class TestVonNeumannEntropy:
    def test_pure(self):
        assert entropy.von_neumann_entropy(diag_state(1.0, 0.0)) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_maximally_mixed(self):
        rho = states.DensityOperator(np.eye(4) / 4)
        assert entropy.von_neumann_entropy(rho) == pytest.approx(math.log(4))

    def test_werner_spectrum(self):
        # eigenvalues {0.9, 1/30 x3}
        expected = -0.9 * math.log(0.9) - 3 * (1 / 30) * math.log(1 / 30)
        s = entropy.von_neumann_entropy(states.werner_state(0.9).state)
        assert s == pytest.approx(expected, abs=1e-12)


class TestUmegaki:
    def test_self_is_zero(self):
        rho = states.random_density(3, 4)
        ev = entropy.umegaki_relative_entropy(rho, rho)
        assert ev.value == pytest.approx(0.0, abs=1e-12)
        assert not ev.support_violation

    def test_commuting_value(self):
        ev = entropy.umegaki_relative_entropy(
            diag_state(0.5, 0.5), diag_state(0.25, 0.75)
        )
        assert ev.value == pytest.approx(0.5 * math.log(4 / 3))

    def test_disjoint_supports(self):
        ev = entropy.umegaki_relative_entropy(diag_state(1, 0), diag_state(0, 1))
        assert ev.value == math.inf
        assert ev.support_violation

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            entropy.umegaki_relative_entropy(
                diag_state(1.0, 0.0), states.DensityOperator(np.eye(3) / 3)
            )


class TestTsallisRelativeEntropy:
    @pytest.mark.parametrize("q", [0.3, 0.7, 1.5])
    def test_self_is_zero(self, q):
        rho = states.random_density(3, 8)
        ev = entropy.tsallis_relative_entropy(rho, rho, q)
        assert ev.value == pytest.approx(0.0, abs=1e-12)

    def test_commuting_value(self):
        # 2 (1 - sqrt(0.125) - sqrt(0.375))
        ev = entropy.tsallis_relative_entropy(
            diag_state(0.5, 0.5), diag_state(0.25, 0.75), 0.5
        )
        expected = 2 * (1 - math.sqrt(0.125) - math.sqrt(0.375))
        assert ev.value == pytest.approx(expected, abs=1e-14)

    def test_q_zero_always_zero(self):
        rho = states.random_density(4, 1)
        sigma = states.random_density(4, 2)
        assert entropy.tsallis_relative_entropy(rho, sigma, 0.0).value == 0.0

    def test_q_one_matches_umegaki(self):
        rho = states.random_density(3, 5)
        sigma = states.random_density(3, 6)
        a = entropy.tsallis_relative_entropy(rho, sigma, 1.0).value
        b = entropy.umegaki_relative_entropy(rho, sigma).value
        assert a == b

    def test_support_violation_above_one(self):
        ev = entropy.tsallis_relative_entropy(diag_state(1, 0), diag_state(0, 1), 1.5)
        assert ev.value == math.inf
        assert ev.support_violation

    def test_finite_below_one_despite_supports(self):
        ev = entropy.tsallis_relative_entropy(diag_state(1, 0), diag_state(0, 1), 0.5)
        assert ev.value == pytest.approx(2.0)
        assert not ev.support_violation

    def test_q_out_of_range(self):
        rho = states.random_density(2, 0)
        with pytest.raises(DomainError):
            entropy.tsallis_relative_entropy(rho, rho, 2.5)

    def test_matches_diagonal_oracle(self):
        rng = np.random.default_rng(12)
        p = rng.dirichlet(np.ones(4))
        r = rng.dirichlet(np.ones(4))
        rho = states.DensityOperator(np.diag(p).astype(complex))
        sigma = states.DensityOperator(np.diag(r).astype(complex))
        for q in (0.2, 0.8, 1.0, 1.4, 2.0):
            matrix = entropy.tsallis_relative_entropy(rho, sigma, q).value
            scalar = entropy.tsallis_relative_entropy_diagonal(p, r, q)
            assert matrix == pytest.approx(scalar, abs=1e-12)
