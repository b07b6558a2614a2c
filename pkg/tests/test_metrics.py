import numpy as np
import pytest

from entconc.errors import DimensionError
from entconc.metrics import concurrence, concurrence_x_form, fidelity, purity
from entconc.protocol import c2_closed_form, sigma2_closed_form, sigma3_closed_form
from entconc.qmath import DensityMatrix, kron, random_psd, random_unitary
from entconc.states import ket_density, singlet, singlet_standard, werner


def _brute_force_werner_concurrence(q):
    # Independent oracle: lambda spectrum of rho rho~ via the generic
    # (non-Hermitian) eigenvalue problem, straight from the definition.
    rho = werner(q).mat
    sy = np.array([[0, -1j], [1j, 0]])
    yy = kron(sy, sy)
    lam = np.sqrt(np.abs(np.linalg.eigvals(rho @ yy @ rho.conj() @ yy)))
    lam = np.sort(lam)[::-1]
    return max(0.0, lam[0] - lam[1:].sum())


class TestConcurrence:
    def test_singlet(self):
        assert concurrence(singlet()).value == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert concurrence(DensityMatrix(np.eye(4) / 4, (2, 2))).value == 0.0

    def test_sigma2_closed_form(self):
        rep = concurrence(sigma2_closed_form(0.4))
        assert rep.value == pytest.approx(0.08 / 0.28, abs=1e-12)
        assert rep.value == pytest.approx(c2_closed_form(0.4), abs=1e-12)

    @pytest.mark.parametrize("q", np.linspace(0.0, 1.0, 11))
    def test_werner_formula(self, q):
        expected = max(0.0, (3 * q - 1) / 2)
        assert concurrence(werner(q)).value == pytest.approx(expected, abs=1e-10)
        assert concurrence(werner(q)).value == pytest.approx(
            _brute_force_werner_concurrence(q), abs=1e-10
        )

    def test_zero_exactly_at_one_third(self):
        assert concurrence(werner(1 / 3)).value == pytest.approx(0.0, abs=1e-10)

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            rho = DensityMatrix(random_psd(4, rng), (2, 2))
            u = kron(random_unitary(2, rng), random_unitary(2, rng))
            rotated = DensityMatrix(u @ rho.mat @ u.conj().T, (2, 2))
            assert abs(concurrence(rotated).value - concurrence(rho).value) < 1e-10

    def test_product_states(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            rho = DensityMatrix(kron(random_psd(2, rng), random_psd(2, rng)), (2, 2))
            assert concurrence(rho).value < 1e-10

    def test_x_form_shortcut_agrees(self):
        for T in np.linspace(0.01, 0.99, 25):
            s2 = sigma2_closed_form(T)
            assert abs(concurrence(s2).value - concurrence_x_form(s2)) < 1e-12
        for T in (0.1, 0.4, 0.8):
            s3 = sigma3_closed_form(T, 0.25)
            assert abs(concurrence(s3).value - concurrence_x_form(s3)) < 1e-12

    def test_lambda_report(self):
        rep = concurrence(singlet())
        assert rep.lambdas[0] == pytest.approx(1.0, abs=1e-12)
        assert all(l < 1e-10 for l in rep.lambdas[1:])
        assert list(rep.lambdas) == sorted(rep.lambdas, reverse=True)


class TestFidelity:
    def test_self(self):
        rng = np.random.default_rng(12)
        rho = DensityMatrix(random_psd(4, rng), (2, 2))
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-10)

    def test_orthogonal_pure(self):
        h = ket_density(np.array([1.0, 0.0]), (2,))
        v = ket_density(np.array([0.0, 1.0]), (2,))
        assert fidelity(h, v) == pytest.approx(0.0, abs=1e-12)

    def test_werner_vs_singlet(self):
        # Commuting pair: F = <singlet| werner |singlet> = (1+3q)/4 = 0.625.
        assert fidelity(werner(0.5), singlet()) == pytest.approx(0.625, abs=1e-10)

    def test_symmetry(self):
        rng = np.random.default_rng(13)
        a = DensityMatrix(random_psd(4, rng), (2, 2))
        b = DensityMatrix(random_psd(4, rng), (2, 2))
        assert abs(fidelity(a, b) - fidelity(b, a)) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            fidelity(singlet(), ket_density(np.array([1.0, 0.0]), (2,)))


class TestPurity:
    def test_pure(self):
        assert purity(singlet()) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed(self):
        assert purity(DensityMatrix(np.eye(4) / 4, (2, 2))) == pytest.approx(0.25, abs=1e-12)

    def test_matches_eigenvalue_sum(self):
        s2 = sigma2_closed_form(0.4)
        assert purity(s2) == pytest.approx(float((s2.eigenvalues() ** 2).sum()), abs=1e-12)

    def test_standard_singlet_equivalent(self):
        assert purity(singlet_standard()) == pytest.approx(1.0, abs=1e-12)
