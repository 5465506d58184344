"""Agreement and contract tests for the two sweep kernels."""

import numpy as np
import pytest

from semihilbert import backend
from semihilbert import _sweep_fallback as fallback
from semihilbert.errors import DimensionMismatch


def random_hermitian(rng, n):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (X + X.conj().T)


def test_python_backend_always_available():
    assert "python" in backend.available()


def test_current_reports_selected():
    assert backend.current() in backend.available()


def test_get_unknown_raises():
    with pytest.raises(ValueError):
        backend.get("fortran")


def test_use_switches_and_restores():
    prev = backend.current()
    try:
        backend.use("python")
        assert backend.current() == "python"
    finally:
        backend.use(prev)
    assert backend.current() == prev


class TestExtremalEigenvalues:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 12, 20])
    def test_matches_reference(self, backend_name, n):
        mod = backend.get(backend_name)
        rng = np.random.default_rng(100 + n)
        for _ in range(15):
            H = random_hermitian(rng, n)
            lo, hi = mod.extremal_eigenvalues(np.ascontiguousarray(H))
            ref = np.linalg.eigvalsh(H)
            assert lo == pytest.approx(ref[0], rel=1e-12, abs=1e-12)
            assert hi == pytest.approx(ref[-1], rel=1e-12, abs=1e-12)

    def test_near_degenerate(self, backend_name):
        mod = backend.get(backend_name)
        rng = np.random.default_rng(5)
        H = np.eye(6, dtype=np.complex128)
        H += 1e-13 * random_hermitian(rng, 6)
        lo, hi = mod.extremal_eigenvalues(np.ascontiguousarray(H))
        assert lo == pytest.approx(1.0, abs=1e-12)
        assert hi == pytest.approx(1.0, abs=1e-12)

    def test_diagonal_exact(self, backend_name):
        mod = backend.get(backend_name)
        d = np.diag([3.0, -7.0, 2.0, 0.5]).astype(np.complex128)
        lo, hi = mod.extremal_eigenvalues(d)
        assert lo == pytest.approx(-7.0, abs=1e-13)
        assert hi == pytest.approx(3.0, abs=1e-13)


class TestSweepAgreement:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_backends_agree(self, n):
        if len(backend.available()) < 2:
            pytest.skip("compiled kernel not built")
        rng = np.random.default_rng(300 + n)
        compiled = backend.get("compiled")
        for _ in range(10):
            B = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            B = np.ascontiguousarray(B)
            w1, s1 = compiled.sweep_extremes(B, 1024, 1e-10, 200)
            w2, s2 = fallback.sweep_extremes(B, 1024, 1e-10, 200)
            scale = max(1.0, np.linalg.norm(B))
            assert abs(w1 - w2) <= 1e-10 * scale
            assert abs(s1 - s2) <= 1e-10 * scale

    def test_jordan_disk(self, backend_name):
        mod = backend.get(backend_name)
        B = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
        w, s = mod.sweep_extremes(B, 1024, 1e-10, 200)
        assert w == pytest.approx(0.5, abs=1e-10)
        assert s == pytest.approx(-0.5, abs=1e-10)


class TestValidation:
    def test_rejects_non_square(self, backend_name):
        mod = backend.get(backend_name)
        with pytest.raises(DimensionMismatch):
            mod.sweep_extremes(np.zeros((2, 3), dtype=np.complex128),
                               1024, 1e-10, 200)

    def test_rejects_tiny_grid(self, backend_name):
        mod = backend.get(backend_name)
        B = np.eye(2, dtype=np.complex128)
        with pytest.raises(ValueError):
            mod.sweep_extremes(B, 8, 1e-10, 200)

    def test_rejects_empty(self, backend_name):
        mod = backend.get(backend_name)
        with pytest.raises(DimensionMismatch):
            mod.sweep_extremes(np.zeros((0, 0), dtype=np.complex128),
                               1024, 1e-10, 200)
