"""Monte-Carlo cross-checks: one-sided guarantees and determinism."""

import numpy as np
import pytest

from semihilbert import (
    a_quantities,
    derive_rng,
    gen_operator_in_ba,
    sample_c_upper,
    sample_norm_lower,
    sample_w_lower,
)
from semihilbert.errors import DegenerateSample
from semihilbert import oracles

from conftest import random_context


def instance(seed, n=3, rank=3, law="uniform"):
    ctx = random_context(seed, n, rank, law)
    T = gen_operator_in_ba(ctx, derive_rng(seed, "T"))
    return ctx, T


class TestHardBounds:
    @pytest.mark.parametrize("law", ["uniform", "loguniform"])
    def test_one_sided(self, law):
        for seed in range(12):
            ctx, T = instance(seed, n=2 + seed % 2, rank=2, law=law)
            q = a_quantities(ctx, T)
            wl = sample_w_lower(ctx, T, n_samples=1500, seed=seed)
            nl = sample_norm_lower(ctx, T, n_samples=1500, seed=seed)
            cu = sample_c_upper(ctx, T, n_samples=1500, seed=seed)
            assert wl.value <= q.w * (1 + 1e-10) + 1e-12
            assert nl.value <= q.seminorm * (1 + 1e-10) + 1e-12
            assert cu.value >= q.c * (1 - 1e-10) - 1e-12

    def test_bound_side_labels(self):
        ctx, T = instance(3)
        assert sample_w_lower(ctx, T, 100, seed=1).bound_side == "lower"
        assert sample_norm_lower(ctx, T, 100, seed=1).bound_side == "lower"
        assert sample_c_upper(ctx, T, 100, seed=1).bound_side == "upper"


class TestQuality:
    def test_close_on_small_instances(self):
        for seed in range(6):
            ctx, T = instance(seed + 100, n=2, rank=2)
            q = a_quantities(ctx, T)
            wl = sample_w_lower(ctx, T, n_samples=4000, seed=seed)
            nl = sample_norm_lower(ctx, T, n_samples=4000, seed=seed)
            assert q.w - wl.value <= 0.05 * q.w
            assert q.seminorm - nl.value <= 0.05 * q.seminorm

    def test_scalar_is_exact(self):
        ctx = random_context(9, 2, 1)
        T = 3.0 * np.eye(2)
        wl = sample_w_lower(ctx, T, n_samples=50, seed=0)
        assert wl.value == pytest.approx(3.0, rel=1e-12)
        cu = sample_c_upper(ctx, T, n_samples=50, seed=0)
        assert cu.value == pytest.approx(3.0, rel=1e-12)


class TestPlumbing:
    def test_deterministic_given_seed(self):
        ctx, T = instance(7)
        a = sample_w_lower(ctx, T, n_samples=500, seed=11)
        b = sample_w_lower(ctx, T, n_samples=500, seed=11)
        assert a.value == b.value
        c = sample_w_lower(ctx, T, n_samples=500, seed=12)
        assert c.value != a.value

    def test_sample_budget_recorded(self):
        ctx, T = instance(8)
        est = sample_w_lower(ctx, T, n_samples=500, seed=2)
        expected = 500 + oracles._POLISH_ROUNDS * oracles._POLISH_BATCH
        assert est.samples == expected
        assert est.seed == 2

    def test_rejects_empty_batch(self):
        ctx, T = instance(9)
        with pytest.raises(ValueError):
            sample_w_lower(ctx, T, n_samples=0, seed=0)

    def test_degenerate_sampling(self, monkeypatch):
        ctx, T = instance(10)

        def zeros(rng, shape):
            return np.zeros(shape, dtype=np.complex128)

        monkeypatch.setattr(oracles, "complex_normal", zeros)
        with pytest.raises(DegenerateSample):
            sample_w_lower(ctx, T, n_samples=10, seed=0)
