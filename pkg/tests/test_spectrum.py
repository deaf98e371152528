import io
import math

import numpy as np
import pytest

from srcpolar import (
    BudgetExceededError,
    DomainError,
    FieldSpec,
    JointSource,
    UnsupportedAlphabetError,
    bhattacharyya,
    build_high_entropy_set,
    conditional_entropy,
    exact_spectrum,
    montecarlo_spectrum,
    polarization_fractions,
    zbound_spectrum,
)

from conftest import random_binary_source

BER_HALF = JointSource.bernoulli(0.5)


class TestExactSpectrum:
    def test_uniform_source_already_polarized(self):
        sp = exact_spectrum(BER_HALF, 4)
        assert np.allclose(sp.h, 1.0, atol=1e-12)
        assert np.allclose(sp.z, 1.0, atol=1e-12)

    def test_n2_pairwise_polarization(self, rng):
        for _ in range(50):
            s = random_binary_source(rng, int(rng.integers(1, 4)))
            sp = exact_spectrum(s, 2)
            h = conditional_entropy(s)
            assert sp.h[0] + sp.h[1] == pytest.approx(2 * h, abs=1e-9)
            assert sp.h[0] >= h - 1e-12
            assert sp.h[1] <= h + 1e-12

    def test_bec_half_matches_erasure_recursion(self):
        sp = exact_spectrum(JointSource.bec_pair(0.5), 4)
        assert np.allclose(sp.z, [0.9375, 0.5625, 0.4375, 0.0625], atol=1e-12)
        # for the BEC the entropy spectrum coincides with the z spectrum
        assert np.allclose(sp.h, sp.z, atol=1e-12)

    def test_budget_enforced(self):
        with pytest.raises(BudgetExceededError):
            exact_spectrum(JointSource.bsc_pair(0.1), 16)

    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_entropy_conservation(self, q, rng):
        field = FieldSpec.for_alphabet(q)
        for _ in range(50):
            if q == 2:
                s = random_binary_source(rng, int(rng.integers(1, 3)))
            else:
                t = rng.random(q) + 0.01
                s = JointSource(field, (t / t.sum()).reshape(q, 1))
            h = conditional_entropy(s)
            for N in [2, 4, 8]:
                if (q * s.y_size) ** N > (1 << 24):
                    continue
                sp = exact_spectrum(s, N)
                assert float(sp.h.sum()) == pytest.approx(N * h, abs=1e-9)

    def test_fig2_orderings_at_n4(self, rng):
        for _ in range(30):
            s = random_binary_source(rng, int(rng.integers(1, 3)))
            sp = exact_spectrum(s, 4)
            assert sp.h[0] >= sp.h[1] - 1e-12
            assert sp.h[2] >= sp.h[3] - 1e-12

    def test_proposition1_sum_form_and_plus_exactness(self, rng):
        for _ in range(100):
            s = random_binary_source(rng, int(rng.integers(1, 4)))
            z = bhattacharyya(s)
            sp = exact_spectrum(s, 2)
            assert sp.z[0] + sp.z[1] <= 2 * z + 1e-12
            assert sp.z[1] == pytest.approx(z * z, abs=1e-10)
            assert sp.z[0] <= 2 * z - z * z + 1e-12


class TestZBound:
    def test_fixed_points(self):
        assert np.allclose(zbound_spectrum(JointSource.bernoulli(0.0), 8).z, 0.0)
        assert np.allclose(zbound_spectrum(JointSource.bernoulli(0.5), 8).z, 1.0)

    def test_single_level(self):
        s = JointSource.bec_pair(0.5)  # Z = 0.5
        sp = zbound_spectrum(s, 2)
        assert np.allclose(sp.z, [0.75, 0.25], atol=1e-15)

    def test_bounds_dominate_exact(self, rng):
        for _ in range(40):
            s = random_binary_source(rng, int(rng.integers(1, 3)))
            for N in [2, 4, 8]:
                zb = zbound_spectrum(s, N).z
                ex = exact_spectrum(s, N).z
                assert (zb >= ex - 1e-9).all()

    def test_exact_for_erasure_side_information(self):
        for eps in [0.2, 0.5, 0.8]:
            s = JointSource.bec_pair(eps)
            assert np.allclose(zbound_spectrum(s, 8).z, exact_spectrum(s, 8).z, atol=1e-12)

    def test_nonbinary_rejected(self):
        s = JointSource(FieldSpec.prime(3), np.full((3, 1), 1 / 3))
        with pytest.raises(UnsupportedAlphabetError):
            zbound_spectrum(s, 4)

    def test_tail_sum_eventually_decays(self):
        # At rates above Z(X|Y) the complement bound sum dies off with N.
        # (At rates between H(X|Y) and Z(X|Y) it provably does not: the
        # mean of the bound pair is preserved, so the fraction of bounds
        # tending to 0 is 1 - Z, not 1 - H.)
        s = JointSource.bernoulli(0.11)  # Z ~ 0.626
        sums = []
        for n in range(4, 13):
            N = 1 << n
            sp = zbound_spectrum(s, N)
            hset = build_high_entropy_set(sp, 0.75)
            comp = np.asarray(hset.complement()) - 1
            sums.append(float(sp.z[comp].sum()))
        assert all(b < a for a, b in zip(sums[3:], sums[4:]))  # monotone from 2^7
        assert sums[-1] < 1e-2 * max(sums)


class TestMonteCarlo:
    def test_close_to_exact(self):
        s = JointSource.bernoulli(0.11)
        mc = montecarlo_spectrum(s, 8, 100_000, 7)
        ex = exact_spectrum(s, 8)
        assert np.abs(mc.z - ex.z).max() < 0.01
        assert np.abs(mc.h - ex.h).max() < 0.02

    def test_single_sample_ranges(self):
        mc = montecarlo_spectrum(JointSource.bsc_pair(0.11), 4, 1, 0)
        assert (mc.h >= 0).all()
        assert ((mc.z >= 0) & (mc.z <= 1)).all()

    def test_seed_determinism(self):
        s = JointSource.bsc_pair(0.2)
        a = montecarlo_spectrum(s, 16, 500, 42)
        b = montecarlo_spectrum(s, 16, 500, 42)
        assert np.array_equal(a.h, b.h)
        assert np.array_equal(a.z, b.z)

    def test_zero_samples_rejected(self):
        with pytest.raises(DomainError):
            montecarlo_spectrum(BER_HALF, 4, 0, 1)


class TestHighEntropySet:
    def test_full_rate(self):
        hset = build_high_entropy_set(zbound_spectrum(JointSource.bernoulli(0.11), 8), 1.0)
        assert hset.indices == tuple(range(1, 9))
        assert hset.complement() == ()

    def test_bec_n4_half_rate(self):
        hset = build_high_entropy_set(exact_spectrum(JointSource.bec_pair(0.5), 4), 0.5)
        assert hset.indices == (1, 2)

    def test_tie_break_toward_small_index(self):
        hset = build_high_entropy_set(exact_spectrum(BER_HALF, 4), 0.5)
        assert hset.indices == (1, 2)

    def test_size_is_ceil(self):
        sp = zbound_spectrum(JointSource.bernoulli(0.11), 8)
        assert len(build_high_entropy_set(sp, 0.3).indices) == math.ceil(8 * 0.3)
        assert len(build_high_entropy_set(sp, 0.01).indices) == 1

    def test_selected_dominate_unselected(self, rng):
        s = random_binary_source(rng, 2)
        sp = exact_spectrum(s, 8)
        hset = build_high_entropy_set(sp, 0.4)
        lo = min(sp.z[i - 1] for i in hset.indices)
        hi = max((sp.z[i - 1] for i in hset.complement()), default=-1.0)
        assert lo >= hi

    def test_rate_validated(self):
        sp = zbound_spectrum(BER_HALF, 4)
        for r in [0.0, -0.5, 1.5]:
            with pytest.raises(DomainError):
                build_high_entropy_set(sp, r)

    def test_fingerprint_depends_on_inputs(self):
        a = build_high_entropy_set(zbound_spectrum(JointSource.bernoulli(0.11), 8), 0.5)
        b = build_high_entropy_set(zbound_spectrum(JointSource.bernoulli(0.11), 8), 0.5)
        c = build_high_entropy_set(zbound_spectrum(JointSource.bernoulli(0.12), 8), 0.5)
        assert a.fingerprint == b.fingerprint
        assert a.fingerprint != c.fingerprint

    def test_manifest_round_trip(self):
        hset = build_high_entropy_set(zbound_spectrum(JointSource.bsc_pair(0.11), 16), 0.7)
        from srcpolar import HighEntropySet

        again = HighEntropySet.from_manifest(hset.to_manifest())
        assert again.indices == hset.indices
        assert again.fingerprint == hset.fingerprint
        assert again.N == hset.N


class TestPolarizationFractions:
    def test_fully_polarized(self):
        fr = polarization_fractions(exact_spectrum(BER_HALF, 4), 0.1)
        assert fr == {"high": 1.0, "low": 0.0, "mid": 0.0}

    def test_n2_ber011(self):
        sp = exact_spectrum(JointSource.bernoulli(0.11), 2)
        fr = polarization_fractions(sp, 0.3)
        # exact h-values: h1 ~ 0.7859, h2 ~ 0.2139
        assert fr == {"high": 0.5, "low": 0.5, "mid": 0.0}

    def test_fractions_sum_to_one(self, rng):
        for _ in range(20):
            s = random_binary_source(rng, 2)
            fr = polarization_fractions(exact_spectrum(s, 8), float(rng.uniform(0.05, 0.95)))
            assert fr["high"] + fr["low"] + fr["mid"] == pytest.approx(1.0, abs=1e-12)

    def test_delta_validated(self):
        sp = exact_spectrum(BER_HALF, 2)
        for d in [0.0, 1.0, -0.1]:
            with pytest.raises(DomainError):
                polarization_fractions(sp, d)


class TestNonBinaryAndGf4:
    def test_gf4_counterexample_flat_spectrum(self):
        s = JointSource(FieldSpec.gf4(), np.array([[0.5], [0.0], [0.5], [0.0]]))
        for N in [2, 4]:
            sp = exact_spectrum(s, N)
            assert np.allclose(sp.h, 0.5, atol=1e-12)  # base-4 units
            assert sp.z is None

    def test_prime_q_spread_grows(self, rng):
        for _ in range(5):
            t = rng.random(3) + 0.05
            s = JointSource(FieldSpec.prime(3), (t / t.sum()).reshape(3, 1))
            spreads = [
                float(exact_spectrum(s, N).h.max() - exact_spectrum(s, N).h.min())
                for N in [2, 4, 8]
            ]
            assert spreads[0] <= spreads[1] <= spreads[2]


def test_csv_export():
    sp = exact_spectrum(JointSource.bernoulli(0.11), 4)
    buf = io.StringIO()
    sp.write_csv(buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "index,h,z,method"
    assert len(lines) == 5
    assert lines[1].startswith("1,")
    assert lines[1].endswith(",exact")
