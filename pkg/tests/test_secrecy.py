import dataclasses
import math

import pytest
from hypothesis import given, settings, strategies as st

from jkelab import (AdcSpec, NoPositiveSecrecyError, SecrecyReport,
                    SystemParams, ThresholdKind, ValidationError,
                    jke_duration, min_bob_snr_for_positive_rs, secrecy_rate,
                    sweep_min_bob_snr, sweep_rate_vs_snr)
from jkelab.adc import TWO_PI_E

from conftest import HEADLINE_POINT

# frozen from a 50-digit arbitrary-precision evaluation of the full bound
HEADLINE_RATE = 22222131.2379162
HEADLINE_DURATION_S = 0.0115200471664574
NOISELESS_EVE_THRESHOLD_DB = 30.3262689106286  # noiseless-Eve threshold, same oracle


def bisect_threshold_db(params: SystemParams, lo_db=-60.0, hi_db=600.0,
                        tol_db=1e-4):
    """Independent oracle: bisect the sign change of the secrecy rate over
    the legitimate channel's SNR. Returns None when even an essentially
    noiseless channel stays non-positive (quantizer-limited)."""
    p = params.signal_power

    def rate_at(db: float) -> float:
        return secrecy_rate(
            params.with_bob_noise_var(p / 10 ** (db / 10))).rate_bits_per_s

    if rate_at(hi_db) <= 0:
        return None
    assert rate_at(lo_db) <= 0, "bracket must start non-positive"
    lo, hi = lo_db, hi_db
    while hi - lo > tol_db:
        mid = 0.5 * (lo + hi)
        if rate_at(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


class TestSecrecyRate:
    def test_headline_operating_point(self, headline_params):
        report = secrecy_rate(headline_params)
        assert report.rate_bits_per_s == pytest.approx(HEADLINE_RATE, rel=1e-12)
        assert report.positive

    def test_decomposition_identity(self, headline_params):
        r = secrecy_rate(headline_params)
        assert r.rate_bits_per_s == r.bandwidth_hz * (r.bob_term_bits
                                                      - r.eve_term_bits)

    def test_zero_bandwidth_gives_zero_rate(self, headline_params):
        report = secrecy_rate(dataclasses.replace(headline_params, bandwidth_hz=0.0))
        assert report.rate_bits_per_s == 0.0
        assert not report.positive

    def test_symmetric_receivers_without_jamming_is_negative(self, headline_params):
        # identical ADCs and noise on both sides, no jamming: the
        # eavesdropper's milder noise-floor denominator (2*pi*e > 12)
        # forces a negative bound
        point = dataclasses.replace(
            headline_params, jamming_bits_per_symbol=0,
            eve_adc=headline_params.bob_adc,
            eve_noise_var=headline_params.bob_noise_var)
        assert secrecy_rate(point).rate_bits_per_s < 0

    def test_deltas_match_adc_model(self, headline_params):
        from jkelab import bob_resolution, eve_resolution
        r = secrecy_rate(headline_params)
        assert r.delta_b == bob_resolution(1.0, headline_params.bob_bits(), 2.5)
        assert r.delta_e == eve_resolution(1.0, headline_params.eve_bits(), 14, 2.5)

    def test_explicit_bits_override_respected(self, headline_params):
        point = dataclasses.replace(
            headline_params, bob_adc=AdcSpec(500e-15, explicit_bits=8.0))
        assert secrecy_rate(point).delta_b == pytest.approx(5.0 / 2 ** 8)

    @given(st.floats(min_value=-20, max_value=60),
           st.floats(min_value=0.1, max_value=20.0))
    @settings(max_examples=50)
    def test_rate_increases_as_bob_noise_drops(self, snr_db, drop_db):
        params = SystemParams(**HEADLINE_POINT)
        noisy = params.with_bob_noise_var(10 ** (-snr_db / 10))
        quieter = params.with_bob_noise_var(10 ** (-(snr_db + drop_db) / 10))
        assert (secrecy_rate(quieter).rate_bits_per_s
                > secrecy_rate(noisy).rate_bits_per_s)

    @given(st.integers(min_value=0, max_value=25),
           st.floats(min_value=0.0, max_value=60.0))
    @settings(max_examples=50)
    def test_rate_increases_in_jamming_bits(self, w, eve_snr_db):
        # restricted to eavesdropper SNR >= 0 dB, where widening the
        # eavesdropper's step is guaranteed to hurt them
        params = SystemParams(**HEADLINE_POINT).with_eve_noise_var(
            10 ** (-eve_snr_db / 10))
        low = dataclasses.replace(params, jamming_bits_per_symbol=w)
        high = dataclasses.replace(params, jamming_bits_per_symbol=w + 1)
        assert (secrecy_rate(high).rate_bits_per_s
                > secrecy_rate(low).rate_bits_per_s)

    @given(st.floats(min_value=1e-15, max_value=400e-15),
           st.floats(min_value=1.05, max_value=10.0))
    @settings(max_examples=50)
    def test_rate_non_increasing_as_eve_jitter_shrinks(self, jitter, factor):
        params = SystemParams(**HEADLINE_POINT)
        sharp = dataclasses.replace(params, eve_adc=AdcSpec(jitter))
        blunt = dataclasses.replace(params, eve_adc=AdcSpec(jitter * factor))
        assert (secrecy_rate(sharp).rate_bits_per_s
                <= secrecy_rate(blunt).rate_bits_per_s)

    def test_eve_term_saturates_for_overwhelming_jamming(self, headline_params):
        # with b_E - w <= -10 the eavesdropper term equals its direct
        # evaluation at the (huge) step and sits just above log2(2*pi*e/12)
        point = dataclasses.replace(
            headline_params, jamming_bits_per_symbol=15,
            eve_adc=AdcSpec(5e-15, explicit_bits=5.0), eve_noise_var=0.0)
        r = secrecy_rate(point)
        direct = math.log2((1.0 + r.delta_e ** 2 / 12.0)
                           / (r.delta_e ** 2 / TWO_PI_E))
        assert r.eve_term_bits == pytest.approx(direct, abs=1e-6)
        assert r.eve_term_bits > math.log2(TWO_PI_E / 12.0)


class TestJkeDuration:
    def test_headline_duration(self, headline_params):
        timing = jke_duration(secrecy_rate(headline_params), 256, 0.001)
        assert timing.duration_s == pytest.approx(HEADLINE_DURATION_S, rel=1e-12)
        # headline number: approx 11.52 ms
        assert timing.duration_s == pytest.approx(11.52e-3, rel=5e-3)

    def test_unit_ratio(self):
        report = SecrecyReport(1.0, 256.0, 256.0, 0.0, 0.0, 0.0)
        assert jke_duration(report, 256, 1.0).duration_s == pytest.approx(1.0)

    def test_negative_rate_refused(self):
        report = SecrecyReport(1.0, -1.0, 0.0, 1.0, 0.0, 0.0)
        with pytest.raises(NoPositiveSecrecyError, match="no positive secrecy"):
            jke_duration(report, 256, 0.001)

    def test_bad_efficiency_rejected(self, headline_params):
        report = secrecy_rate(headline_params)
        for eff in (0.0, -0.1, 1.5):
            with pytest.raises(ValidationError):
                jke_duration(report, 256, eff)
        with pytest.raises(ValidationError):
            jke_duration(report, 0, 0.001)


class TestMinBobSnr:
    def test_noiseless_eve_threshold_frozen(self, headline_params):
        thr = min_bob_snr_for_positive_rs(headline_params.with_eve_noise_var(0.0))
        assert thr.kind is ThresholdKind.THRESHOLD
        assert thr.snr_db == pytest.approx(NOISELESS_EVE_THRESHOLD_DB, rel=1e-12)

    def test_matches_bisection_oracle(self, headline_params):
        point = headline_params.with_eve_noise_var(0.0)
        thr = min_bob_snr_for_positive_rs(point)
        oracle = bisect_threshold_db(point)
        assert abs(thr.snr_db - oracle) < 0.01

    def test_rate_sign_flips_at_threshold(self, headline_params):
        point = headline_params.with_eve_noise_var(0.0)
        thr = min_bob_snr_for_positive_rs(point).snr_db
        above = point.with_bob_noise_var(10 ** (-(thr + 0.01) / 10))
        below = point.with_bob_noise_var(10 ** (-(thr - 0.01) / 10))
        assert secrecy_rate(above).rate_bits_per_s > 0
        assert secrecy_rate(below).rate_bits_per_s < 0

    def test_overwhelmed_eve_gives_low_threshold(self, headline_params):
        # b_E - w <= 0: tiny eavesdropper ratio, threshold below 0 dB
        point = dataclasses.replace(
            headline_params.with_eve_noise_var(0.0),
            eve_adc=AdcSpec(5e-15, explicit_bits=10.0),
            jamming_bits_per_symbol=14)
        thr = min_bob_snr_for_positive_rs(point)
        oracle = bisect_threshold_db(point)
        assert thr.kind is ThresholdKind.THRESHOLD
        assert abs(thr.snr_db - oracle) < 0.01
        assert thr.snr_db < 0

    def test_infeasible_when_bob_quantizer_too_coarse(self, headline_params):
        # 1-bit legitimate receiver against a near-ideal eavesdropper
        point = dataclasses.replace(
            headline_params.with_eve_noise_var(0.0),
            bob_adc=AdcSpec(500e-15, explicit_bits=1.0),
            eve_adc=AdcSpec(1e-15), jamming_bits_per_symbol=1)
        thr = min_bob_snr_for_positive_rs(point)
        assert thr.kind is ThresholdKind.INFEASIBLE
        assert thr.snr_db is None
        assert bisect_threshold_db(point) is None

    def test_randomized_agreement_with_oracle(self, headline_params):
        import numpy as np
        rng = np.random.default_rng(1318)
        checked_threshold = checked_infeasible = 0
        for _ in range(25):
            point = dataclasses.replace(
                headline_params.with_eve_noise_var(0.0),
                jamming_bits_per_symbol=int(rng.integers(1, 21)),
                eve_adc=AdcSpec(float(rng.uniform(1e-15, 500e-15))))
            thr = min_bob_snr_for_positive_rs(point)
            oracle = bisect_threshold_db(point)
            if thr.kind is ThresholdKind.INFEASIBLE:
                assert oracle is None
                checked_infeasible += 1
            else:
                assert abs(thr.snr_db - oracle) < 0.01
                checked_threshold += 1
        assert checked_threshold > 0


class TestRateSweep:
    def test_single_cell_matches_point_evaluation(self, headline_params):
        grid = sweep_rate_vs_snr(headline_params, [32.0], [80.0])
        assert (grid.cells[0][0].rate_bits_per_s
                == secrecy_rate(headline_params).rate_bits_per_s)

    def test_rows_monotone_along_bob_axis(self, headline_params):
        grid = sweep_rate_vs_snr(headline_params, list(range(0, 61, 5)),
                                 [20.0, 50.0, 80.0])
        for j in range(len(grid.eve_snr_db)):
            rates = [grid.cells[i][j].rate_bits_per_s
                     for i in range(len(grid.bob_snr_db))]
            assert all(b > a for a, b in zip(rates, rates[1:]))

    def test_zero_crossing_contour_from_independent_sign_scan(self, headline_params):
        bob_axis = [float(v) for v in range(0, 61, 1)]
        eve_axis = [float(v) for v in range(20, 81, 5)]
        grid = sweep_rate_vs_snr(headline_params, bob_axis, eve_axis)
        # independent scan: first bob index with positive rate, per column
        first_positive = []
        for j in range(len(eve_axis)):
            rates = [grid.cells[i][j].rate_bits_per_s
                     for i in range(len(bob_axis))]
            idx = next((i for i, r in enumerate(rates) if r > 0), None)
            first_positive.append(idx)
            crossing = grid.zero_crossing_bob_snr_db[j]
            if idx is None:
                assert crossing is None
            elif idx == 0:
                assert crossing == bob_axis[0]
            else:
                assert bob_axis[idx - 1] < crossing <= bob_axis[idx]
        # contour monotone in the eavesdropper SNR
        indices = [i for i in first_positive if i is not None]
        assert all(b >= a for a, b in zip(indices, indices[1:]))

    def test_empty_axis_rejected(self, headline_params):
        with pytest.raises(ValidationError, match="non-empty"):
            sweep_rate_vs_snr(headline_params, [], [80.0])

    def test_non_monotone_axis_rejected(self, headline_params):
        with pytest.raises(ValidationError, match="strictly increasing"):
            sweep_rate_vs_snr(headline_params, [10.0, 10.0], [80.0])


class TestThresholdSweep:
    def test_cell_matches_point_evaluation(self, headline_params):
        grid = sweep_min_bob_snr(headline_params, [14], [5e-15])
        point = dataclasses.replace(headline_params.with_eve_noise_var(0.0),
                                    eve_adc=AdcSpec(5e-15))
        assert grid.cells[0][0] == min_bob_snr_for_positive_rs(point)

    def test_threshold_non_increasing_in_jamming_bits(self, headline_params):
        grid = sweep_min_bob_snr(headline_params, list(range(1, 21)),
                                 [2e-15, 20e-15, 200e-15])
        for j in range(len(grid.eve_jitter_s)):
            column = [grid.cells[i][j] for i in range(len(grid.jamming_bits))]
            # infeasible cells may only appear at the weak-jamming end
            kinds = [c.kind for c in column]
            first_feasible = next(
                (i for i, k in enumerate(kinds) if k is ThresholdKind.THRESHOLD),
                len(kinds))
            assert all(k is ThresholdKind.INFEASIBLE
                       for k in kinds[:first_feasible])
            values = [c.snr_db for c in column[first_feasible:]]
            assert all(b <= a for a, b in zip(values, values[1:]))

    def test_threshold_non_decreasing_as_jitter_shrinks(self, headline_params):
        grid = sweep_min_bob_snr(headline_params, [8, 14],
                                 [1e-15, 5e-15, 50e-15, 500e-15])
        for i in range(len(grid.jamming_bits)):
            row = [grid.cells[i][j] for j in range(len(grid.eve_jitter_s))]
            feasible = [c.snr_db for c in row if c.kind is ThresholdKind.THRESHOLD]
            # jitter axis ascends, so thresholds must descend
            assert all(b <= a for a, b in zip(feasible, feasible[1:]))

    def test_forces_noiseless_eve(self, headline_params):
        # template carries eavesdropper channel noise; the sweep must ignore it
        grid_noisy = sweep_min_bob_snr(headline_params, [14], [5e-15])
        grid_clean = sweep_min_bob_snr(headline_params.with_eve_noise_var(0.0),
                                       [14], [5e-15])
        assert grid_noisy.cells == grid_clean.cells
