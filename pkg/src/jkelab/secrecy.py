"""Secrecy-rate engine.

Analytical lower bound on the secrecy rate of the jammed wiretap channel,
the resulting key-exchange duration, a closed-form threshold for the
minimum legitimate-channel SNR with positive secrecy, and the sweep
drivers that map those quantities over parameter grids.

The two log terms are deliberately asymmetric: the legitimate receiver's
quantization noise enters as step^2/12 on both sides of its ratio, while
the eavesdropper's noise floor uses step^2/(2*pi*e); the bound is
implemented exactly as stated, not "corrected".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from . import adc
from .params import (AdcSpec, SnrPoint, SystemParams, ValidationError,
                     snr_to_noise_var)


class NoPositiveSecrecyError(ValueError):
    """Raised when an operation needs a positive secrecy rate and the
    operating point does not provide one."""


@dataclass(frozen=True)
class SecrecyReport:
    """Secrecy-rate lower bound at one operating point, with the per-term
    decomposition. ``rate_bits_per_s`` may be negative: the raw bound is
    meaningful for display, but rate-consuming operations must refuse it.
    """

    bandwidth_hz: float
    rate_bits_per_s: float
    bob_term_bits: float
    eve_term_bits: float
    delta_b: float
    delta_e: float

    @property
    def positive(self) -> bool:
        return self.rate_bits_per_s > 0

    def to_dict(self) -> dict:
        return {
            "bandwidth_hz": self.bandwidth_hz,
            "rate_bits_per_s": self.rate_bits_per_s,
            "bob_term_bits": self.bob_term_bits,
            "eve_term_bits": self.eve_term_bits,
            "delta_b": self.delta_b,
            "delta_e": self.delta_e,
            "positive": self.positive,
        }


@dataclass(frozen=True)
class JkeTiming:
    """How long the jamming key exchange takes to move ``key_bits`` secret
    bits at a given protocol efficiency."""

    key_bits: int
    efficiency: float
    duration_s: float

    def to_dict(self) -> dict:
        return {
            "key_bits": self.key_bits,
            "efficiency": self.efficiency,
            "duration_s": self.duration_s,
        }


def secrecy_rate(params: SystemParams) -> SecrecyReport:
    """Evaluate the secrecy-rate lower bound at ``params``.

    Zero bandwidth is tolerated as the degenerate zero-rate point (nothing
    is transmitted; all report fields are zero). Callers wanting strict
    invariants should run :func:`jkelab.params.validate` first.
    """
    if params.bandwidth_hz == 0:
        return SecrecyReport(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    p = params.signal_power
    l = params.dynamic_range_factor
    delta_b = adc.bob_resolution(p, params.bob_bits(), l)
    delta_e = adc.eve_resolution(p, params.eve_bits(),
                                 params.jamming_bits_per_symbol, l)

    bob_floor = params.bob_noise_var + delta_b ** 2 / 12.0
    if bob_floor == 0:
        raise ValidationError(
            "bob noise variance and quantization step cannot both be zero")
    eve_floor = params.eve_noise_var + delta_e ** 2 / adc.TWO_PI_E
    if eve_floor == 0:
        raise ValidationError(
            "eve noise variance and quantization step cannot both be zero")

    bob_term = math.log2((p + bob_floor) / bob_floor)
    eve_term = math.log2((p + params.eve_noise_var + delta_e ** 2 / 12.0)
                         / eve_floor)
    rate = params.bandwidth_hz * (bob_term - eve_term)
    return SecrecyReport(params.bandwidth_hz, rate, bob_term, eve_term,
                         delta_b, delta_e)


def jke_duration(report: SecrecyReport, key_bits: int = 256,
                 efficiency: float = 0.001) -> JkeTiming:
    """Duration of a key exchange for ``key_bits`` secret bits when the
    protocol extracts ``efficiency`` of the raw secrecy rate."""
    if not key_bits >= 1:
        raise ValidationError("key bits must be at least 1")
    if not 0 < efficiency <= 1:
        raise ValidationError("efficiency must be in (0, 1]")
    if report.rate_bits_per_s <= 0:
        raise NoPositiveSecrecyError(
            "no positive secrecy at this operating point")
    return JkeTiming(key_bits, efficiency,
                     key_bits / (efficiency * report.rate_bits_per_s))


class ThresholdKind(str, Enum):
    THRESHOLD = "threshold"
    ALWAYS_POSITIVE = "always_positive"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SnrThreshold:
    """Minimum legitimate-channel SNR with positive secrecy.

    ``ALWAYS_POSITIVE``: the eavesdropper side is worse than the legitimate
    side at any SNR (cannot occur for physical parameters, kept for
    robustness). ``INFEASIBLE``: the legitimate receiver's own quantizer is
    already too coarse, no channel SNR helps.
    """

    kind: ThresholdKind
    snr_db: float | None = None

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "snr_db": self.snr_db}


def min_bob_snr_for_positive_rs(params: SystemParams) -> SnrThreshold:
    """Closed-form threshold on the legitimate channel's SNR above which
    the secrecy rate is positive; ``params.bob_noise_var`` is ignored.

    With K the eavesdropper's signal-to-floor ratio, positive secrecy
    needs the legitimate total noise below P/(K-1); subtracting the fixed
    quantization share gives the admissible channel noise.
    """
    p = params.signal_power
    l = params.dynamic_range_factor
    delta_b = adc.bob_resolution(p, params.bob_bits(), l)
    delta_e = adc.eve_resolution(p, params.eve_bits(),
                                 params.jamming_bits_per_symbol, l)
    eve_floor = params.eve_noise_var + delta_e ** 2 / adc.TWO_PI_E
    if eve_floor == 0:
        raise ValidationError(
            "eve noise variance and quantization step cannot both be zero")
    big_k = (p + params.eve_noise_var + delta_e ** 2 / 12.0) / eve_floor
    if big_k <= 1:
        return SnrThreshold(ThresholdKind.ALWAYS_POSITIVE)
    noise_budget = p / (big_k - 1.0)
    quant_share = delta_b ** 2 / 12.0
    if quant_share >= noise_budget:
        return SnrThreshold(ThresholdKind.INFEASIBLE)
    return SnrThreshold(ThresholdKind.THRESHOLD,
                        10.0 * math.log10(p / (noise_budget - quant_share)))


def _check_axis(name: str, values) -> tuple:
    vals = tuple(float(v) for v in values)
    if not vals:
        raise ValidationError(f"{name} axis must be non-empty")
    if any(not math.isfinite(v) for v in vals):
        raise ValidationError(f"{name} axis values must be finite")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValidationError(f"{name} axis must be strictly increasing")
    return vals


@dataclass(frozen=True)
class RateSweepGrid:
    """Secrecy-rate reports over a (legitimate SNR x eavesdropper SNR)
    grid, plus the interpolated zero-rate crossing per eavesdropper-SNR
    column (None where the rate never turns positive on the axis)."""

    bob_snr_db: tuple
    eve_snr_db: tuple
    cells: tuple  # cells[i][j] -> SecrecyReport at (bob_snr_db[i], eve_snr_db[j])
    zero_crossing_bob_snr_db: tuple  # one entry per eve_snr_db column


@dataclass(frozen=True)
class ThresholdSweepGrid:
    """Minimum legitimate-SNR thresholds over a (jamming bits x
    eavesdropper jitter) grid, for a noiseless eavesdropper channel."""

    jamming_bits: tuple
    eve_jitter_s: tuple
    cells: tuple  # cells[i][j] -> SnrThreshold at (jamming_bits[i], eve_jitter_s[j])


def sweep_rate_vs_snr(template: SystemParams, bob_snr_db, eve_snr_db) -> RateSweepGrid:
    """Evaluate the secrecy rate over a rectangular SNR grid.

    Cells are independent pure computations with deterministic ordering
    (legitimate-SNR index outer, eavesdropper-SNR index inner).
    """
    bob_axis = _check_axis("bob SNR", bob_snr_db)
    eve_axis = _check_axis("eve SNR", eve_snr_db)
    p = template.signal_power
    rows = []
    for sb in bob_axis:
        row = []
        params_b = template.with_bob_noise_var(snr_to_noise_var(SnrPoint(sb), p))
        for se in eve_axis:
            row.append(secrecy_rate(
                params_b.with_eve_noise_var(snr_to_noise_var(SnrPoint(se), p))))
        rows.append(tuple(row))
    crossings = tuple(
        _zero_crossing(bob_axis, [rows[i][j].rate_bits_per_s
                                  for i in range(len(bob_axis))])
        for j in range(len(eve_axis)))
    return RateSweepGrid(bob_axis, eve_axis, tuple(rows), crossings)


def _zero_crossing(snr_values, rates):
    """SNR at which the rate column first turns positive, linearly
    interpolated between grid points; the rate is monotone in the
    legitimate SNR so the first positive cell brackets the only crossing."""
    for k, r in enumerate(rates):
        if r > 0:
            if k == 0:
                return snr_values[0]
            r_prev = rates[k - 1]
            return snr_values[k - 1] + (snr_values[k] - snr_values[k - 1]) * (
                -r_prev) / (r - r_prev)
    return None


def sweep_min_bob_snr(template: SystemParams, jamming_bits, eve_jitter_s) -> ThresholdSweepGrid:
    """Evaluate the positive-secrecy SNR threshold over a (jamming bits x
    eavesdropper jitter) grid with a noiseless eavesdropper channel."""
    w_axis = tuple(int(w) for w in jamming_bits)
    if not w_axis:
        raise ValidationError("jamming bits axis must be non-empty")
    if any(w < 0 for w in w_axis):
        raise ValidationError("jamming bits axis values must be non-negative")
    if any(b <= a for a, b in zip(w_axis, w_axis[1:])):
        raise ValidationError("jamming bits axis must be strictly increasing")
    jitter_axis = _check_axis("eve jitter", eve_jitter_s)
    if any(v <= 0 for v in jitter_axis):
        raise ValidationError("eve jitter axis values must be positive")

    base = template.with_eve_noise_var(0.0)
    rows = []
    for w in w_axis:
        row = []
        for jitter in jitter_axis:
            # Fresh AdcSpec: an explicit-bits override on the template's
            # eavesdropper ADC must not pin the whole jitter axis.
            point = replace(base, jamming_bits_per_symbol=w,
                            eve_adc=AdcSpec(aperture_jitter_s=jitter))
            row.append(min_bob_snr_for_positive_rs(point))
        rows.append(tuple(row))
    return ThresholdSweepGrid(w_axis, jitter_axis, tuple(rows))
