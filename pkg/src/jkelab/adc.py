"""Jitter-limited ADC model.

Covers the three closed forms that tie receiver hardware to the secrecy
analysis -- effective number of bits from aperture jitter, and the
quantization resolutions of the legitimate receiver and the eavesdropper --
plus the sample-level uniform quantizer the simulator runs on.

The eavesdropper cannot strip the jamming before conversion, so their ADC
must span signal + jamming: same step count, full scale widened by 2^w,
which is exactly a resolution loss of w bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels

TWO_PI_E = 2.0 * math.pi * math.e


def enob_from_jitter(bandwidth_hz: float, aperture_jitter_s: float) -> float:
    """Achievable amplitude resolution (effective bits) of an ADC whose
    sampling instant has the given rms uncertainty, at the given signal
    bandwidth. Fractional; callers that need integer bits round themselves.
    """
    if not bandwidth_hz > 0:
        raise ValueError("bandwidth must be positive")
    if not aperture_jitter_s > 0:
        raise ValueError("aperture jitter must be positive")
    return -(20.0 * math.log10(2.0 * math.pi * bandwidth_hz * aperture_jitter_s)
             + 1.76) / 6.02


def bob_resolution(signal_power: float, bits: float,
                   dynamic_range_factor: float) -> float:
    """Quantization step of the legitimate receiver: the dynamic range
    2*l*sqrt(P) split into 2^bits levels."""
    if not signal_power > 0:
        raise ValueError("signal power must be positive")
    if not dynamic_range_factor > 0:
        raise ValueError("dynamic range factor must be positive")
    return 2.0 * dynamic_range_factor * math.sqrt(signal_power) / 2.0 ** bits


def eve_resolution(signal_power: float, bits: float,
                   jamming_bits_per_symbol: int,
                   dynamic_range_factor: float) -> float:
    """Quantization step of the eavesdropper, who must span signal plus a
    w-bit jamming signal: effectively ``bits - w`` usable bits.

    ``bits - w <= 0`` is legal and yields a step at least as wide as the
    whole signal range -- devastating for the eavesdropper.
    """
    if not jamming_bits_per_symbol >= 0:
        raise ValueError("jamming bits per symbol must be non-negative")
    return bob_resolution(signal_power, bits - jamming_bits_per_symbol,
                          dynamic_range_factor)


@dataclass(frozen=True)
class QuantizerConfig:
    """A concrete uniform mid-rise quantizer: step, half-width of the
    spanned range, and the (possibly fractional) bit count tying them
    together as step = 2*full_scale / 2^bits."""

    step: float
    full_scale: float
    bits: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("quantizer step must be positive")
        if not self.full_scale > 0:
            raise ValueError("quantizer full scale must be positive")
        if not self.bits > 0:
            raise ValueError("quantizer bits must be positive")
        expected = 2.0 * self.full_scale / 2.0 ** self.bits
        if not math.isclose(self.step, expected, rel_tol=1e-9):
            raise ValueError("quantizer step inconsistent with full scale and bits")

    @classmethod
    def for_signal(cls, signal_power: float, bits: float,
                   dynamic_range_factor: float) -> "QuantizerConfig":
        """Legitimate-receiver quantizer: full scale l*sqrt(P)."""
        full_scale = dynamic_range_factor * math.sqrt(signal_power)
        return cls(step=2.0 * full_scale / 2.0 ** bits,
                   full_scale=full_scale, bits=bits)

    @classmethod
    def for_jammed_signal(cls, signal_power: float, bits: float,
                          jamming_bits_per_symbol: int,
                          dynamic_range_factor: float) -> "QuantizerConfig":
        """Eavesdropper quantizer: full scale widened by 2^w to span the
        jammed sum at the same step count."""
        full_scale = (dynamic_range_factor * math.sqrt(signal_power)
                      * 2.0 ** jamming_bits_per_symbol)
        return cls(step=2.0 * full_scale / 2.0 ** bits,
                   full_scale=full_scale, bits=bits)


def quantize(samples, config: QuantizerConfig) -> np.ndarray:
    """Uniform mid-rise quantization of ``samples`` with step ``config.step``
    over [-full_scale, +full_scale]; out-of-range inputs clip to the
    outermost reconstruction level. Empty input yields empty output.
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.size == 0:
        return np.empty(0, dtype=np.float64)
    return kernels.quantize_midrise(np.ravel(x), config.step, config.full_scale)
