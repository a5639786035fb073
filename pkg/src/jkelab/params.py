"""Shared domain types: operating points, ADC specs, SNR points, key material.

Everything here is an immutable value object; validation and unit
conversion only, no physics. All units are SI (Hz, seconds) except SNRs,
which are carried in dB.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

import numpy as np

from . import adc


class ValidationError(ValueError):
    """An operating-point invariant is violated; message names the invariant."""


@dataclass(frozen=True)
class AdcSpec:
    """One receiver's ADC: rms aperture jitter, with an optional explicit
    amplitude-resolution override.

    When ``explicit_bits`` is unset, the effective number of bits is derived
    from the jitter at the system bandwidth (fractional, no rounding).
    """

    aperture_jitter_s: float
    explicit_bits: float | None = None

    def __post_init__(self):
        if not self.aperture_jitter_s > 0:
            raise ValidationError("aperture jitter must be positive")
        if self.explicit_bits is not None and not self.explicit_bits > 0:
            raise ValidationError("explicit bit resolution must be positive")

    def effective_bits(self, bandwidth_hz: float) -> float:
        if self.explicit_bits is not None:
            return self.explicit_bits
        return adc.enob_from_jitter(bandwidth_hz, self.aperture_jitter_s)


@dataclass(frozen=True)
class SnrPoint:
    """A channel SNR in dB. ``snr_db=None`` is the distinguished infinite
    SNR (noiseless channel); it is a real state, not a sentinel float, so
    noiseless-channel semantics never touch inf/NaN arithmetic.
    """

    snr_db: float | None

    def __post_init__(self):
        if self.snr_db is not None and not math.isfinite(self.snr_db):
            raise ValidationError(
                "finite SNR required; use SnrPoint.infinite() for a noiseless channel")

    @classmethod
    def infinite(cls) -> "SnrPoint":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.snr_db is None


def snr_to_noise_var(snr: SnrPoint, signal_power: float) -> float:
    """Noise variance realizing ``snr`` at the given signal power (0 when
    the SNR is infinite)."""
    if not signal_power > 0:
        raise ValidationError("signal power must be positive")
    if snr.is_infinite:
        return 0.0
    return signal_power / 10.0 ** (snr.snr_db / 10.0)


def noise_var_to_snr(noise_var: float, signal_power: float) -> SnrPoint:
    """Inverse of :func:`snr_to_noise_var`; zero variance maps to the
    infinite point."""
    if not signal_power > 0:
        raise ValidationError("signal power must be positive")
    if noise_var < 0:
        raise ValidationError("noise variance must be non-negative")
    if noise_var == 0:
        return SnrPoint.infinite()
    return SnrPoint(10.0 * math.log10(signal_power / noise_var))


@dataclass(frozen=True)
class KeyMaterial:
    """A fixed-length key as a packed big-endian bit string (8 bits/byte).

    Used both for the initial shared secret that seeds the jamming stream
    and for the long-term key carried by the masked transmission.
    """

    bits: bytes

    MIN_BITS = 128
    DEFAULT_BITS = 256

    def __post_init__(self):
        if len(self.bits) * 8 < self.MIN_BITS:
            raise ValidationError(
                f"key must be at least {self.MIN_BITS} bits long")

    @property
    def n_bits(self) -> int:
        return len(self.bits) * 8

    @classmethod
    def random(cls, n_bits: int = DEFAULT_BITS, seed: int | None = None) -> "KeyMaterial":
        """Deterministic when seeded; tests always seed."""
        if n_bits % 8 != 0:
            raise ValidationError("key length must be a whole number of bytes")
        rng = random.Random(seed)
        return cls(rng.randbytes(n_bits // 8))

    def bit_array(self) -> np.ndarray:
        """Bits as a uint8 0/1 array, most significant bit first."""
        return np.unpackbits(np.frombuffer(self.bits, dtype=np.uint8))

    def with_flipped_bit(self, index: int) -> "KeyMaterial":
        """Copy with bit ``index`` (MSB-first order) inverted; Hamming
        distance 1 from self."""
        if not 0 <= index < self.n_bits:
            raise IndexError("bit index out of range")
        buf = bytearray(self.bits)
        buf[index // 8] ^= 0x80 >> (index % 8)
        return KeyMaterial(bytes(buf))

    def to_int(self) -> int:
        return int.from_bytes(self.bits, "big")

    @classmethod
    def from_int(cls, value: int, n_bits: int) -> "KeyMaterial":
        return cls(value.to_bytes(n_bits // 8, "big"))


@dataclass(frozen=True)
class SystemParams:
    """Full operating point of the jamming key exchange.

    ``signal_power`` is a normalized unit (1.0 by default); all SNRs and
    quantizer resolutions are relative to it. ``eve_noise_var = 0`` models
    a noiseless eavesdropper channel. The jamming resolution is allowed to
    exceed Eve's effective bits (a legal, Eve-hostile configuration).
    """

    bandwidth_hz: float
    jamming_bits_per_symbol: int
    bob_adc: AdcSpec
    eve_adc: AdcSpec
    bob_noise_var: float
    eve_noise_var: float
    signal_power: float = 1.0
    dynamic_range_factor: float = 2.5

    def bob_bits(self) -> float:
        return self.bob_adc.effective_bits(self.bandwidth_hz)

    def eve_bits(self) -> float:
        return self.eve_adc.effective_bits(self.bandwidth_hz)

    def with_bob_noise_var(self, noise_var: float) -> "SystemParams":
        return replace(self, bob_noise_var=noise_var)

    def with_eve_noise_var(self, noise_var: float) -> "SystemParams":
        return replace(self, eve_noise_var=noise_var)


def validate(params: SystemParams) -> SystemParams:
    """Check every operating-point invariant; raise on the first violation,
    naming it. Idempotent: returns ``params`` unchanged on success."""
    if not params.bandwidth_hz > 0:
        raise ValidationError("bandwidth must be positive")
    if not params.signal_power > 0:
        raise ValidationError("signal power must be positive")
    if not params.dynamic_range_factor > 0:
        raise ValidationError("dynamic range factor must be positive")
    w = params.jamming_bits_per_symbol
    if not (isinstance(w, (int, np.integer)) and w >= 0):
        raise ValidationError("jamming bits per symbol must be a non-negative integer")
    if not params.bob_noise_var >= 0:
        raise ValidationError("bob channel noise variance must be non-negative")
    if not params.eve_noise_var >= 0:
        raise ValidationError("eve channel noise variance must be non-negative")
    # AdcSpec enforces its own invariants at construction; re-check cheaply
    # in case instances were built through other paths.
    for spec in (params.bob_adc, params.eve_adc):
        if not spec.aperture_jitter_s > 0:
            raise ValidationError("aperture jitter must be positive")
    return params
