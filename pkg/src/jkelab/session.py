"""End-to-end Monte-Carlo simulation of one jamming key-exchange session.

Discrete-time real baseband at symbol rate: the long-term key is encoded
as 2-PAM symbols (with plain repetition across the block), the seeded
jamming is added, each channel gets independent Gaussian noise, the
legitimate receiver cancels the regenerated jamming down to a residual set
by its cancellation depth and quantizes at its own resolution, and the
eavesdropper quantizes the raw jammed signal at the widened dynamic range
and stores it.

The non-storage assumption is structural: the storage attack only ever
sees the quantized record, never the pre-quantization waveform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import adc
from .jamming import JammingStream, jamming_stream
from .params import KeyMaterial, SystemParams, validate

# Cancellation headroom (bits) demanded beyond the jamming resolution
# before the residual is considered harmless; at zero headroom the residual
# lands at roughly signal level.
WARN_MARGIN_BITS = 2.0

INSUFFICIENT_CANCELLATION = "insufficient_cancellation"


def cancellation_bits(depth_db: float) -> float:
    """Bits of interference resolution removable by ``depth_db`` of
    cancellation, at the standard 6 dB per bit."""
    if not depth_db >= 0:
        raise ValueError("cancellation depth must be non-negative")
    return depth_db / 6.0


@dataclass(frozen=True)
class CancellationModel:
    """Combined analog + digital cancellation depth of the legitimate
    receiver. Known-jamming removal leaves a residual attenuated by
    ``depth_db``; ``math.inf`` models ideal cancellation."""

    depth_db: float

    def __post_init__(self):
        if not self.depth_db >= 0:
            raise ValueError("cancellation depth must be non-negative")

    @property
    def residual_bits(self) -> float:
        return cancellation_bits(self.depth_db) if math.isfinite(self.depth_db) else math.inf

    @property
    def residual_amplitude_factor(self) -> float:
        """Amplitude scaling of the surviving jamming (power factor is
        its square, 10^(-depth/10))."""
        if math.isinf(self.depth_db):
            return 0.0
        return 10.0 ** (-self.depth_db / 20.0)


@dataclass(frozen=True, eq=False)
class SimTrace:
    """Per-sample record of one session plus derived statistics.

    All sequences share one length and satisfy, exactly:
    ``bob_rx = clean_signal + jamming + bob_noise`` and
    ``eve_rx = clean_signal + jamming + eve_noise``.
    ``eve_post`` is the stored record minus the true jamming (the
    best-case storage attack); ``stats`` is recomputable from the
    sequences bit-for-bit.
    """

    params: SystemParams
    cancel: CancellationModel
    key: KeyMaterial
    jamming_seed: KeyMaterial
    jam_scale: float
    clean_signal: np.ndarray
    jamming: np.ndarray
    bob_noise: np.ndarray
    eve_noise: np.ndarray
    bob_rx: np.ndarray
    eve_rx: np.ndarray
    bob_post: np.ndarray
    eve_stored: np.ndarray
    eve_post: np.ndarray
    stats: dict
    warnings: tuple

    def __len__(self) -> int:
        return len(self.clean_signal)


def default_jam_scale(params: SystemParams) -> float:
    """Jamming amplitude such that signal + jamming exactly fills the
    eavesdropper's widened full scale l*sqrt(P)*2^w (no clipping for
    l >= 1): the outermost jamming level sits one signal range short of
    the edge."""
    l = params.dynamic_range_factor
    p = params.signal_power
    return l * math.sqrt(p) * (2.0 ** params.jamming_bits_per_symbol - 1.0)


def _encode_key(key: KeyMaterial, n_symbols: int, signal_power: float) -> np.ndarray:
    """2-PAM with interleaved repetition: symbol j carries key bit
    j mod n_bits at amplitude +-sqrt(P)."""
    bits = key.bit_array()
    idx = np.arange(n_symbols) % key.n_bits
    return (2.0 * bits[idx] - 1.0) * math.sqrt(signal_power)


def _decode_key(key: KeyMaterial, bob_post: np.ndarray) -> tuple:
    """Majority vote per key bit over its repetition positions; returns
    (bit error count, bits covered by at least one symbol)."""
    n = len(bob_post)
    n_bits = key.n_bits
    idx = np.arange(n) % n_bits
    votes = np.zeros(n_bits)
    np.add.at(votes, idx, np.sign(bob_post))
    covered = np.zeros(n_bits, dtype=bool)
    covered[np.unique(idx)] = True
    decided = votes > 0
    errors = int(np.sum(decided[covered] != (key.bit_array() == 1)[covered]))
    return errors, int(covered.sum())


def run_jke_session(params: SystemParams, cancel: CancellationModel,
                    key: KeyMaterial, n_symbols: int, rng_seed: int,
                    jamming_seed: KeyMaterial | None = None,
                    jam_scale: float | None = None) -> SimTrace:
    """Simulate one session; bit-identical for identical arguments.

    ``key`` is the long-term secret carried by the transmission;
    ``jamming_seed`` is the phase-1 shared secret seeding the jamming
    stream (derived from ``rng_seed`` when omitted).
    """
    validate(params)
    if not n_symbols >= 1:
        raise ValueError("symbol count must be at least 1")

    p = params.signal_power
    w = params.jamming_bits_per_symbol
    rng = np.random.default_rng(rng_seed)

    if jamming_seed is None:
        jamming_seed = KeyMaterial(rng.bytes(32))
    if jam_scale is None:
        jam_scale = default_jam_scale(params)

    warnings = []
    if w > 0 and cancel.residual_bits < w + WARN_MARGIN_BITS:
        warnings.append(
            f"{INSUFFICIENT_CANCELLATION}: Bob cannot cancel a {w}-bit jammer "
            f"with {cancel.depth_db:g} dB depth "
            f"({cancel.residual_bits:.2f} bits < w + {WARN_MARGIN_BITS:g})")

    clean = _encode_key(key, n_symbols, p)
    if w > 0:
        stream = jamming_stream(jamming_seed, w, n_symbols, jam_scale)
        jam = np.asarray(stream.symbols)
    else:
        jam = np.zeros(n_symbols)
    bob_noise = rng.normal(0.0, math.sqrt(params.bob_noise_var), n_symbols)
    eve_noise = rng.normal(0.0, math.sqrt(params.eve_noise_var), n_symbols)

    bob_rx = clean + jam + bob_noise
    eve_rx = clean + jam + eve_noise

    # Analog-domain cancellation happens before the ADC, so the quantizer
    # only spans the useful signal plus whatever residual survives.
    residual_gain = 1.0 - cancel.residual_amplitude_factor
    bob_pre = bob_rx - residual_gain * jam
    bob_q = adc.QuantizerConfig.for_signal(p, params.bob_bits(),
                                           params.dynamic_range_factor)
    bob_post = adc.quantize(bob_pre, bob_q)

    eve_q = adc.QuantizerConfig.for_jammed_signal(
        p, params.eve_bits(), w, params.dynamic_range_factor)
    eve_stored = adc.quantize(eve_rx, eve_q)
    eve_post = eve_stored - jam

    bit_errors, bits_covered = _decode_key(key, bob_post)
    symbol_errors = int(np.sum(np.sign(bob_post) != np.sign(clean)))
    stats = {
        "n_symbols": int(n_symbols),
        "signal_power_emp": float(np.mean(clean ** 2)),
        "jamming_power_emp": float(np.var(jam)),
        "residual_jamming_power": float(
            np.var(cancel.residual_amplitude_factor * jam)),
        "bob_noise_var_emp": float(np.var(bob_noise)),
        "eve_noise_var_emp": float(np.var(eve_noise)),
        "delta_b": bob_q.step,
        "delta_e": eve_q.step,
        "bob_symbol_errors": symbol_errors,
        "bob_symbol_error_rate": symbol_errors / n_symbols,
        "bob_key_bit_errors": bit_errors,
        "bob_key_bits_covered": bits_covered,
        "bob_effective_snr": _effective_snr(clean, bob_post),
        "eve_pre_attack_snr": _effective_snr(clean, eve_rx),
        "eve_post_attack_snr": _effective_snr(clean, eve_post),
        "eve_residual_var": float(np.var(eve_post - clean - eve_noise)),
        "insufficient_cancellation": bool(warnings),
    }

    return SimTrace(params=params, cancel=cancel, key=key,
                    jamming_seed=jamming_seed, jam_scale=jam_scale,
                    clean_signal=clean, jamming=jam,
                    bob_noise=bob_noise, eve_noise=eve_noise,
                    bob_rx=bob_rx, eve_rx=eve_rx, bob_post=bob_post,
                    eve_stored=eve_stored, eve_post=eve_post,
                    stats=stats, warnings=tuple(warnings))


def _effective_snr(clean: np.ndarray, observed: np.ndarray) -> float:
    err_var = float(np.var(observed - clean))
    if err_var == 0.0:
        return math.inf
    return float(np.mean(clean ** 2)) / err_var


def true_jamming_stream(trace: SimTrace) -> JammingStream:
    """Regenerate the session's own jamming stream (what the eavesdropper
    holds once the phase-1 secret finally falls)."""
    w = trace.params.jamming_bits_per_symbol
    if w == 0:
        raise ValueError("session ran without jamming")
    return jamming_stream(trace.jamming_seed, w, len(trace), trace.jam_scale)


@dataclass(frozen=True)
class EveAttackReport:
    """Outcome of the quantize-store-then-cancel attack: what is left
    between the cleaned-up record and the signal the eavesdropper wanted."""

    n_symbols: int
    residual_var: float
    pre_attack_snr: float
    post_attack_snr: float

    def to_dict(self) -> dict:
        return {
            "n_symbols": self.n_symbols,
            "residual_var": self.residual_var,
            "pre_attack_snr": self.pre_attack_snr,
            "post_attack_snr": self.post_attack_snr,
        }


def eve_storage_attack(trace: SimTrace, jamming: JammingStream) -> EveAttackReport:
    """Subtract ``jamming`` from the eavesdropper's stored record.

    With the true stream this is the best possible store-now-decrypt-later
    outcome: everything left beyond channel noise is quantization loss,
    baked in at reception time. A wrong-seed stream only adds power.
    """
    if len(jamming.symbols) != len(trace.eve_stored):
        raise ValueError("jamming stream length does not match the trace")
    z_prime = trace.eve_stored - jamming.symbols
    residual = z_prime - trace.clean_signal - trace.eve_noise
    return EveAttackReport(
        n_symbols=len(trace),
        residual_var=float(np.var(residual)),
        pre_attack_snr=_effective_snr(trace.clean_signal, trace.eve_rx),
        post_attack_snr=_effective_snr(trace.clean_signal, z_prime),
    )
