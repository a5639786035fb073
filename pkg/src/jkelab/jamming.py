"""Seeded pseudo-random jamming generation.

Symbols are w-bit words drawn from a SHAKE-256 extendable-output stream
keyed by the shared initial secret, mapped onto 2^w uniform amplitude
levels. Regeneration from the same (seed, w, length) is bit-identical,
which is exactly what lets the legitimate receiver cancel the jamming and
denies the eavesdropper anything from a near-miss seed: one flipped seed
bit decorrelates the whole stream.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from . import kernels
from .params import KeyMaterial

MAX_BITS_PER_SYMBOL = 32

_DOMAIN = b"jkelab-jamming-v1"


@dataclass(frozen=True, eq=False)
class JammingStream:
    """A fully materialized jamming signal plus everything needed to
    regenerate it."""

    seed: KeyMaterial
    bits_per_symbol: int
    jam_scale: float
    symbols: np.ndarray  # float64 levels in [-jam_scale, +jam_scale]

    def __len__(self) -> int:
        return len(self.symbols)


def jamming_stream(seed: KeyMaterial, bits_per_symbol: int, n_symbols: int,
                   jam_scale: float) -> JammingStream:
    """Generate ``n_symbols`` jamming symbols of ``bits_per_symbol`` bits
    each, uniform over 2^w levels spanning [-jam_scale, +jam_scale]."""
    w = bits_per_symbol
    if not 1 <= w:
        raise ValueError("bits per symbol must be at least 1")
    if w > MAX_BITS_PER_SYMBOL:
        raise ValueError(
            f"unsupported jamming resolution: w > {MAX_BITS_PER_SYMBOL}")
    if not n_symbols >= 1:
        raise ValueError("symbol count must be at least 1")
    if not jam_scale > 0:
        raise ValueError("jamming scale must be positive")

    xof = hashlib.shake_256(_DOMAIN + bytes([w]) + seed.bits)
    raw = xof.digest((n_symbols * w + 7) // 8)
    words = kernels.unpack_symbols(raw, n_symbols, w)
    top = float(2 ** w - 1)
    symbols = (2.0 * words - top) / top * jam_scale
    symbols.setflags(write=False)
    return JammingStream(seed=seed, bits_per_symbol=w, jam_scale=jam_scale,
                         symbols=symbols)
