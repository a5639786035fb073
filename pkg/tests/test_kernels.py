"""Backend parity: the compiled kernels must be bit-identical twins of the
NumPy reference implementations."""

import numpy as np
import pytest

from jkelab.kernels import backend, quantize_midrise, reference, unpack_symbols

_fast = pytest.importorskip("jkelab.kernels._fast",
                            reason="compiled kernels not built")


def random_cases(seed=0):
    rng = np.random.default_rng(seed)
    yield rng.normal(0, 1, 10000), 0.0125, 2.5
    yield rng.normal(0, 2000, 10000), 0.1258984, 2.5 * 2 ** 14
    yield rng.uniform(-10, 10, 10000), 3.7, 2.5       # heavy clipping
    yield np.array([0.0, -0.0, 1e-300, -1e-300]), 0.5, 1.0
    yield rng.normal(0, 1, 1), 5.0 / 2 ** 12.667076863713966, 2.5


class TestQuantizeParity:
    @pytest.mark.parametrize("case", list(enumerate(random_cases())),
                             ids=lambda c: f"case{c[0]}")
    def test_bit_identical(self, case):
        _, (x, step, full_scale) = case
        a = reference.quantize_midrise(x, step, full_scale)
        b = _fast.quantize_midrise(x, step, full_scale)
        assert a.dtype == b.dtype == np.float64
        assert np.array_equal(a, b)

    def test_clipping_parity_at_exact_edges(self):
        step, fs = 0.25, 1.0
        x = np.array([-fs, -fs + step / 2, fs - step / 2, fs, fs * 8, -fs * 8])
        assert np.array_equal(reference.quantize_midrise(x, step, fs),
                              _fast.quantize_midrise(x, step, fs))

    def test_selected_backend_matches_reference(self):
        rng = np.random.default_rng(3)
        x = rng.normal(0, 1, 5000)
        assert np.array_equal(quantize_midrise(x, 0.01, 2.5),
                              reference.quantize_midrise(x, 0.01, 2.5))


class TestUnpackParity:
    @pytest.mark.parametrize("w", [1, 2, 7, 8, 13, 14, 31, 32])
    def test_bit_identical(self, w):
        rng = np.random.default_rng(w)
        n = 997
        raw = rng.bytes((n * w + 7) // 8)
        a = reference.unpack_symbols(raw, n, w)
        b = _fast.unpack_symbols(raw, n, w)
        assert a.dtype == b.dtype == np.int64
        assert np.array_equal(a, b)

    def test_against_int_slicing_oracle(self):
        # independent oracle: big-endian bit slicing through Python ints
        rng = np.random.default_rng(17)
        n, w = 50, 11
        raw = rng.bytes((n * w + 7) // 8)
        stream = int.from_bytes(raw, "big")
        total_bits = len(raw) * 8
        expected = [(stream >> (total_bits - (i + 1) * w)) & ((1 << w) - 1)
                    for i in range(n)]
        assert list(unpack_symbols(raw, n, w)) == expected

    def test_short_buffer_rejected_by_both(self):
        with pytest.raises(ValueError):
            reference.unpack_symbols(b"\x00", 3, 8)
        with pytest.raises(ValueError):
            _fast.unpack_symbols(b"\x00", 3, 8)


def test_backend_selection():
    import os
    import subprocess
    import sys

    if os.environ.get("JKELAB_PURE_PYTHON") == "1":
        assert backend() == "python"
    else:
        # the extension imported above, so this process must have selected it
        assert backend() == "compiled"
    # a fresh interpreter with the override must fall back to the reference
    out = subprocess.run(
        [sys.executable, "-c",
         "from jkelab.kernels import backend; print(backend())"],
        env={**os.environ, "JKELAB_PURE_PYTHON": "1"},
        capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_simulation_outputs_identical_across_backends(tmp_path):
    """Backend choice must never leak into results: a simulate run under
    the pure-Python fallback produces byte-identical artifacts."""
    import json
    import os
    import subprocess
    import sys

    config = tmp_path / "config.json"
    config.write_text(json.dumps({
        "system": {
            "bandwidth_hz": 40e6, "jamming_bits_per_symbol": 14,
            "bob_adc": {"aperture_jitter_s": 500e-15},
            "eve_adc": {"aperture_jitter_s": 5e-15},
            "bob_channel": {"snr_db": 32.0},
            "eve_channel": {"snr_db": 80.0},
        },
        "simulate": {"n_symbols": 3000, "seed": 17,
                     "cancellation_db": 96.0,
                     "kem": {"mode": "toy-rsa", "bit_length": 64}},
    }), encoding="utf-8")

    outputs = {}
    for label, env_extra in (("compiled", {}), ("python",
                                                {"JKELAB_PURE_PYTHON": "1"})):
        out = tmp_path / label
        subprocess.run(
            [sys.executable, "-m", "jkelab.cli", "simulate",
             "--config", str(config), "--out", str(out)],
            env={**os.environ, **env_extra}, check=True,
            capture_output=True)
        outputs[label] = ((out / "stats.json").read_bytes(),
                          (out / "trace.csv").read_bytes())
    assert outputs["compiled"] == outputs["python"]
