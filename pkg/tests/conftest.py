import pytest

from jkelab import AdcSpec, SystemParams

# Headline operating point used throughout: 40 MHz bandwidth, 14-bit
# jamming symbols, 500 fs / 5 fs receiver jitters, 32 dB / 80 dB SNRs.
HEADLINE_POINT = dict(
    bandwidth_hz=40e6,
    jamming_bits_per_symbol=14,
    bob_adc=AdcSpec(aperture_jitter_s=500e-15),
    eve_adc=AdcSpec(aperture_jitter_s=5e-15),
    bob_noise_var=10 ** -3.2,   # 32 dB at unit signal power
    eve_noise_var=1e-8,         # 80 dB
    signal_power=1.0,
    dynamic_range_factor=2.5,
)


@pytest.fixture
def headline_params() -> SystemParams:
    return SystemParams(**HEADLINE_POINT)
