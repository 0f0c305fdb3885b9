"""Single-photon pulse shaping: spectral amplitudes, cavity filtering,
intracavity frequency modulation and pulse-code encoding."""

from ._core import (
    CavityParams,
    CodeBook,
    CoherentState,
    ModulationParams,
    NumericalError,
    OracleConfig,
    SampledGrid,
    SinglePhotonState,
    SpectralAmplitude,
    TimeAmplitude,
    ValidationError,
    apply,
    count_rate,
    crosstalk_matrix,
    decode,
    encode,
    gaussian_amplitude,
    group_delay,
    inner_product,
    intensity_spectrum,
    make_timebin_codebook,
    mean_field,
    norm,
    normalize,
    oracle_simulate,
    orthonormalize,
    perturbative_spectrum_paper,
    perturbative_spectrum_two_sideband,
    pulse_stats,
    sideband_report,
    to_freq,
    to_time,
    transfer_function,
)

__all__ = [name for name in dir() if not name.startswith("_")]
