"""FBMC-OQAM PAPR companding simulator."""

from ._core import (
    BerPoint,
    ConfigError,
    PrototypeFilter,
    __version__,
    analyze,
    ber_run,
    ccdf_empirical,
    ccdf_theoretical,
    collect_paprs,
    compand,
    compand_frame,
    config_text,
    ebn0_to_snr_db,
    expand,
    generate_symbols,
    ofdm_modulate,
    papr_per_interval,
    psd_welch,
    run_experiment,
    synthesize,
)

__all__ = [
    "BerPoint",
    "ConfigError",
    "PrototypeFilter",
    "__version__",
    "analyze",
    "ber_run",
    "ccdf_empirical",
    "ccdf_theoretical",
    "collect_paprs",
    "compand",
    "compand_frame",
    "config_text",
    "ebn0_to_snr_db",
    "expand",
    "generate_symbols",
    "ofdm_modulate",
    "papr_per_interval",
    "psd_welch",
    "run_experiment",
    "synthesize",
]
