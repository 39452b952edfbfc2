"""Position error bounds for RIS-aided mmWave localization."""

from ._core import (
    Config,
    ConfigError,
    DegeneratePosition,
    Mode,
    d_min,
    delay_resolution,
    fim,
    load_config,
    parse_config,
    peb_map,
    point,
    select,
    unambiguous_range,
    validate,
)

__all__ = [
    "Config",
    "ConfigError",
    "DegeneratePosition",
    "Mode",
    "d_min",
    "delay_resolution",
    "fim",
    "load_config",
    "parse_config",
    "peb_map",
    "point",
    "select",
    "unambiguous_range",
    "validate",
]
