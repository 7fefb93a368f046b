"""Plain-text `key = value` configuration files.

One assignment per line, `#` starts a comment.  Values are SI numbers with
an optional unit suffix (see UNIT_SUFFIXES); strings without a numeric
reading are kept verbatim (mode names and the like).  Example::

    # ring
    radius     = 1 um
    wall_width = 4 nm
    t_c        = 1.2 K
    r_b        = 0.01 ohm
"""

from __future__ import annotations

from .errors import ConfigError

UNIT_SUFFIXES = {
    # length
    "m": 1.0, "mm": 1e-3, "um": 1e-6, "nm": 1e-9,
    # time
    "s": 1.0, "ms": 1e-3, "us": 1e-6, "ns": 1e-9,
    # current
    "A": 1.0, "mA": 1e-3, "uA": 1e-6, "nA": 1e-9,
    # temperature
    "K": 1.0, "mK": 1e-3,
    # inductance
    "H": 1.0, "nH": 1e-9, "pH": 1e-12,
    # resistance
    "ohm": 1.0, "mohm": 1e-3,
    # flux, field, voltage
    "Wb": 1.0, "T": 1.0, "V": 1.0, "uV": 1e-6, "nV": 1e-9,
    # rate
    "Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9,
}


def parse_value(text: str):
    """Parse a value token: number, number with unit suffix, or raw string."""
    token = text.strip()
    parts = token.split()
    if len(parts) == 2 and parts[1] in UNIT_SUFFIXES:
        try:
            return float(parts[0]) * UNIT_SUFFIXES[parts[1]]
        except ValueError:
            raise ConfigError(f"malformed number in value {token!r}") from None
    try:
        return float(token)
    except ValueError:
        return token


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse `key = value` lines into a dict, preserving file order."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        values[key] = parse_value(value)
    return values


def read_config(path) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config_text(handle.read(), source=str(path))
