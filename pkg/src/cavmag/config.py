"""Flat ``key = value`` configuration files and override handling.

Schema (every ``*_hz`` key is an ordinary frequency nu = omega/2pi in Hz):

    omega_a_hz      cavity frequency
    omega_m1_hz     first magnon frequency
    omega_m2_hz     second magnon frequency
    omega_s_hz      drive (squeezed-vacuum carrier) frequency
    kappa_a_hz      cavity amplitude decay rate
    kappa_m1_hz     first magnon amplitude decay rate
    kappa_m2_hz     second magnon amplitude decay rate
    g1_hz           photon-magnon coupling, mode 1
    g2_hz           photon-magnon coupling, mode 2
    r               drive squeezing parameter (dimensionless)
    theta_rad       drive squeezing phase in rad
    temperature_k   bath temperature in K

Blank lines and ``#`` comments are ignored.  Values merge with precedence
command-line ``--set`` > configuration file > built-in defaults.
"""

from __future__ import annotations

from .model import DriveParams, SystemParams, hz_to_internal

CONFIG_KEYS = (
    "omega_a_hz",
    "omega_m1_hz",
    "omega_m2_hz",
    "omega_s_hz",
    "kappa_a_hz",
    "kappa_m1_hz",
    "kappa_m2_hz",
    "g1_hz",
    "g2_hz",
    "r",
    "theta_rad",
    "temperature_k",
)

# Built-in defaults: the reference operating point of model.default_params()
# plus its headline drive (r = 2, theta = 0).
DEFAULTS = {
    "omega_a_hz": 10.0e9,
    "omega_m1_hz": 10.0e9,
    "omega_m2_hz": 10.0e9,
    "omega_s_hz": 10.0e9,
    "kappa_a_hz": 5.0e6,
    "kappa_m1_hz": 1.0e6,
    "kappa_m2_hz": 1.0e6,
    "g1_hz": 20.0e6,
    "g2_hz": 20.0e6,
    "r": 2.0,
    "theta_rad": 0.0,
    "temperature_k": 0.02,
}


def _parse_entry(key: str, raw: str, where: str) -> tuple[str, float]:
    key = key.strip()
    if key not in CONFIG_KEYS:
        raise ValueError(
            f"{where}: unknown key {key!r}; valid keys: {', '.join(CONFIG_KEYS)}"
        )
    try:
        value = float(raw.strip())
    except ValueError:
        raise ValueError(f"{where}: value for {key!r} is not a number: {raw.strip()!r}")
    return key, value


def parse_config_text(text: str, source: str = "config") -> dict[str, float]:
    """Parse configuration text into a key -> value dict."""
    values: dict[str, float] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = line.split("=", 1)
        key, value = _parse_entry(key, raw, f"{source}:{lineno}")
        values[key] = value
    return values


def load_config(path) -> dict[str, float]:
    """Read and parse a configuration file."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config_text(handle.read(), source=str(path))


def parse_overrides(assignments) -> dict[str, float]:
    """Parse ``key=value`` strings, e.g. from repeated --set options."""
    values: dict[str, float] = {}
    for item in assignments:
        if "=" not in item:
            raise ValueError(f"--set expects key=value, got {item!r}")
        key, raw = item.split("=", 1)
        key, value = _parse_entry(key, raw, "--set")
        values[key] = value
    return values


def merge(*layers: dict[str, float]) -> dict[str, float]:
    """Merge value dicts on top of the defaults; later layers win."""
    values = dict(DEFAULTS)
    for layer in layers:
        values.update(layer)
    return values


def system_params(values: dict[str, float]) -> SystemParams:
    """Build validated system parameters (internal units) from config values."""
    return SystemParams(
        omega_a=hz_to_internal(values["omega_a_hz"]),
        omega_m1=hz_to_internal(values["omega_m1_hz"]),
        omega_m2=hz_to_internal(values["omega_m2_hz"]),
        omega_s=hz_to_internal(values["omega_s_hz"]),
        kappa_a=hz_to_internal(values["kappa_a_hz"]),
        kappa_m1=hz_to_internal(values["kappa_m1_hz"]),
        kappa_m2=hz_to_internal(values["kappa_m2_hz"]),
        g1=hz_to_internal(values["g1_hz"]),
        g2=hz_to_internal(values["g2_hz"]),
    )


def drive_params(values: dict[str, float]) -> DriveParams:
    return DriveParams(r=values["r"], theta=values["theta_rad"])
