"""Run-configuration parsing and validation.

Configs are single JSON documents (TOML is accepted and converted).  Unknown
keys are rejected with the offending path; exact rationals are "num/den"
strings.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

COMMANDS = ("lfactor", "modfactor", "coset", "gauss", "fourier", "arch",
            "interp", "selftest")


class ConfigError(ValueError):
    pass


_SCHEMAS = {
    "lfactor": {
        "required": {"case": str, "m": int},
        "optional": {"r": int, "class": str, "conductor_exp": int, "n": int,
                     "satake": list, "chi": (str, int), "q": int, "s": (str, int),
                     "truncation": int},
    },
    "modfactor": {
        "required": {"case": str, "m": int},
        "optional": {"r": int},
    },
    "coset": {
        "required": {"case": str, "m": int, "p": int},
        "optional": {"c": int, "u_exponents": list, "verify": bool, "N": int,
                     "max_enum": int},
    },
    "gauss": {
        "required": {"p": int, "c": int, "order": int},
        "optional": {"m": int, "beta": list, "model": str, "d": int},
    },
    "fourier": {
        "required": {"case": str, "m": int, "l": int, "p": int, "beta": list},
        "optional": {"r": int, "n_level": int, "chi_order": int,
                     "chi_conductor_exp": int},
    },
    "arch": {
        "required": {"case": str, "l": int},
        "optional": {"beta": (str, int, float), "y": (str, int, float),
                     "s1": (str, int, float), "s2": (str, int, float),
                     "m": int, "r": int, "s": (str, int, float),
                     "t": int, "t_plus": int, "t_minus": int,
                     "operation": str},
    },
    "interp": {
        "required": {"case": str, "m": int, "l": int, "p": int},
        "optional": {"r": int, "conductor_exp": int, "chi_order": int,
                     "q_aux": int, "satake": list, "alpha": (str, int),
                     "operation": str, "c_max": int},
    },
    "selftest": {
        "required": {"suite": str},
        "optional": {"max_enum": int},
    },
}

_GLOBAL_OPTIONAL = {"command": str, "format": str, "workers": int,
                    "max_enum": int, "tolerance": float}


def load_config(path: str) -> dict:
    if path.endswith(".toml"):
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    with open(path) as fh:
        return json.load(fh)


def validate(config: dict) -> dict:
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    command = config.get("command")
    if command not in COMMANDS:
        raise ConfigError(f"command: expected one of {COMMANDS}, got {command!r}")
    schema = _SCHEMAS[command]
    allowed = dict(schema["required"])
    allowed.update(schema["optional"])
    allowed.update(_GLOBAL_OPTIONAL)
    for key in config:
        if key not in allowed:
            raise ConfigError(f"unknown key '{key}' for command {command}")
    for key, typ in schema["required"].items():
        if key not in config:
            raise ConfigError(f"missing required key '{key}' for command {command}")
        if not isinstance(config[key], typ):
            raise ConfigError(f"key '{key}': expected {typ}, got {type(config[key]).__name__}")
    for key, typ in schema["optional"].items():
        if key in config and not isinstance(config[key], typ):
            raise ConfigError(f"key '{key}': expected {typ}, got {type(config[key]).__name__}")
    return config


def as_fraction(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, (int, float)):
        return Fraction(value).limit_denominator(10 ** 12)
    raise ConfigError(f"cannot interpret {value!r} as an exact rational")
