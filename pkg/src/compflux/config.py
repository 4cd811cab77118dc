"""Plain `key = value [unit]` run configuration.

Values are normalized to SI. Every subcommand has a fixed key schema; unknown
keys, missing required keys, unknown units and out-of-range values are
rejected with the key named.
"""
from dataclasses import dataclass, field
import math

from .errors import ParseError, RangeError, UnitError
from .units import CONST

SUBCOMMANDS = ("rfsquid", "rg-flow", "ed", "coupling", "txline", "noise", "eeem", "design", "sweep")

# dimension -> {unit: SI factor}; the first unit listed is the display unit.
UNITS = {
    "inductance": {"pH": 1e-12, "nH": 1e-9, "uH": 1e-6, "mH": 1e-3, "H": 1.0},
    "capacitance": {"fF": 1e-15, "pF": 1e-12, "nF": 1e-9, "uF": 1e-6, "F": 1.0},
    "energy": {"ueV": 1e-6 * CONST.e_charge, "peV": 1e-12 * CONST.e_charge,
               "neV": 1e-9 * CONST.e_charge, "meV": 1e-3 * CONST.e_charge,
               "eV": CONST.e_charge, "J": 1.0},
    "flux": {"phi0": CONST.phi0, "Wb": 1.0},
    "frequency": {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9},
    "temperature": {"mK": 1e-3, "K": 1.0},
    "length": {"mm": 1e-3, "um": 1e-6, "cm": 1e-2, "m": 1.0},
    "area": {"m2": 1.0, "mm2": 1e-6, "um2": 1e-12},
    "angle": {"rad": 1.0},
    "field_density": {"fT/rtHz": 1e-15, "T/rtHz": 1.0},
}


@dataclass(frozen=True)
class Key:
    dim: str  # a UNITS dimension, or "number", "int", "str", "bool"
    default: object = None  # None means required
    check: str = ""  # "pos", "nonneg", "unit" (0, 1], ">1"
    is_list: bool = False
    choices: tuple = ()


_REQ = None
_DEVICE = {
    "L": Key("inductance", _REQ, "pos"),
    "C": Key("capacitance", _REQ, "pos"),
    "beta": Key("number", _REQ, ">1"),
    "phi_err": Key("flux", 0.0),
    "grid_step": Key("number", math.pi / 100, "pos"),
    "theta_max": Key("number", 2 * math.pi, "pos"),
}
_NOISE = {
    "phi_n": Key("flux", 1e-5 * CONST.phi0, "nonneg"),
    "exact_factors": Key("bool", False),
    "f_L": Key("frequency", 0.1, "pos"),
    "f_H": Key("frequency", 10e9, "pos"),
    "coeff": Key("field_density", 0.09e-15, "nonneg"),
    "area": Key("area", 1e-7, "pos"),
    "T": Key("temperature", 0.1, "nonneg"),
    "L_EM": Key("inductance", 100e-9, "pos"),
    "mrt_level": Key("flux", 1e-4 * CONST.phi0, "nonneg"),
    "thermal_attenuation": Key("number", 1.0, "nonneg"),
    "magnetometer_attenuation": Key("number", 1.0, "nonneg"),
    "coupler_attenuation": Key("number", 1.0, "nonneg"),
}

SCHEMAS = {
    "rfsquid": {**_DEVICE, "n_levels": Key("int", 2, "pos")},
    "rg-flow": {
        "J": Key("number", 1.0, "pos"),
        "h": Key("number", _REQ, "nonneg"),
        "eps": Key("number", 0.0, "nonneg"),
        "steps": Key("int", 2, "nonneg"),
    },
    "ed": {
        "n_spins": Key("int", _REQ, "pos"),
        "J": Key("number", 1.0, "pos"),
        "h": Key("number", _REQ, "nonneg"),
        "eps": Key("number", 0.0, "nonneg"),
    },
    "coupling": {
        "L": Key("inductance", _REQ, "pos"),
        "N": Key("int", _REQ, "pos"),
        "delta": Key("energy", _REQ, "pos"),
        "R_target": Key("number", None, "pos"),
        "M": Key("inductance", None, "pos"),
        "E_err": Key("energy", 0.0, "nonneg"),
    },
    "txline": {
        "a": Key("length", _REQ, "pos"),
        "C_J": Key("capacitance", 0.0, "nonneg"),
        "substrate": Key("str", "silicon", choices=("silicon", "etched")),
        "preset": Key("str", "coax", choices=("coax", "open_loop")),
        "d": Key("length", 10e-6, "pos"),
    },
    "noise": {**_NOISE, "required_phi_err": Key("flux", _REQ, "pos")},
    "eeem": {
        "P": Key("number", _REQ, "unit"),
        "s": Key("angle", 0.0),
        "outcomes": Key("str", "s", is_list=True, choices=("s", "a")),
    },
    "design": {
        **_DEVICE,
        "N": Key("int", _REQ, "pos"),
        "R_target": Key("number", None, "pos"),
        "M": Key("inductance", None, "pos"),
        "margin": Key("number", 10.0, "pos"),
        "preset": Key("str", "coax", choices=("coax", "open_loop")),
        **_NOISE,
    },
}
SCHEMAS["sweep"] = {
    **{k: v for k, v in SCHEMAS["design"].items() if k != "M"},
    "C": Key("capacitance", _REQ, "pos", is_list=True),
    "R_target": Key("number", _REQ, "pos", is_list=True),
}
# keys that may be omitted without a default (either-or choices)
OPTIONAL = {"R_target", "M"}


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    units: dict = field(default_factory=dict)  # key -> unit as written
    defaults_used: tuple = ()
    seed: int = 0


def _split_value(rest):
    """'800 pH' -> ('800', 'pH'); '10, 30 fF' -> ('10, 30', 'fF')."""
    tokens = rest.split()
    if len(tokens) >= 2 and not _looks_numeric(tokens[-1].rstrip(",")):
        return " ".join(tokens[:-1]), tokens[-1]
    return rest, None


def _looks_numeric(tok):
    try:
        float(tok)
        return True
    except ValueError:
        return False


def _convert(key, spec, raw, unit, lineno, col):
    if spec.dim in ("str", "bool"):
        if unit is not None:
            raw = raw + " " + unit
        items = [t.strip() for t in raw.split(",")] if spec.is_list else [raw.strip()]
        if spec.dim == "bool":
            low = items[0].lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ParseError(f"{key}: expected a boolean, got {items[0]!r}", lineno, col)
            return low in ("true", "1", "yes")
        for it in items:
            if spec.choices and it not in spec.choices:
                raise RangeError(key, f"{it!r} is not one of {', '.join(spec.choices)}")
        return tuple(items) if spec.is_list else items[0]

    if spec.dim in ("number", "int"):
        if unit is not None:
            raise UnitError(key, f"is dimensionless but has unit {unit!r}")
        factor = 1.0
    else:
        table = UNITS[spec.dim]
        if unit is None:
            raise UnitError(key, f"needs a {spec.dim} unit, one of {', '.join(table)}")
        if unit not in table:
            raise UnitError(key, f"unit {unit!r} is not a {spec.dim} unit ({', '.join(table)})")
        factor = table[unit]
    parts = [p.strip() for p in raw.split(",")] if spec.is_list else [raw.strip()]
    values = []
    for p in parts:
        try:
            v = int(p) if spec.dim == "int" else float(p)
        except ValueError:
            raise ParseError(f"{key}: cannot read {p!r} as a number", lineno, col) from None
        values.append(v if spec.dim == "int" else v * factor)
    return tuple(values) if spec.is_list else values[0]


def _check_range(key, spec, value):
    values = value if isinstance(value, tuple) else (value,)
    for v in values:
        if isinstance(v, str) or isinstance(v, bool):
            continue
        if not math.isfinite(v):
            raise RangeError(key, "must be finite")
        if spec.check == "pos" and not v > 0:
            raise RangeError(key, f"must be > 0, got {v:g}")
        if spec.check == "nonneg" and v < 0:
            raise RangeError(key, f"must be >= 0, got {v:g}")
        if spec.check == "unit" and not 0 < v <= 1:
            raise RangeError(key, f"must lie in (0, 1], got {v:g}")
        if spec.check == ">1" and not v > 1:
            raise RangeError(key, f"must be > 1 for a double well, got {v:g}")


def parse_config(text, subcommand, seed=0):
    if subcommand not in SCHEMAS:
        raise ParseError(f"unknown subcommand {subcommand!r}")
    schema = SCHEMAS[subcommand]
    params = {}
    units = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value [unit]'", lineno, len(body) - len(body.lstrip()) + 1)
        key_part, rest = body.split("=", 1)
        key = key_part.strip()
        col = body.index("=") + 2
        if not key:
            raise ParseError("missing key", lineno, 1)
        if key not in schema:
            raise ParseError(f"unknown key {key!r} for {subcommand}", lineno, body.index(key) + 1)
        if key in params:
            raise ParseError(f"duplicate key {key!r}", lineno, body.index(key) + 1)
        if not rest.strip():
            raise ParseError(f"{key}: missing value", lineno, col)
        spec = schema[key]
        raw, unit = _split_value(rest.strip())
        value = _convert(key, spec, raw, unit, lineno, col)
        _check_range(key, spec, value)
        params[key] = value
        units[key] = unit
    either_or = subcommand in ("coupling", "design")
    missing = [k for k, s in schema.items()
               if s.default is None and not (either_or and k in OPTIONAL) and k not in params]
    if either_or and "R_target" not in params and "M" not in params:
        missing.append("R_target or M")
    if missing:
        raise ParseError(f"missing required keys: {', '.join(missing)}")
    defaults = []
    for k, s in schema.items():
        if k not in params and s.default is not None:
            params[k] = s.default
            defaults.append(k)
    if subcommand in ("noise", "design", "sweep") and params["f_H"] <= params["f_L"]:
        raise RangeError("f_H", "must exceed f_L")
    return RunConfig(subcommand=subcommand, params=params, units=units,
                     defaults_used=tuple(defaults), seed=seed)


def display(key, value, dim):
    """'value SI-unit (value display-unit)' for the report echo."""
    if dim not in UNITS:
        return str(value)
    si = {"inductance": "H", "capacitance": "F", "energy": "J", "flux": "Wb", "frequency": "Hz",
          "temperature": "K", "length": "m", "area": "m2", "angle": "rad",
          "field_density": "T/rtHz"}[dim]
    unit, factor = next(iter(UNITS[dim].items()))
    vals = value if isinstance(value, tuple) else (value,)
    si_txt = ", ".join(f"{v:.6g}" for v in vals)
    disp_txt = ", ".join(f"{v / factor:.6g}" for v in vals)
    return f"{si_txt} {si} ({disp_txt} {unit})"
