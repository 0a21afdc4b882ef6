"""
Module for various utility functions: config printing, parsing of complex values from the command line or config
files, structured output and the error handling shared by all command line programs.
"""
import sys
import math
import json
import argparse
from typing import Optional
import pandas as pd
from hyperjet.errors import ConfigError, HyperjetError


def pp_config(config):
    """
    Pretty print the config dict
    """
    return json.dumps(config, indent=4, sort_keys=True, default=str)


def dict_except(d, keys):
    """
    Return a copy of the dict d, except for the keys in the list keys.
    """
    return {k: v for k, v in d.items() if k not in keys}


def parse_complex(value, field: str = "value") -> complex:
    """
    Parse a complex number given as a number, a two element list [re, im] or a string in Python syntax like "0.3+0.1j".
    :param value: the value to parse
    :param field: name of the field, used in the error message
    :return: the complex number
    """
    if isinstance(value, bool):
        raise ConfigError(f"Field '{field}': expected a complex number, got {value!r}")
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, (list, tuple)):
        if len(value) != 2 or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value):
            raise ConfigError(f"Field '{field}': expected [re, im], got {value!r}")
        return complex(value[0], value[1])
    if isinstance(value, str):
        try:
            return complex(value.strip().replace(" ", "").replace("i", "j"))
        except ValueError:
            pass
    raise ConfigError(f"Field '{field}': cannot parse {value!r} as a complex number")


def parse_complex_list(text: str, field: str = "coeffs") -> list[complex]:
    """Parse a comma separated list of complex numbers, e.g. "1,0.5j,2-1j"."""
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise ConfigError(f"Field '{field}': empty entry in {text!r}")
    return [parse_complex(p, f"{field}[{i}]") for i, p in enumerate(parts)]


def cjson(z: complex) -> list[float]:
    """Complex number as the JSON pair [re, im]."""
    z = complex(z)
    return [z.real, z.imag]


def _finite_or_null(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite_or_null(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_null(v) for v in obj]
    return obj


def to_json(obj) -> str:
    """
    Deterministic JSON: field order as constructed, floats in shortest round trip form, infinite or nan values
    (e.g. the tail estimate of a saturated series) written as null.
    """
    return json.dumps(_finite_or_null(obj), indent=2, allow_nan=False)


def write_output(text: str, outfile: Optional[str] = None):
    if outfile:
        with open(outfile, "wt") as outfp:
            outfp.write(text)
            if not text.endswith("\n"):
                outfp.write("\n")
    else:
        print(text)


def write_rows(rows: list[dict], fmt: str, outfile: Optional[str] = None, meta: Optional[dict] = None):
    """
    Write a list of flat row dicts either as CSV (through a pandas DataFrame) or as JSON {**meta, "rows": rows}.
    """
    if fmt == "csv":
        df = pd.DataFrame(rows)
        text = df.to_csv(index=False, float_format="%.17g", lineterminator="\n")
        write_output(text.rstrip("\n"), outfile)
    else:
        data = dict(meta or {})
        data["rows"] = rows
        write_output(to_json(data), outfile)


def error_line(kind: str, code: int, message: str) -> str:
    return json.dumps({"error": kind, "exit": code, "message": " ".join(str(message).split())})


def exit_with_error(ex: HyperjetError):
    """Print the single line error report for ex to stderr and exit with its code."""
    print(error_line(type(ex).__name__, ex.exit_code, str(ex)), file=sys.stderr)
    sys.exit(ex.exit_code)


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that reports usage errors as a single JSON line and exits with code 2."""

    def error(self, message):
        print(error_line("UsageError", 2, f"{self.prog}: {message}"), file=sys.stderr)
        sys.exit(2)


def add_common_args(parser: argparse.ArgumentParser, output_formats: bool = True):
    """
    Add the options shared by all programs: seed, quadrature nodes, output format, tolerance scale, config and
    logging.
    """
    parser.add_argument("--seed", type=int, help="Seed for randomized samples (default: 0)", required=False)
    parser.add_argument("--quad-nodes", type=int, help="Gauss-Legendre nodes for the extension integral (default: 64)", required=False)
    parser.add_argument("--tolerance-scale", type=float, help="Factor applied to all check tolerances (default: 1.0)", required=False)
    if output_formats:
        fmt = parser.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json", help="Write JSON output (default)")
        fmt.add_argument("--csv", dest="format", action="store_const", const="csv", help="Write CSV output")
    parser.add_argument("--output", "-o", type=str, help="Output file (default: stdout)", required=False)
    parser.add_argument("--config", "-c", type=str, help="Config file with default settings, json, hjson, yaml", required=False)
    parser.add_argument("--logfile", "-f", type=str, help="Log file", required=False)
    parser.add_argument("--verbose", "-v", action="store_true", help="Be more verbose and inform what is happening", required=False)
    parser.add_argument("--debug", "-d", action="store_true", help="Debug mode", required=False)
