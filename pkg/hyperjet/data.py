"""
Module for functions related to reading files and checking file contents: generator sets, differentials, kernel
bases and point pair lists.

Files are json, hjson or yaml, chosen by the file extension; point pair lists may also be CSV files. All format and
content problems are reported as ConfigError naming the file, the line where available and the offending field.
"""
import os
import json
import yaml
import hjson
import pandas as pd
from hyperjet.logging import logger
from hyperjet.errors import ConfigError, DomainError
from hyperjet.utils import parse_complex, parse_complex_list
from hyperjet.mobius import MobiusTransform, PointPair
from hyperjet.fuchsian import GeneratorSet, enumerate_ball
from hyperjet.jetext import NDifferential
from hyperjet.bergman import KernelBasis, KernelFamily


def read_file(input_file: str):
    """
    Read a json, hjson or yaml file and return the data it contains.

    :param input_file: file to read
    :return: the decoded data
    """
    if not os.path.exists(input_file):
        raise ConfigError(f"File {input_file} does not exist")
    with open(input_file, 'r') as f:
        text = f.read()
    if input_file.endswith(".json"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Could not decode JSON file {input_file}, line {e.lineno} column {e.colno}: {e.msg}")
    elif input_file.endswith(".hjson"):
        try:
            return hjson.loads(text)
        except hjson.HjsonDecodeError as e:
            raise ConfigError(f"Could not decode HJSON file {input_file}, line {e.lineno} column {e.colno}: {e.msg}")
    elif input_file.endswith(".yaml") or input_file.endswith(".yml"):
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            where = f", line {mark.line + 1} column {mark.column + 1}" if mark is not None else ""
            raise ConfigError(f"Could not decode YAML file {input_file}{where}: {e}")
    raise ConfigError(f"Unknown file extension for file {input_file}, expected .json, .hjson or .yaml")


def _require(entry: dict, key: str, where: str):
    if not isinstance(entry, dict):
        raise ConfigError(f"{where}: expected a dict, got {type(entry).__name__}")
    if key not in entry:
        raise ConfigError(f"{where}: missing field '{key}'")
    return entry[key]


def _int_field(value, field: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(f"Field '{field}': expected an integer >= {minimum}, got {value!r}")
    return value


def parse_generator_set(data, source: str = "generators"):
    """
    Build a validated GeneratorSet from the dict
    { "generators": [ { "alpha": [re,im], "beta": [re,im] }, ... ], "relations": [[1,2,-1,-2,...]] }.
    """
    gens = _require(data, "generators", source)
    if not isinstance(gens, list) or not gens:
        raise ConfigError(f"{source}: field 'generators' must be a non-empty list")
    transforms = []
    for idx, g in enumerate(gens):
        field = f"generators[{idx}]"
        alpha = parse_complex(_require(g, "alpha", f"{source}: {field}"), f"{field}.alpha")
        beta = parse_complex(_require(g, "beta", f"{source}: {field}"), f"{field}.beta")
        try:
            transforms.append(MobiusTransform(alpha, beta))
        except DomainError as e:
            raise ConfigError(f"{source}: {field}: {e}")
    relations = data.get("relations", [])
    if not isinstance(relations, list):
        raise ConfigError(f"{source}: field 'relations' must be a list of integer lists")
    for ridx, word in enumerate(relations):
        if not isinstance(word, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in word):
            raise ConfigError(f"{source}: relations[{ridx}] must be a list of integers, got {word!r}")
    try:
        gset = GeneratorSet(tuple(transforms), tuple(tuple(w) for w in relations))
    except ConfigError as e:
        raise ConfigError(f"{source}: {e}")
    logger.debug(f"Read {len(transforms)} generators and {len(relations)} relations from {source}")
    return gset


def read_generator_set(path: str):
    return parse_generator_set(read_file(path), path)


def parse_differential(data, base_dir: str = ".", source: str = "differential", ball_cache: dict = None):
    """
    Build an NDifferential from its dict form:
    { "order": N, "kind": "power_series", "coeffs": [[re,im], ...] } or
    { "order": N, "kind": "poincare", "word_length": L, "generators_ref": "<path>" }.
    Relative generator paths are resolved against base_dir.
    """
    order = _int_field(_require(data, "order", source), f"{source}.order")
    kind = data.get("kind", "power_series")
    if kind == "power_series":
        coeffs = _require(data, "coeffs", source)
        if not isinstance(coeffs, list) or not coeffs:
            raise ConfigError(f"Field '{source}.coeffs': expected a non-empty list")
        return NDifferential.power_series(order, [parse_complex(c, f"{source}.coeffs[{i}]") for i, c in enumerate(coeffs)])
    elif kind == "poincare":
        L = _int_field(_require(data, "word_length", source), f"{source}.word_length")
        ref = _require(data, "generators_ref", source)
        if not isinstance(ref, str):
            raise ConfigError(f"Field '{source}.generators_ref': expected a path, got {ref!r}")
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        key = (os.path.abspath(path), L)
        if ball_cache is not None and key in ball_cache:
            ball = ball_cache[key]
        else:
            ball = enumerate_ball(read_generator_set(path), L)
            if ball_cache is not None:
                ball_cache[key] = ball
        return NDifferential.poincare(ball, order)
    raise ConfigError(f"Field '{source}.kind': unknown kind {kind!r}, expected 'power_series' or 'poincare'")


def read_differential(path: str):
    return parse_differential(read_file(path), os.path.dirname(os.path.abspath(path)), path)


def read_kernel_config(path: str):
    """
    Read { "genus": 2, "alpha": 0.0, "families": [ { "order": N, "psi": <differential>, "sq_norm": x } ] }.
    :return: tuple (KernelBasis, alpha)
    """
    data = read_file(path)
    base_dir = os.path.dirname(os.path.abspath(path))
    genus = _int_field(_require(data, "genus", path), "genus", 2)
    alpha = data.get("alpha", 0.0)
    if isinstance(alpha, bool) or not isinstance(alpha, (int, float)):
        raise ConfigError(f"Field 'alpha': expected a number, got {alpha!r}")
    families = data.get("families", [])
    if not isinstance(families, list):
        raise ConfigError(f"Field 'families': expected a list")
    cache = {}
    result = []
    for idx, fam in enumerate(families):
        field = f"families[{idx}]"
        psi = parse_differential(_require(fam, "psi", f"{path}: {field}"), base_dir, f"{field}.psi", cache)
        if "order" in fam and fam["order"] != psi.order:
            raise ConfigError(f"Field '{field}.order': {fam['order']} differs from the order {psi.order} of psi")
        sq_norm = _require(fam, "sq_norm", f"{path}: {field}")
        if isinstance(sq_norm, bool) or not isinstance(sq_norm, (int, float)):
            raise ConfigError(f"Field '{field}.sq_norm': expected a number, got {sq_norm!r}")
        result.append(KernelFamily(psi, float(sq_norm)))
    return KernelBasis(tuple(result), genus), float(alpha)


def read_point_pairs(path: str):
    """
    Read point pairs from a CSV file with columns z_re, z_im, w_re, w_im or from a json/hjson/yaml list of
    { "z": [re,im], "w": [re,im] } dicts.
    """
    if path.endswith(".csv"):
        try:
            df = pd.read_csv(path)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise ConfigError(f"Could not read CSV file {path}: {e}")
        missing = [c for c in ("z_re", "z_im", "w_re", "w_im") if c not in df.columns]
        if missing:
            raise ConfigError(f"CSV file {path} lacks the columns {missing}")
        pairs = []
        for idx, row in enumerate(df.itertuples(index=False)):
            try:
                z = complex(float(row.z_re), float(row.z_im))
                w = complex(float(row.w_re), float(row.w_im))
            except (TypeError, ValueError):
                raise ConfigError(f"CSV file {path}, data row {idx + 1}: non-numeric value")
            pairs.append(PointPair(z, w))
        return pairs
    data = read_file(path)
    if not isinstance(data, list):
        raise ConfigError(f"File {path} must contain a list of point pairs")
    pairs = []
    for idx, entry in enumerate(data):
        z = parse_complex(_require(entry, "z", f"{path}: entry {idx}"), f"[{idx}].z")
        w = parse_complex(_require(entry, "w", f"{path}: entry {idx}"), f"[{idx}].w")
        pairs.append(PointPair(z, w))
    return pairs


def differential_from_config(config: dict) -> NDifferential:
    """
    The differential named by a config: the file in "psi" or the power series given by "order" and "coeffs", the
    latter either a comma separated string or a list of complex values.
    """
    if config.get("psi"):
        return read_differential(config["psi"])
    if config.get("order") is None or config.get("coeffs") is None:
        raise ConfigError("Specify a differential with --psi or with both --order and --coeffs")
    coeffs = config["coeffs"]
    if isinstance(coeffs, str):
        coeffs = parse_complex_list(coeffs)
    elif isinstance(coeffs, list) and coeffs:
        coeffs = [parse_complex(c, f"coeffs[{i}]") for i, c in enumerate(coeffs)]
    else:
        raise ConfigError(f"Field 'coeffs': expected a non-empty list, got {coeffs!r}")
    order = _int_field(config["order"], "order")
    return NDifferential.power_series(order, coeffs)


def points_from_config(config: dict, z_key: str = "z", w_key: str = "w") -> list:
    """The point pairs from the file in "points" or the single pair given by "z" and "w"."""
    if config.get("points"):
        return read_point_pairs(config["points"])
    if config.get(z_key) is None or config.get(w_key) is None:
        raise ConfigError(f"Specify points with --points or with both --{z_key} and --{w_key}")
    return [PointPair(parse_complex(config[z_key], z_key), parse_complex(config[w_key], w_key))]
