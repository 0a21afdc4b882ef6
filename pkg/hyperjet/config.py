"""
Module for the numerical defaults and for merging a config file with the command line arguments.

A config file (json, hjson or yaml) contains a dict whose keys are the long option names with dashes replaced
by underscores, e.g. "quad_nodes" or "tolerance_scale". Values given explicitly on the command line take
precedence over the config file, which takes precedence over DEFAULTS.
"""
from hyperjet.logging import logger
from hyperjet.errors import ConfigError
from hyperjet.data import read_file

DEFAULTS = {
    "seed": 0,
    "quad_nodes": 64,
    "jet_nodes": 256,
    "jet_radius": None,
    "fd_step": 1e-4,
    "fd_step_box": 1e-3,
    "dedup_tol": 1e-9,
    "ambiguity_floor": 1e-12,
    "tolerance_scale": 1.0,
    "format": "json",
}


def merge_config(args: dict) -> dict:
    """
    Build the effective config from DEFAULTS, the config file named in args["config"] (if any) and the
    arguments which are not None.
    :param args: the parsed command line arguments as a dict
    :return: the effective config dict
    """
    config = dict(DEFAULTS)
    if args.get("config"):
        filedata = read_file(args["config"])
        if not isinstance(filedata, dict):
            raise ConfigError(f"Config file {args['config']} must contain a dict, got {type(filedata).__name__}")
        unknown = [k for k in filedata if k not in DEFAULTS and k not in args]
        if unknown:
            logger.warning(f"Ignoring unknown config file settings: {unknown}")
        config.update({k: v for k, v in filedata.items() if k not in unknown})
    config.update({k: v for k, v in args.items() if v is not None})
    if not isinstance(config["seed"], int) or config["seed"] < 0:
        raise ConfigError(f"Field 'seed': expected a non-negative integer, got {config['seed']!r}")
    if not isinstance(config["tolerance_scale"], (int, float)) or config["tolerance_scale"] <= 0:
        raise ConfigError(f"Field 'tolerance_scale': expected a positive number, got {config['tolerance_scale']!r}")
    return config
