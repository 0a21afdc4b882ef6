#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command to evaluate the truncated Poincare series sum_g (g z - g w)^N over the ball of group elements of word length
<= L at point pairs, or the density sum_g g'(tau)^N at points tau.

Each row carries the sum of the term magnitudes over the outermost shell as a tail indicator and a flag telling
whether the series converges for the given order (N >= 2).
"""
from logging import DEBUG, INFO, WARNING
from hyperjet.logging import logger, set_logging_level, add_logging_file
from hyperjet.errors import HyperjetError, ConfigError
from hyperjet.config import merge_config
from hyperjet.data import read_generator_set, points_from_config
from hyperjet.fuchsian import enumerate_ball, pair_series, poincare_density
from hyperjet.checks import default_generators_path
from hyperjet.utils import ArgumentParser, add_common_args, pp_config, write_rows, exit_with_error, parse_complex


def get_args():
    """
    Get the command line arguments
    """
    parser = ArgumentParser(description="Truncated Poincare series over a ball of group elements")
    parser.add_argument("--generators", "-g", type=str,
                        help="File with the group generators, json, hjson, yaml (default: the genus 2 octagon group)",
                        required=False)
    parser.add_argument("--word-length", "-L", type=int, default=3, help="Maximal word length (default: 3)", required=False)
    parser.add_argument("--order", "-N", type=int, help="Order N", required=False)
    parser.add_argument("--z", type=str, help="First point z, e.g. '0.1+0.2j'", required=False)
    parser.add_argument("--w", type=str, help="Second point w", required=False)
    parser.add_argument("--points", "-p", type=str, help="File with point pairs, csv, json, hjson, yaml", required=False)
    parser.add_argument("--tau", type=str, action="append",
                        help="Evaluate the density sum_g g'(tau)^N at this point instead, may be given repeatedly",
                        required=False)
    add_common_args(parser)
    args_tmp = parser.parse_args()
    args = {}
    args.update(vars(args_tmp))
    return args


def run(config: dict):
    if config.get("order") is None:
        raise ConfigError("Missing --order")
    N = config["order"]
    if not isinstance(N, int) or N < 0:
        raise ConfigError(f"Field 'order': expected an integer >= 0, got {N!r}")
    gens = read_generator_set(config.get("generators") or default_generators_path())
    ball = enumerate_ball(gens, config["word_length"], config["dedup_tol"], config["ambiguity_floor"])
    logger.info(f"Ball of word length {config['word_length']} has {len(ball)} elements, shells {ball.shell_sizes()}")
    rows = []
    if config.get("tau"):
        for tau in (parse_complex(t, "tau") for t in config["tau"]):
            res = poincare_density(ball, N, tau)
            rows.append({"tau_re": tau.real, "tau_im": tau.imag, "value_re": res.value.real,
                         "value_im": res.value.imag, "tail": res.tail, "convergent": res.convergent})
    else:
        for p in points_from_config(config):
            res = pair_series(ball, N, p)
            rows.append({"z_re": p.z.real, "z_im": p.z.imag, "w_re": p.w.real, "w_im": p.w.imag,
                         "value_re": res.value.real, "value_im": res.value.imag,
                         "tail": res.tail, "convergent": res.convergent})
    meta = {"order": N, "word_length": config["word_length"], "elements": len(ball), "shell_sizes": ball.shell_sizes()}
    write_rows(rows, config["format"], config.get("output"), meta)


def main():
    args = get_args()
    if args["logfile"]:
        add_logging_file(args["logfile"])
    if args["debug"]:
        set_logging_level(DEBUG)
        logger.debug(f"Effective arguments: {pp_config(args)}")
    else:
        set_logging_level(INFO if args["verbose"] else WARNING)
    try:
        run(merge_config(args))
    except HyperjetError as ex:
        exit_with_error(ex)


if __name__ == '__main__':
    main()
