#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command to print the Taylor coefficients f_{N+m}(0), m = 0..M, of the extension I(psi)(0, w) of a power series
differential, optionally together with the partial sums of the expansion at a point w.
"""
from logging import DEBUG, INFO, WARNING
from hyperjet.logging import logger, set_logging_level, add_logging_file
from hyperjet.errors import HyperjetError, ConfigError
from hyperjet.config import merge_config
from hyperjet.data import differential_from_config
from hyperjet.jetext import taylor_at_zero, eval_series_at_zero
from hyperjet.utils import ArgumentParser, add_common_args, pp_config, write_rows, exit_with_error, parse_complex, \
    cjson


def get_args():
    """
    Get the command line arguments
    """
    parser = ArgumentParser(description="Taylor coefficients of the jet extension at z = 0")
    parser.add_argument("--order", "-N", type=int, help="Order N of the differential", required=False)
    parser.add_argument("--coeffs", type=str, help="Power series coefficients c0,c1,..., e.g. '1,0.5j'", required=False)
    parser.add_argument("--psi", type=str, help="File with a power series differential, json, hjson, yaml", required=False)
    parser.add_argument("--max-m", "-M", type=int, default=10, help="Last index m (default: 10)", required=False)
    parser.add_argument("--w", type=str, help="Also sum the expansion at this point", required=False)
    add_common_args(parser)
    args_tmp = parser.parse_args()
    args = {}
    args.update(vars(args_tmp))
    return args


def run(config: dict):
    psi = differential_from_config(config)
    M = config["max_m"]
    if not isinstance(M, int) or M < 0:
        raise ConfigError(f"Field 'max_m': expected an integer >= 0, got {M!r}")
    coeffs = taylor_at_zero(psi, M)
    rows = [{"m": m, "n": psi.order + m, "coeff_re": c.real, "coeff_im": c.imag} for m, c in enumerate(coeffs)]
    meta = {"order": psi.order, "max_m": M}
    if config.get("w") is not None:
        res = eval_series_at_zero(psi, parse_complex(config["w"], "w"), M)
        logger.info(f"Partial sum at w={config['w']}: {res.value}, last term {res.last_term:.3e}")
        meta["series"] = {"w": cjson(parse_complex(config["w"], "w")), "value": cjson(res.value),
                          "last_term": res.last_term}
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
