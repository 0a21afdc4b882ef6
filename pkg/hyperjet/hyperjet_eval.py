#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command to evaluate the jet extension I(psi)(z, w) of an N-differential at one or more point pairs.

The differential is either given on the command line as a power series (--order, --coeffs) or read from a
json/hjson/yaml file (--psi). The points are either a single pair (--z, --w) or read from a file (--points).
"""
from logging import DEBUG, INFO, WARNING
from hyperjet.logging import logger, set_logging_level, add_logging_file
from hyperjet.errors import HyperjetError
from hyperjet.config import merge_config
from hyperjet.data import differential_from_config, points_from_config
from hyperjet.jetext import QuadratureSpec, extend, extend_bracket
from hyperjet.utils import ArgumentParser, add_common_args, pp_config, write_rows, exit_with_error, parse_complex


def get_args():
    """
    Get the command line arguments
    """
    parser = ArgumentParser(description="Evaluate the jet extension of an N-differential at point pairs")
    parser.add_argument("--order", "-N", type=int, help="Order N of the differential", required=False)
    parser.add_argument("--coeffs", type=str, help="Power series coefficients c0,c1,..., e.g. '1,0.5j'", required=False)
    parser.add_argument("--psi", type=str, help="File with the differential, json, hjson, yaml", required=False)
    parser.add_argument("--z", type=str, help="First point z, e.g. '0.1+0.2j'", required=False)
    parser.add_argument("--w", type=str, help="Second point w", required=False)
    parser.add_argument("--points", "-p", type=str, help="File with point pairs, csv, json, hjson, yaml", required=False)
    parser.add_argument("--waypoint", type=str, action="append",
                        help="Evaluate the bracket path integral through this point instead of the segment quadrature, "
                             "may be given repeatedly", required=False)
    add_common_args(parser)
    args_tmp = parser.parse_args()
    args = {}
    args.update(vars(args_tmp))
    return args


def run(config: dict):
    psi = differential_from_config(config)
    pairs = points_from_config(config)
    q = QuadratureSpec(config["quad_nodes"])
    waypoints = [parse_complex(x, "waypoint") for x in config.get("waypoint") or []]
    logger.info(f"Evaluating the extension of order {psi.order} at {len(pairs)} point pairs")
    rows = []
    for p in pairs:
        if waypoints:
            value = extend_bracket(psi, p, waypoints, q)
        else:
            value = extend(psi, p, q)
        rows.append({
            "z_re": p.z.real, "z_im": p.z.imag,
            "w_re": p.w.real, "w_im": p.w.imag,
            "value_re": value.real, "value_im": value.imag,
        })
    write_rows(rows, config["format"], config.get("output"), {"order": psi.order, "convergent": psi.convergent})


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
