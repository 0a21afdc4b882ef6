#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command to evaluate the truncated weighted Bergman kernel B((z,w); (z',w')) of a kernel basis config.

With --points, the kernel is evaluated for all ordered combinations of the pairs in the file, row by row; otherwise
for the single combination given by --z, --w, --z2, --w2.
"""
from logging import DEBUG, INFO, WARNING
from hyperjet.logging import logger, set_logging_level, add_logging_file
from hyperjet.errors import HyperjetError, ConfigError
from hyperjet.config import merge_config
from hyperjet.data import read_kernel_config, points_from_config
from hyperjet.jetext import QuadratureSpec
from hyperjet.bergman import kernel_matrix, kernel_constant
from hyperjet.utils import ArgumentParser, add_common_args, pp_config, write_rows, exit_with_error


def get_args():
    """
    Get the command line arguments
    """
    parser = ArgumentParser(description="Evaluate the truncated weighted Bergman kernel")
    parser.add_argument("--kernel", "-k", type=str, help="Kernel basis config file, json, hjson, yaml", required=False)
    parser.add_argument("--alpha", "-a", type=float, help="Weight exponent, overrides the config file", required=False)
    parser.add_argument("--z", type=str, help="First point z", required=False)
    parser.add_argument("--w", type=str, help="Second point w", required=False)
    parser.add_argument("--z2", type=str, help="First point z' of the second pair (default: z)", required=False)
    parser.add_argument("--w2", type=str, help="Second point w' of the second pair (default: w)", required=False)
    parser.add_argument("--points", "-p", type=str, help="File with point pairs, csv, json, hjson, yaml", required=False)
    add_common_args(parser)
    args_tmp = parser.parse_args()
    args = {}
    args.update(vars(args_tmp))
    return args


def run(config: dict):
    if not config.get("kernel"):
        raise ConfigError("Missing --kernel")
    basis, alpha = read_kernel_config(config["kernel"])
    if config.get("alpha") is not None:
        alpha = float(config["alpha"])
    q = QuadratureSpec(config["quad_nodes"])
    if config.get("points"):
        pairs = points_from_config(config)
        combos = [(i, k) for i in range(len(pairs)) for k in range(len(pairs))]
    else:
        first = points_from_config(config)[0]
        second = points_from_config({"z": config.get("z2") or config.get("z"), "w": config.get("w2") or config.get("w")})[0]
        pairs = [first, second]
        combos = [(0, 1)]
    mat = kernel_matrix(basis, alpha, pairs, q)
    logger.info(f"Kernel with {len(basis.families)} families on {len(pairs)} pairs")
    rows = []
    for i, k in combos:
        p, p2, value = pairs[i], pairs[k], complex(mat[i, k])
        rows.append({
            "z_re": p.z.real, "z_im": p.z.imag, "w_re": p.w.real, "w_im": p.w.imag,
            "z2_re": p2.z.real, "z2_im": p2.z.imag, "w2_re": p2.w.real, "w2_im": p2.w.imag,
            "kernel_re": value.real, "kernel_im": value.imag,
        })
    meta = {"genus": basis.genus, "alpha": alpha, "families": len(basis.families),
            "constant": kernel_constant(alpha, basis.genus)}
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
