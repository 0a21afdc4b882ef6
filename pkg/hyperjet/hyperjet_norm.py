#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command to compute the constant c_{N,alpha} relating the weighted Bergman norm of I(psi) to the norm of psi, both
from its hypergeometric closed form and from the ladder of associated differentials, and to report how well the two
agree.
"""
from logging import DEBUG, INFO, WARNING
from hyperjet.logging import logger, set_logging_level, add_logging_file
from hyperjet.errors import HyperjetError, ConfigError
from hyperjet.config import merge_config
from hyperjet.specfun import c_alpha, moment_sum, check_order, check_alpha
from hyperjet.utils import ArgumentParser, add_common_args, pp_config, write_rows, write_output, to_json, \
    exit_with_error


def get_args():
    """
    Get the command line arguments
    """
    parser = ArgumentParser(description="Closed form and ladder sum of the norm constant c_{N,alpha}")
    parser.add_argument("--order", "-N", type=int, help="Order N >= 1", required=False)
    parser.add_argument("--alpha", "-a", type=float, help="Weight exponent alpha > -1 (default: 0)", required=False)
    parser.add_argument("--terms", "-M", type=int, default=10**4, help="Last index of the ladder sum (default: 10000)",
                        required=False)
    parser.add_argument("--raw", action="store_true",
                        help="Report the raw partial sum of the ladder without the Euler-Maclaurin tail", required=False)
    add_common_args(parser)
    args_tmp = parser.parse_args()
    args = {}
    args.update(vars(args_tmp))
    return args


def run(config: dict):
    if config.get("order") is None:
        raise ConfigError("Missing --order")
    N = config["order"]
    alpha = float(config.get("alpha") or 0.0)
    check_order(N)
    check_alpha(alpha)
    closed = c_alpha(N, alpha)
    ladder = moment_sum(N, alpha, config["terms"], extrapolate=not config.get("raw"))
    agreement = abs(closed.value - ladder.value)
    logger.info(f"c_alpha({N}, {alpha}) = {closed.value}, ladder {ladder.value}, difference {agreement:.3e}")
    if closed.saturated or ladder.saturated:
        logger.warning(f"Series saturated for N={N}, alpha={alpha}")
    result = {
        "order": N,
        "alpha": alpha,
        "c_alpha": closed.to_json(),
        "moment_sum": ladder.to_json(),
        "extrapolated": not config.get("raw"),
        "agreement": agreement,
    }
    if config["format"] == "csv":
        write_rows([{
            "order": N, "alpha": alpha,
            "c_alpha": closed.value, "c_alpha_tail": closed.tail_estimate, "c_alpha_saturated": closed.saturated,
            "moment_sum": ladder.value, "moment_sum_tail": ladder.tail_estimate, "agreement": agreement,
        }], "csv", config.get("output"))
    else:
        write_output(to_json(result), config.get("output"))


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
