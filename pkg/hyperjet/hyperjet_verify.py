#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command to run the acceptance checks A1 to A10 and write a JSON report with the measured values, tolerances,
package versions and the effective config. Exits with code 1 if any check fails.
"""
import sys
from logging import DEBUG, INFO, WARNING
from hyperjet.logging import logger, set_logging_level, add_logging_file
from hyperjet.errors import HyperjetError, ConfigError
from hyperjet.config import merge_config
from hyperjet.checks import CHECKS, FAIL, CheckContext, RunReport, run_checks, package_versions
from hyperjet.jetext import QuadratureSpec, JetSpec
from hyperjet.utils import ArgumentParser, add_common_args, pp_config, dict_except, write_output, to_json, \
    exit_with_error

INJECTION_HOOKS = ["norm_ratio"]


def get_args():
    """
    Get the command line arguments
    """
    parser = ArgumentParser(description="Run the acceptance checks and write a JSON report")
    parser.add_argument("--suite", "-s", type=str, help="Comma separated list of checks to run, e.g. 'A1,A4' (default: all)",
                        required=False)
    parser.add_argument("--generators", "-g", type=str,
                        help="File with the group generators for A5 and A10 (default: the genus 2 octagon group)",
                        required=False)
    parser.add_argument("--inject", type=str, action="append",
                        help="Perturbation hook NAME=EPS for testing the detectors, e.g. 'norm_ratio=1e-3'",
                        required=False)
    parser.add_argument("--list", action="store_true", help="List the available checks and exit", required=False)
    add_common_args(parser, output_formats=False)
    args_tmp = parser.parse_args()
    args = {}
    args.update(vars(args_tmp))
    return args


def parse_suite(text) -> list[str]:
    if not text:
        return list(CHECKS)
    names = [n.strip().upper() for n in text.split(",") if n.strip()]
    unknown = [n for n in names if n not in CHECKS]
    if unknown or not names:
        raise ConfigError(f"Field 'suite': unknown checks {unknown}, known are {list(CHECKS)}")
    return names


def parse_inject(items) -> dict:
    inject = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep or name.strip() not in INJECTION_HOOKS:
            raise ConfigError(f"Field 'inject': expected one of {INJECTION_HOOKS} as NAME=EPS, got {item!r}")
        try:
            inject[name.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"Field 'inject': {value!r} is not a number")
    return inject


def run(config: dict) -> RunReport:
    if config.get("list"):
        for name, check in CHECKS.items():
            print(f"{name}: {check['description']} (tolerance {check['tolerance']:.0e})")
        return RunReport()
    names = parse_suite(config.get("suite"))
    ctx = CheckContext(
        seed=config["seed"],
        tolerance_scale=float(config["tolerance_scale"]),
        quad=QuadratureSpec(config["quad_nodes"]),
        jet=JetSpec(config["jet_radius"], config["jet_nodes"]),
        fd_step=float(config["fd_step"]),
        fd_step_box=float(config["fd_step_box"]),
        dedup_tol=float(config["dedup_tol"]),
        ambiguity_floor=float(config["ambiguity_floor"]),
        generators_path=config.get("generators"),
        inject=parse_inject(config.get("inject")),
    )
    if ctx.inject:
        logger.warning(f"Running with injected perturbations {ctx.inject}")
    checks = run_checks(ctx, names)
    echo = dict_except(config, ["logfile", "verbose", "debug", "output", "list", "format"])
    report = RunReport(checks, package_versions(), echo)
    write_output(to_json(report.to_dict()), config.get("output"))
    return report


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
        report = run(merge_config(args))
    except HyperjetError as ex:
        exit_with_error(ex)
    failed = [c.name for c in report.checks if c.status == FAIL]
    if failed:
        logger.error(f"Failed checks: {failed}")
        sys.exit(1)


if __name__ == '__main__':
    main()
