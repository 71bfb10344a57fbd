#!/usr/bin/python3
# -*- coding:utf-8 -*-
# Project: OptFrame, optimal frame designs by multi-water-filling.
# Copyright (c) 2026-present OptFrame developers
# License: MIT License (see LICENSE or http://opensource.org/licenses/mit).

import functools
import logging
import pathlib

import click
import pydantic

import optframe_core
from optframe_core.common.errors import (
    OptFrameError,
    InvalidInput,
    EXIT_OK,
    EXIT_VERIFICATION,
    EXIT_INPUT,
    EXIT_INTERNAL,
)
from optframe_core.common.tolerances import ToleranceConfig
from optframe_core.design.partition import spectra_of_partition
from optframe_core.oracle.trials import TrialConfig
from optframe_cli import output
from optframe_cli.job_spec import (
    JobSpec,
    PartitionDocument,
    SolutionDocument,
    load_document,
)

logger = logging.getLogger(optframe_core.used_logger)

CONFIG_DEFAULT_DIR = pathlib.Path(__file__).resolve().parent.parent


def handle_errors(command):
    """Library errors to the exit code contract."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except OptFrameError as e:
            logger.error(command.__name__ + ": " + str(e))
            click.echo("Error: " + str(e), err=True)
            ctx.exit(e.exit_code)
        except pydantic.ValidationError as e:
            logger.error(command.__name__ + ": " + str(e))
            click.echo("Error: " + str(e), err=True)
            ctx.exit(EXIT_INPUT)

    return wrapper


def tolerances_from(tol_t=None, tol_flat=None, job_tolerances=None):
    """Config file, then job file tolerances, then flags."""
    overrides = dict(job_tolerances or {})
    unknown = sorted(set(overrides) - set(ToleranceConfig.model_fields))
    if unknown:
        raise InvalidInput(
            "Unknown tolerances: "
            + ", ".join(unknown)
            + ". Available: "
            + ", ".join(sorted(ToleranceConfig.model_fields))
            + "."
        )
    if tol_t is not None:
        overrides["t_rel"] = tol_t
    if tol_flat is not None:
        overrides["flat_rel"] = tol_flat
    return ToleranceConfig.from_config(optframe_core.config, **overrides)


def job_from(alpha, dims, job):
    """Flags override the job file."""
    content = load_document(job) if job else {}
    if alpha is not None:
        content["alpha"] = alpha
    if dims is not None:
        content["dims"] = dims
    return JobSpec(**content)


alpha_option = click.option("--alpha", help="Weights, e.g. 10,10,10,1,1.")
dims_option = click.option("--dims", help="Dimensions, e.g. 4,2.")
job_option = click.option(
    "--job", type=click.Path(), help="YAML or JSON file with alpha and dims."
)
out_option = click.option("--out", type=click.Path(), help="Output file, default stdout.")
format_option = click.option(
    "--format", "output_format", type=click.Choice(["json", "csv"]), default=None
)
tol_t_option = click.option("--tol-t", type=float, help="Relative bisection tolerance.")
tol_flat_option = click.option("--tol-flat", type=float, help="Relative flatness tolerance.")


@click.group()
@click.option("--config", "config_file", type=click.Path(exists=True), help="User config file.")
@click.option("--verbose", is_flag=True, help="Debug log on stderr.")
@click.version_option(version=optframe_core.__version__, prog_name="optframe")
@click.pass_context
def cli(ctx, config_file, verbose):
    """Optimal frame designs by multi-water-filling."""
    optframe_core.config.load_config(
        config_file=config_file,
        config_default_dir=CONFIG_DEFAULT_DIR,
        config_default_file="optframe_config_default.yaml",
    )
    log_level = "debug" if verbose else optframe_core.config.get("optframe_app.log_level", default="warning")
    optframe_core.logger.setup_stream_log(level=log_level)
    logging_dir = optframe_core.config.get("optframe_app.logging_dir", default="")
    if logging_dir:
        optframe_core.logger.setup_rotating_log(
            logging_dir=logging_dir,
            log_name="info_log.txt",
            debug_log_name="debug_log.txt",
        )
    ctx.ensure_object(dict)


@cli.command()
@alpha_option
@dims_option
@job_option
@format_option
@out_option
@tol_t_option
@tol_flat_option
@click.option("--plot-data", type=click.Path(), help="CSV with water-filling profiles.")
@click.pass_context
@handle_errors
def solve(ctx, alpha, dims, job, output_format, out, tol_t, tol_flat, plot_data):
    """Optimal weight partition, spectra and block structure."""
    spec = job_from(alpha, dims, job)
    cfg = tolerances_from(tol_t, tol_flat, spec.tolerances)
    problem = spec.to_problem()
    solution = optframe_core.partition_solver.solve(problem, cfg)
    output_format = output_format or spec.format or optframe_core.config.get("output.format", default="json")
    float_format = optframe_core.config.get("output.float_format", default="%.6g")
    if output_format == "csv":
        output.emit(output.matrix_csv(solution.partition.entries, float_format), out)
    else:
        output.emit(output.to_json(output.solution_document(problem, solution)), out)
    if plot_data:
        output.emit(
            output.plot_data_csv(solution.partition.entries, solution.spectra, float_format),
            plot_data,
        )
    logger.info("solve: n=" + str(problem.n) + ", p=" + str(solution.blocks.p) + ".")
    ctx.exit(EXIT_OK)


@cli.command()
@alpha_option
@dims_option
@job_option
@click.option("--solution", type=click.Path(), help="Document with dims and partition.")
@format_option
@out_option
@click.pass_context
@handle_errors
def synth(ctx, alpha, dims, job, solution, output_format, out):
    """Frame families realizing an optimal (or given) partition."""
    if solution:
        cfg = tolerances_from()
        document = PartitionDocument(**load_document(solution))
        partition = document.to_partition()
        spectra = spectra_of_partition(partition, document.dims)
    else:
        spec = job_from(alpha, dims, job)
        cfg = tolerances_from(job_tolerances=spec.tolerances)
        solved = optframe_core.partition_solver.solve(spec.to_problem(), cfg)
        partition = solved.partition
        spectra = solved.spectra
    synthesizer = optframe_core.frame_synthesizer
    design = synthesizer.synthesize_partition(partition, spectra, cfg)
    checks = synthesizer.verify_design(design, partition, spectra, cfg)
    if (output_format or "json") == "csv":
        float_format = optframe_core.config.get("output.float_format", default="%.6g")
        text = "".join(
            output.matrix_csv(family.vectors, float_format, header="family " + str(j + 1))
            for j, family in enumerate(design)
        )
    else:
        text = output.to_json(output.design_document(design, checks))
    output.emit(text, out)
    if not all(check.passed for check in checks):
        click.echo("Error: synthesized design failed verification.", err=True)
        ctx.exit(EXIT_INTERNAL)
    ctx.exit(EXIT_OK)


@cli.command()
@click.option("--solution", type=click.Path(), required=True, help="Stored solve result.")
@out_option
@tol_t_option
@tol_flat_option
@click.pass_context
@handle_errors
def verify(ctx, solution, out, tol_t, tol_flat):
    """Check the structure identities of a stored solution."""
    cfg = tolerances_from(tol_t, tol_flat)
    document = SolutionDocument.from_file(solution)
    problem = document.to_problem()
    report = optframe_core.partition_solver.verify(
        problem, document.to_solution(problem), cfg
    )
    output.emit(output.to_json(output.report_document(report, failed=report.failed)), out)
    ctx.exit(EXIT_OK if report.passed else EXIT_VERIFICATION)


@cli.command()
@alpha_option
@dims_option
@job_option
@click.option("--seed", type=int, envvar="OPTFRAME_SEED", help="Trial seed.")
@click.option("--trials", type=int, help="Number of random designs.")
@click.option("--workers", type=int, help="Worker threads.")
@out_option
@click.pass_context
@handle_errors
def sample(ctx, alpha, dims, job, seed, trials, workers, out):
    """Random designs against the optimal one."""
    spec = job_from(alpha, dims, job)
    cfg = tolerances_from(job_tolerances=spec.tolerances)
    trial_config = TrialConfig.from_config(
        optframe_core.config,
        seed=seed if seed is not None else spec.seed,
        trials=trials,
        workers=workers,
    )
    report = optframe_core.optimality_oracle.run_trials(
        spec.to_problem(), trial_config, tolerances=cfg
    )
    output.emit(
        output.to_json(output.report_document(report, violations=report.violations)), out
    )
    ctx.exit(EXIT_OK if report.passed else EXIT_VERIFICATION)


@cli.command()
@alpha_option
@click.option("--beta", required=True, help="Weights with 0 < beta <= alpha.")
@dims_option
@out_option
@click.pass_context
@handle_errors
def mono(ctx, alpha, beta, dims, out):
    """Spectral monotonicity in the weights."""
    spec = job_from(alpha, dims, None)
    lower = JobSpec(alpha=beta, dims=spec.dims)
    report = optframe_core.optimality_oracle.monotonicity_trial(
        spec.alpha, lower.alpha, spec.dims, tolerances_from()
    )
    output.emit(output.to_json(output.report_document(report)), out)
    ctx.exit(EXIT_OK if report.passed else EXIT_VERIFICATION)


if __name__ == "__main__":
    cli()
