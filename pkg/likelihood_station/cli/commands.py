"""
Subcommand implementations
"""

from __future__ import annotations

from argparse import Namespace
from typing import Optional, Union

import numpy as np

from ..algebra.ring import format_poly
from ..exceptions.custom import UsageError
from ..logging_config import get_logger
from ..models import ModelSpec, catalog_names, export_model_text, get_model, load_model_file
from ..schemas.reports import MaximumEntry, RunReport, SolutionEntry
from ..schemas.validation import DataVector, Tolerances
from ..services.bound_service import BoundService, CIShape
from ..services.certify_service import CertifyService
from ..services.likelihood_service import LikelihoodService
from ..services.parametric_service import ParametricService
from ..services.solver_service import SolverService
from ..utils.timing import StageTimer

logger = get_logger(__name__)

Output = Union[RunReport, str]


def resolve_model(args: Namespace) -> ModelSpec:
    if getattr(args, "model_file", None):
        return load_model_file(args.model_file)
    if getattr(args, "model", None):
        return get_model(args.model)
    raise UsageError("a model name or --model-file is required", error_code="MISSING_MODEL")


def tolerances_from(args: Namespace) -> Tolerances:
    return Tolerances().override(residual=args.tol_residual, imag=args.tol_imag)


def _data(args: Namespace) -> DataVector:
    if not getattr(args, "data", None):
        raise UsageError("--data is required", error_code="MISSING_DATA")
    return DataVector.from_csv(args.data)


def _base_report(args: Namespace, argv, spec: Optional[ModelSpec], timer: StageTimer) -> RunReport:
    return RunReport(
        command=list(argv),
        model=spec.name if spec is not None else None,
        seed=args.seed,
        timings=timer.timings,
    )


def cmd_mldegree(args: Namespace, argv, timer: StageTimer) -> Output:
    spec = resolve_model(args)
    result = LikelihoodService.ml_degree(
        spec.require_implicit(),
        seed=args.seed,
        route=args.strategy,
        step4=args.step4,
        presaturate=args.presaturate,
        timer=timer,
    )
    report = _base_report(args, argv, spec, timer)
    report.ml_degree = result.degree
    report.certified = result.certified
    report.extra = {"colengths": result.colengths}
    return report


def cmd_critical(args: Namespace, argv, timer: StageTimer) -> Output:
    spec = resolve_model(args)
    implicit = spec.require_implicit()
    u = _data(args).check_length(implicit.ring.ngens)
    likelihood = LikelihoodService.likelihood_ideal(
        implicit,
        u,
        route=args.strategy,
        step4=args.step4,
        seed=args.seed,
        presaturate=args.presaturate,
        timer=timer,
    )
    with timer.stage("solve"):
        points = SolverService.solve_zero_dim(likelihood.ideal, tolerances_from(args), args.seed)
    report = _base_report(args, argv, spec, timer)
    report.solutions = [SolutionEntry.from_point(p) for p in points]
    report.extra = {"colength": likelihood.colength, "route": likelihood.route}
    return report


def cmd_maximize(args: Namespace, argv, timer: StageTimer) -> Output:
    spec = resolve_model(args)
    implicit = spec.require_implicit()
    u = _data(args).check_length(implicit.ring.ngens)
    result = CertifyService.find_local_maxima(
        implicit,
        u,
        route=args.strategy,
        step4=args.step4,
        seed=args.seed,
        presaturate=args.presaturate,
        tolerances=tolerances_from(args),
        timer=timer,
    )
    report = _base_report(args, argv, spec, timer)
    report.solutions = [SolutionEntry.from_point(p) for p in result.points]
    report.maxima = [MaximumEntry.from_report(m) for m in result.maxima]
    report.extra = {
        "colength": result.likelihood.colength,
        "positive": len(result.classification.positive),
        "inconclusive": sum(1 for c in result.certificates if c.status == "inconclusive"),
    }
    return report


def cmd_bound(args: Namespace, argv, timer: StageTimer) -> Output:
    try:
        degrees = [int(d) for d in args.degrees.split(",")]
    except ValueError:
        raise UsageError(
            f"--degrees expects comma-separated integers, got {args.degrees!r}",
            error_code="INVALID_SHAPE",
        ) from None
    shape = CIShape.of(args.n, degrees)
    report = _base_report(args, argv, None, timer)
    report.extra = {
        "n": shape.n,
        "degrees": list(shape.degrees),
        "D": BoundService.thom_number_D(shape),
        "bound": BoundService.ci_ml_bound(shape),
    }
    return report


def cmd_parametric(args: Namespace, argv, timer: StageTimer) -> Output:
    spec = resolve_model(args)
    model = spec.require_parametric()
    if getattr(args, "data", None):
        u = _data(args)
    else:
        u = DataVector.random(len(model.coords), np.random.default_rng(args.seed))
    u = u.check_length(len(model.coords))

    report = _base_report(args, argv, spec, timer)
    if model.implicit is not None and model.delta is not None and not args.no_check:
        consistency = ParametricService.parametric_ml_consistency(
            model, u, seed=args.seed, push_points=True, timer=timer
        )
        report.ml_degree = consistency.ml_degree
        report.certified = consistency.consistent
        report.extra = {
            "data": list(u.counts),
            "colength": consistency.colength,
            "delta": consistency.delta,
            "pushed_points": consistency.pushed_points,
            "matched_points": consistency.matched_points,
        }
        return report

    result = ParametricService.run(model, u, seed=args.seed, timer=timer)
    report.extra = {
        "data": list(u.counts),
        "J_dimension": result.J_dimension,
        "K_dimension": result.K_dimension,
        "colength": result.colength,
        "extraneous_removed": result.extraneous_removed,
        "K_u": [format_poly(g) for g in result.K_u.gb],
    }
    if result.colength is not None:
        with timer.stage("solve"):
            points = SolverService.solve_zero_dim(result.K_u, tolerances_from(args), args.seed)
        report.solutions = [SolutionEntry.from_point(p) for p in points]
    return report


def cmd_models(args: Namespace, argv, timer: StageTimer) -> Output:
    if args.action == "list":
        summaries = [get_model(name).summary() for name in catalog_names()]
        if args.format == "text":
            width = max(len(s["name"]) for s in summaries)
            return "\n".join(
                f"{s['name'].ljust(width)}  {s['kind']:<10} {s['tier']:<8} "
                f"{s['documented_ml_degree'] if s['documented_ml_degree'] is not None else '-':>4}  "
                f"{s['provenance']}"
                for s in summaries
            )
        report = _base_report(args, argv, None, timer)
        report.extra = {"models": summaries}
        return report

    if not args.name and not args.model_file:
        raise UsageError("models show needs a model name", error_code="MISSING_MODEL")
    spec = load_model_file(args.model_file) if args.model_file else get_model(args.name)
    if args.export:
        return export_model_text(spec)
    info = spec.summary()
    if spec.implicit is not None:
        info["generators"] = [format_poly(g) for g in spec.implicit.generators]
    if spec.fourier_generators:
        info["fourier_generators"] = [format_poly(g) for g in spec.fourier_generators]
    if spec.parametric is not None:
        info["coordinates"] = [format_poly(f) for f in spec.parametric.coords]
    report = _base_report(args, argv, spec, timer)
    report.extra = info
    return report


COMMANDS = {
    "mldegree": cmd_mldegree,
    "critical": cmd_critical,
    "maximize": cmd_maximize,
    "bound": cmd_bound,
    "parametric": cmd_parametric,
    "models": cmd_models,
}
