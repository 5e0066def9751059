# app/cli/commands/solve.py
import argparse
import logging

from app.cli.common import add_common_arguments, build_instance, load_config, output_dir, provenance
from app.core.exceptions import ExitCode
from app.core.flow import run_flow
from app.core.model import to_snapshot
from app.core.problem import to_snapshot as problem_snapshot
from app.core.theory import build_report
from app.schemas import FlowOutcome, RunConfig
from app.storage import TRAJECTORY_FILE, atomic_write_text, get_repository
from app.utils.svg import decay_curve_svg

logger = logging.getLogger(__name__)

OUTCOME_EXIT = {
    FlowOutcome.CONVERGED: ExitCode.CONVERGED,
    FlowOutcome.STEP_CAP: ExitCode.STEP_CAP,
    FlowOutcome.DIVERGED: ExitCode.DIVERGED,
}


def cmd_solve(args: argparse.Namespace) -> int:
    """Один запуск потока: траектория, отчёт, кривая спада, снимки сети и задачи"""
    cfg = load_config(args.config, RunConfig, {"seed": args.seed, "output_dir": args.out})
    out = output_dir(args.out, cfg.output_dir)
    meta = provenance("solve", cfg, cfg.seed)

    prob, net = build_instance(cfg)
    report = build_report(net, prob, cfg.c1, cfg.c2)
    trajectory = run_flow(net, prob, cfg.flow)

    get_repository("trajectory", out).save(trajectory, TRAJECTORY_FILE, meta)
    get_repository("report", out).save(report, "theory_report.json", meta)
    atomic_write_text(out / "decay_curve.svg", decay_curve_svg(trajectory, report, meta))
    get_repository("network", out).save(
        to_snapshot(net, include_matrices=args.save_weights), "network.json"
    )
    get_repository("problem", out).save(
        problem_snapshot(prob, include_matrices=args.save_weights), "problem.json"
    )

    final = trajectory.final
    logger.info(
        f"✅ Solve finished: outcome={trajectory.outcome.value}, steps={trajectory.steps_taken}, "
        f"loss={final.loss:.3e}, artifacts in {out}"
    )
    print(
        f"{trajectory.outcome.value} steps={trajectory.steps_taken} "
        f"loss={final.loss:.6e} condition_eq5={report.condition_eq5}"
    )
    return OUTCOME_EXIT[trajectory.outcome]


def register(subparsers):
    parser = subparsers.add_parser("solve", help="Один запуск градиентного потока")
    add_common_arguments(parser)
    parser.add_argument(
        "--save-weights",
        action="store_true",
        help="Записать матрицы сети в network.json и A, x̄, ε в problem.json",
    )
    parser.set_defaults(handler=cmd_solve)
