# app/cli/commands/theory.py
import argparse
import sys

from app.cli.common import add_common_arguments, build_instance, load_config, output_dir, provenance
from app.core.exceptions import ExitCode
from app.core.theory import build_report
from app.schemas import RunConfig
from app.storage import get_repository


def cmd_theory(args: argparse.Namespace) -> int:
    """TheoryReport начальной точки в stdout (и в --out, если задан)"""
    cfg = load_config(args.config, RunConfig, {"seed": args.seed})
    prob, net = build_instance(cfg)
    report = build_report(net, prob, cfg.c1, cfg.c2).model_copy(
        update={"provenance": provenance("theory", cfg, cfg.seed)}
    )
    if args.out:
        get_repository("report", output_dir(args.out, None)).save(report, "theory_report.json")
    sys.stdout.write(report.model_dump_json(indent=2) + "\n")
    return ExitCode.OK


def register(subparsers):
    parser = subparsers.add_parser("theory", help="Величины теоремы для начальной точки")
    add_common_arguments(parser)
    parser.set_defaults(handler=cmd_theory)
