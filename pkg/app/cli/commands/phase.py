# app/cli/commands/phase.py
import argparse
import json
import logging
import sys

from app.cli.common import add_common_arguments, load_config, output_dir, provenance
from app.core.exceptions import ExitCode, ResumeMismatchError
from app.core.experiment import GridRunner, calibrate_c1, monotonicity_violations
from app.schemas import CellResult, GridSpec
from app.storage import GridRepository, atomic_write_text
from app.utils.svg import heatmap_svg
from app.workers.pool import WorkerPool

logger = logging.getLogger(__name__)


def cmd_phase(args: argparse.Namespace) -> int:
    """Сетка фазового перехода: JSON, CSV и тепловая карта"""
    spec = load_config(args.config, GridSpec, {"master_seed": args.seed})
    repo = GridRepository(output_dir(args.out, None))
    meta = provenance("phase", spec, spec.master_seed)

    resume = None
    if args.resume:
        resume = repo.load_partial()
        if resume is not None and resume.spec != spec:
            raise ResumeMismatchError(str(repo.partial_path))

    def on_progress(done: int, total: int, cell: CellResult):
        print(
            f"[{done}/{total}] {spec.axis1.name}={cell.axis1_value} "
            f"{spec.axis2.name}={cell.axis2_value} success={cell.success_freq:.2f}",
            file=sys.stderr,
        )

    with WorkerPool(args.threads) as pool:
        runner = GridRunner(
            spec,
            pool=pool,
            budget=args.budget,
            progress=on_progress,
            checkpoint=lambda partial: repo.save_partial(partial, meta),
        )
        result = runner.run(resume, str(repo.partial_path))

    repo.save_result(result, meta)
    atomic_write_text(repo.path("heatmap.svg"), heatmap_svg(result, meta))

    if "k" in (spec.axis1.name, spec.axis2.name):
        violations = monotonicity_violations(result)
        if violations:
            logger.warning(f"⚠️ Success frequency decreases along k in {len(violations)} places")
        if args.calibrate_c1:
            c1 = calibrate_c1(result)
            sys.stdout.write(json.dumps({"C1": c1}) + "\n")

    logger.info(f"✅ Grid result written to {repo.directory}")
    return ExitCode.OK


def register(subparsers):
    parser = subparsers.add_parser("phase", help="Сетка частоты успеха k×n или k×m")
    add_common_arguments(parser)
    parser.add_argument(
        "--resume", action="store_true", help="Продолжить с частичного результата в --out"
    )
    parser.add_argument(
        "--budget", type=float, help="Бюджет работы (иначе WORK_BUDGET из окружения)"
    )
    parser.add_argument(
        "--calibrate-c1",
        action="store_true",
        help="Вывести C1, подогнанную по границе перехода",
    )
    parser.set_defaults(handler=cmd_phase)
