# app/cli/commands/verify.py
import argparse
import logging
import sys

from app.application.config import theory_settings
from app.cli.common import add_common_arguments, load_config, output_dir, provenance
from app.core.activation import get_activation
from app.core.exceptions import ExitCode
from app.core.model import V_DISTRIBUTIONS
from app.core.problem import make_problem
from app.core.theory import (
    chernoff_required_k,
    probe_init_error,
    probe_lipschitz,
    probe_sigma_min_concentration,
)
from app.schemas import ProbeConfig, VerifySummary
from app.storage import get_repository
from app.workers.pool import WorkerPool

logger = logging.getLogger(__name__)


def _failure_target(cfg: ProbeConfig) -> float:
    if cfg.target_failure is not None:
        return cfg.target_failure
    return 1.0 / cfg.n if cfg.n > 1 else theory_settings.CHERNOFF_FALLBACK_FAILURE


def cmd_verify(args: argparse.Namespace) -> int:
    """Проверки трёх лемм; код 5, если хотя бы одна не прошла"""
    cfg = load_config(args.config, ProbeConfig, {"seed": args.seed, "output_dir": args.out})
    out = output_dir(args.out, cfg.output_dir)
    activation = get_activation(cfg.activation)
    D = V_DISTRIBUTIONS[cfg.v_distribution][1]
    target = _failure_target(cfg)
    k = cfg.k or chernoff_required_k(cfg.n, activation, D, target)
    logger.info(f"🚀 Verifying lemmas at k={k} (target failure {target:.3g})")

    def problem_factory(seed: int):
        return make_problem(cfg.m, cfg.n, cfg.noise_level, seed, operator_kind=cfg.operator_kind)

    with WorkerPool(args.threads) as pool:
        sigma = probe_sigma_min_concentration(
            k,
            cfg.d,
            cfg.n,
            activation,
            cfg.trials,
            cfg.seed,
            cfg.v_distribution,
            min_fraction=1.0 - 2.0 * target,
            pool=pool,
        )
        lipschitz = probe_lipschitz(
            k, cfg.d, cfg.n, activation, cfg.lipschitz_pairs, cfg.seed, cfg.v_distribution, pool
        )
        init_error = probe_init_error(
            k,
            cfg.d,
            cfg.n,
            cfg.m,
            activation,
            problem_factory,
            cfg.trials,
            cfg.seed,
            cfg.v_distribution,
            pool=pool,
        )

    summary = VerifySummary(
        lemma2_sigma_min=sigma,
        lemma3_lipschitz=lipschitz,
        lemma4_init_error=init_error,
        all_passed=sigma.passed and lipschitz.passed and init_error.passed,
    )
    meta = provenance("verify", cfg, cfg.seed)
    meta["k"] = k
    get_repository("verify", out).save(summary, "verify_summary.json", meta)
    sys.stdout.write(summary.model_dump_json(indent=2) + "\n")

    if not summary.all_passed:
        failed = [p.name for p in (sigma, lipschitz, init_error) if not p.passed]
        logger.warning(f"⚠️ Failed probes: {failed}")
        return ExitCode.VERIFICATION_FAILED
    logger.info("✅ All lemma probes passed")
    return ExitCode.OK


def register(subparsers):
    parser = subparsers.add_parser("verify", help="Вероятностные проверки лемм")
    add_common_arguments(parser)
    parser.set_defaults(handler=cmd_verify)
