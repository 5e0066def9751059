# scripts/reproduce_figures.py
import argparse
import json
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

from app.core.experiment import calibrate_c1, early_stopping_experiment, run_grid
from app.schemas import ExperimentParams, FlowConfig, GridSpec
from app.storage import GridRepository, atomic_write_text, get_repository
from app.utils.logging import setup_logging
from app.utils.svg import heatmap_svg
from app.workers.pool import WorkerPool

ROOT = Path(__file__).parent.parent
GRIDS = {
    "k_by_n": ROOT / "configs" / "grid_k_by_n.json",
    "k_by_m": ROOT / "configs" / "grid_k_by_m.json",
}

# Режим, где условие на начальную невязку выполнимо при сигмоиде
EARLY_STOPPING = ExperimentParams(
    m=1,
    n=2,
    k=20000,
    d=20,
    activation="sigmoid",
    flow=FlowConfig(step_size=0.05, max_steps=200000, record_every=1000),
)


def reproduce_grid(name: str, out: Path, pool: WorkerPool):
    spec = GridSpec.model_validate_json(GRIDS[name].read_text(encoding="utf-8"))
    repo = GridRepository(out / name)
    print(f"🔄 Сетка {name}: {spec.shape[0]}x{spec.shape[1]} клеток")
    result = run_grid(spec, pool=pool, checkpoint=repo.save_partial, resume=repo.load_partial())
    meta = {"script": "reproduce_figures", "grid": name, "config": spec.model_dump(mode="json")}
    repo.save_result(result, meta)
    atomic_write_text(repo.path("heatmap.svg"), heatmap_svg(result, meta))
    try:
        print(f"✅ {name}: C1 ≈ {calibrate_c1(result):.3g}")
    except Exception as e:
        print(f"⚠️ {name}: калибровка C1 не удалась: {e}")


def main():
    parser = argparse.ArgumentParser(description="Воспроизведение сеток и ранней остановки")
    parser.add_argument("--out", default=str(ROOT / "runs" / "figures"))
    parser.add_argument("--threads", type=int)
    parser.add_argument("--only", choices=list(GRIDS) + ["early_stopping"])
    args = parser.parse_args()

    setup_logging()
    out = Path(args.out)
    with WorkerPool(args.threads) as pool:
        for name in GRIDS:
            if args.only in (None, name):
                reproduce_grid(name, out, pool)

        if args.only in (None, "early_stopping"):
            print("🔄 Ранняя остановка при ‖ε‖ = 0.1‖ȳ‖...")
            summary = early_stopping_experiment(EARLY_STOPPING, 0.1, 20, seed=11, pool=pool)
            meta = {"script": "reproduce_figures", "noise_level": 0.1, "trials": 20, "seed": 11}
            get_repository("early_stopping", out).save(summary, "early_stopping.json", meta)
            print(
                f"✅ {summary.successes}/{summary.premise_met} испытаний в пределах 2‖ε‖ "
                f"(исключено {summary.premise_unmet})"
            )
            print(json.dumps({"fraction": summary.fraction}))


if __name__ == "__main__":
    main()
