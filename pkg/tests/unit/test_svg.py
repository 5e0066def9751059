# tests/unit/test_svg.py
from app.core.experiment import run_grid
from app.core.flow import run_flow
from app.core.theory import build_report
from app.schemas import FlowConfig, GridSpec
from app.utils.svg import decay_curve_svg, heatmap_svg

PROVENANCE = {"command": "solve", "seed": 7}


def test_decay_curve_with_envelope(small_net, small_problem):
    report = build_report(small_net, small_problem)
    cfg = FlowConfig(step_size=0.5, max_steps=40, loss_threshold=1e-30, record_every=5)
    svg = decay_curve_svg(run_flow(small_net, small_problem, cfg), report, PROVENANCE)
    assert svg.lstrip().startswith("<?xml")
    assert "envelope" in svg
    assert "&quot;command&quot;: &quot;solve&quot;" in svg or '"command": "solve"' in svg


def test_decay_curve_is_reproducible(small_net, small_problem):
    traj = run_flow(small_net, small_problem, FlowConfig(max_steps=10, record_every=5))
    assert decay_curve_svg(traj) == decay_curve_svg(traj)


def test_single_cell_heatmap():
    spec = GridSpec.model_validate(
        {
            "axis1": {"name": "k", "values": [10]},
            "axis2": {"name": "n", "values": [2]},
            "fixed": {"m": 1, "d": 2},
            "trials_per_cell": 2,
            "flow": {"loss_threshold": 1e6},
        }
    )
    svg = heatmap_svg(run_grid(spec))
    assert svg.count('id="cell-0-0"') == 1
    assert "1.00" in svg
