# app/utils/svg.py
import io
import json
import math
from typing import Any, Dict, Optional

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from app.core.experiment import success_frequencies
from app.schemas import GridResult, TheoryReport, Trajectory

# Стабильные id элементов и текст как <text>: одинаковый вход даёт одинаковый SVG
RC_PARAMS = {"svg.hashsalt": "dip-convergence-lab", "svg.fonttype": "none"}


def _render(fig: Figure, title: str, provenance: Optional[Dict[str, Any]]) -> str:
    """SVG-документ с провенансом в <metadata> (dc:description)"""
    metadata: Dict[str, Any] = {"Title": title, "Date": None, "Creator": None}
    if provenance:
        metadata["Description"] = json.dumps(provenance, sort_keys=True, default=str)
    buffer = io.StringIO()
    with matplotlib.rc_context(RC_PARAMS):
        fig.savefig(buffer, format="svg", metadata=metadata)
    return buffer.getvalue()


def decay_curve_svg(
    trajectory: Trajectory,
    report: Optional[TheoryReport] = None,
    provenance: Optional[Dict[str, Any]] = None,
) -> str:
    """
    ‖y(t) − y‖ и ‖y(t) − ȳ‖ по t в логарифмической шкале; при наличии
    отчёта добавляется огибающая ‖y(0) − y‖·exp(−rate·t)
    """
    samples = [
        s for s in trajectory.samples if s.residual_y > 0 and math.isfinite(s.residual_y)
    ]
    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.add_subplot()
    ax.set_yscale("log")
    ax.set_xlabel("t")
    ax.set_ylabel("residual")
    ax.set_title("Residual decay")

    if samples:
        times = np.array([s.time for s in samples])
        ax.plot(times, [s.residual_y for s in samples], color="#1f4e9c", label="‖y(t) − y‖")
        ybar = [(s.time, s.residual_ybar) for s in samples if s.residual_ybar > 0]
        if ybar:
            t_bar, r_bar = zip(*ybar)
            ax.plot(t_bar, r_bar, color="#2a8c4a", label="‖y(t) − ȳ‖")
        if report is not None and report.rate > 0:
            grid = np.linspace(0.0, times[-1], 101)
            ax.plot(
                grid,
                samples[0].residual_y * np.exp(-report.rate * grid),
                color="#c0392b",
                linestyle="--",
                label="envelope",
            )
        ax.legend(loc="upper right")

    fig.tight_layout()
    return _render(fig, "Residual decay", provenance)


def heatmap_svg(result: GridResult, provenance: Optional[Dict[str, Any]] = None) -> str:
    """
    Тепловая карта частоты успеха: axis1 по вертикали, axis2 по горизонтали

    Клетка (i, j) подписана значением и получает id "cell-i-j";
    непосчитанные клетки остаются пустыми.
    """
    spec = result.spec
    rows, cols = spec.shape
    freq = success_frequencies(result)

    fig = Figure(figsize=(1.0 + 0.8 * cols, 1.0 + 0.6 * rows))
    ax = fig.add_subplot()
    cmap = matplotlib.colormaps["Greys"].copy()
    cmap.set_bad("#dddddd")
    image = ax.imshow(
        np.ma.masked_invalid(freq), origin="lower", cmap=cmap, vmin=0.0, vmax=1.0, aspect="auto"
    )
    fig.colorbar(image, ax=ax, label="success frequency")

    for i in range(rows):
        for j in range(cols):
            if math.isnan(freq[i, j]):
                continue
            ax.text(
                j,
                i,
                f"{freq[i, j]:.2f}",
                ha="center",
                va="center",
                fontsize=8,
                color="white" if freq[i, j] > 0.5 else "black",
                gid=f"cell-{i}-{j}",
            )

    ax.set_xticks(range(cols), [str(v) for v in spec.axis2.values])
    ax.set_yticks(range(rows), [str(v) for v in spec.axis1.values])
    ax.set_xlabel(spec.axis2.name)
    ax.set_ylabel(spec.axis1.name)
    ax.set_title("Success frequency")
    fig.tight_layout()
    return _render(fig, "Success frequency", provenance)
