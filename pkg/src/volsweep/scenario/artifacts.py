"""CSV artifacts.  Floats are written with 17 significant digits."""
import csv
from pathlib import Path
from typing import Iterable, List, Sequence

import numpy as np

from ..analysis import DependenceReport, EnvelopeReport, SlowResidual
from ..dynamics import Trajectory
from ..gronwall import BoundCurve


def _fmt(value) -> str:
    return f"{float(value):.17g}"


def write_csv(path: Path, header: Sequence[str], columns: Iterable[np.ndarray]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in data:
            writer.writerow([_fmt(v) for v in row])
    return path


def write_trajectory(path: Path, traj: Trajectory) -> Path:
    d = traj.dim
    header: List[str] = ["t"] + [f"x{i + 1}" for i in range(d)] + [f"d{i + 1}" for i in range(d)]
    columns = [traj.grid] + [traj.states[:, i] for i in range(d)] + [
        traj.derivatives[:, i] for i in range(d)
    ]
    return write_csv(path, header, columns)


def write_envelope(path: Path, report: EnvelopeReport, r: np.ndarray, theta: np.ndarray) -> Path:
    return write_csv(
        path,
        ["t", "‖x‖", "r", "‖d‖", "θ"],
        [report.grid, report.state_norms, r, report.speed_norms, theta],
    )


def write_dependence(path: Path, report: DependenceReport) -> Path:
    return write_csv(
        path,
        ["t", "measured", "bound", "Δ", "δ", "ε", "ν"],
        [
            report.grid,
            report.measured,
            report.bound,
            report.Delta,
            report.delta,
            report.epsilon,
            report.nu,
        ],
    )


def write_slow(path: Path, residual: SlowResidual) -> Path:
    return write_csv(path, ["t", "residual"], [residual.grid, residual.residuals])


def write_gronwall(path: Path, curve: BoundCurve) -> Path:
    return write_csv(path, ["t", "value"], [curve.grid, curve.values])
