"""Telemetry files: one CSV per run and whitespace-separated plot panels."""

import csv
import json
from pathlib import Path
from typing import Any, Callable, NamedTuple, Sequence

import numpy as np

from mrpsim.common.exceptions import EmptyRecordsError
from mrpsim.harness.records import SimRecord

CSV_HEADER = (
    "t",
    "se1",
    "se2",
    "se3",
    "we1",
    "we2",
    "we3",
    "theta",
    "u1",
    "u2",
    "u3",
    "s1",
    "s2",
    "s3",
    "rho",
    "g",
    "h",
    "gamma2",
    "v",
    "V1",
    "V2",
    "roll",
    "pitch",
    "yaw",
)


def csv_row(record: SimRecord) -> list[float]:
    d = record.diag
    return [
        record.t,
        *record.sigma_e,
        *record.omega_e,
        record.theta,
        *record.u,
        *d.s,
        d.rho,
        d.g,
        d.h,
        d.gamma2,
        record.v,
        record.V1,
        record.V2,
        record.euler.roll,
        record.euler.pitch,
        record.euler.yaw,
    ]


def emit_csv(records: Sequence[SimRecord], path: Path, digits: int = 9) -> Path:
    """Write one CSV row per record.

    Raises:
        EmptyRecordsError: If ``records`` is empty.
        OSError: If the file cannot be written; the message names the path.
    """
    if not records:
        raise EmptyRecordsError("no records to write")
    path = Path(path)
    fmt = f"{{:.{digits}g}}"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for record in records:
                writer.writerow([fmt.format(float(x)) for x in csv_row(record)])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


class Panel(NamedTuple):
    name: str
    title: str
    y_label: str
    columns: list[str]
    values: Callable[[SimRecord], Sequence[float]]

    @property
    def file_name(self) -> str:
        return f"{self.name}.dat"


PANELS = (
    Panel("theta", "Rotation angle", "theta [rad]", ["theta"], lambda r: [r.theta]),
    Panel(
        "omega",
        "Angular velocity error",
        "omega_e [rad/s]",
        ["we1", "we2", "we3"],
        lambda r: list(r.omega_e),
    ),
    Panel(
        "euler",
        "Euler angles (3-2-1)",
        "angle [rad]",
        ["roll", "pitch", "yaw"],
        lambda r: [r.euler.roll, r.euler.pitch, r.euler.yaw],
    ),
    Panel("torque", "Control torque", "u [N m]", ["u1", "u2", "u3"], lambda r: list(r.u)),
    Panel(
        "sliding",
        "Switching function and Lyapunov functions",
        "value",
        ["s1", "s2", "s3", "V1", "V2"],
        lambda r: [*r.diag.s, r.V1, r.V2],
    ),
)


def emit_plot_data(records: Sequence[SimRecord], directory: Path, digits: int = 9) -> list[Path]:
    """Write one data file per figure panel plus ``manifest.json``.

    Each ``.dat`` file has a ``#`` header line naming its columns, time first.

    Raises:
        EmptyRecordsError: If ``records`` is empty; nothing is written.
        OSError: If a file cannot be written; the message names the path.
    """
    if not records:
        raise EmptyRecordsError("no records to plot")
    directory = Path(directory)
    t = np.array([r.t for r in records])
    written: list[Path] = []
    manifest: dict[str, Any] = {"x_label": "t [s]", "panels": []}

    path = directory
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for panel in PANELS:
            path = directory / panel.file_name
            data = np.column_stack([t, np.array([panel.values(r) for r in records])])
            np.savetxt(path, data, fmt=f"%.{digits}g", header=" ".join(["t", *panel.columns]))
            written.append(path)
            manifest["panels"].append(
                {
                    "file": panel.file_name,
                    "title": panel.title,
                    "x_label": "t [s]",
                    "y_label": panel.y_label,
                    "columns": ["t", *panel.columns],
                }
            )
        path = directory / "manifest.json"
        path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
        written.append(path)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return written
