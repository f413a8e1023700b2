"""CSV tables with ``#`` comment headers, run manifests and optional SVG plots."""

from __future__ import annotations

import io
import json
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Sequence

from . import __version__


def fmt(x: Any) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x + 0.0, ".17g")
    try:
        import numpy as np

        if isinstance(x, np.integer):
            return str(int(x))
        if isinstance(x, np.floating):
            return format(float(x) + 0.0, ".17g")
    except ImportError:  # pragma: no cover
        pass
    return str(x)


def render_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]], comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def read_csv(path) -> tuple[list[str], list[str], list[list[str]]]:
    """Split a CSV written by :func:`render_csv` into comments, header and rows."""
    comments, header, rows = [], None, []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            comments.append(line[1:].strip())
        elif header is None:
            header = line.split(",")
        elif line:
            rows.append(line.split(","))
    return comments, header or [], rows


@dataclass
class RunManifest:
    command: str
    params: dict
    seed: int | None
    tool_version: str = __version__
    started_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())


def manifest_path(out: Path) -> Path:
    return out.with_suffix(".manifest.json")


def emit(text: str, out: str | None, manifest: RunManifest) -> Path | None:
    """Write the table to ``out`` with a sibling manifest, or to stdout."""
    if out is None:
        sys.stdout.write(text)
        return None
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    manifest_path(path).write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n")
    return path


def render_svg(csv_path: Path, svg_path: Path | None = None) -> Path:
    """Line plot of every numeric column against the first one."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    comments, header, rows = read_csv(csv_path)
    cols = list(zip(*rows)) if rows else []

    def as_float(col):
        try:
            return [float(v) for v in col]
        except ValueError:
            return None

    x = as_float(cols[0]) if cols else None
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if x is not None:
        for name, col in zip(header[1:], cols[1:]):
            y = as_float(col)
            if y is not None:
                ax.plot(x, y, label=name)
        ax.set_xlabel(header[0])
        ax.legend(fontsize="small")
    ax.set_title(csv_path.stem)
    svg_path = svg_path or csv_path.with_suffix(".svg")
    fig.savefig(svg_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return svg_path
