r"""
File outputs for meshes: SVG cell plots, statistics, and decay reports.

The SVG draws one stroke-only path per cell in the geometric embedding of
the fundamental domain, with the viewBox fitted to the embedded domain and
the y axis flipped to mathematical orientation.  No timestamps or other
run-dependent bytes are emitted, so equal meshes render to equal files.

Alongside the SVG, `write_mesh_outputs` emits the statistics JSON, a
per-depth decay table as CSV, and a log-scale decay figure as PNG.  All
floating-point values are printed with 12 significant digits.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction

from .crystal import embed_point
from .mesh import MeshResult

__all__ = ["format_float", "mesh_svg", "mesh_stats", "write_mesh_outputs"]


def format_float(x: float) -> str:
    return f"{x:.12g}"


def _rounded(x: float) -> float:
    # Round through the 12-digit decimal form so JSON output carries
    # exactly the printed precision.
    return float(format_float(x))


def _domain_size(geometry: str) -> tuple[float, float]:
    corners = [(0, 0), (1, 0), (1, 1), (0, 1)]
    embedded = [embed_point(Fraction(x), Fraction(y), geometry) for x, y in corners]
    return max(p[0] for p in embedded), max(p[1] for p in embedded)


def mesh_svg(result: MeshResult) -> str:
    """Render the mesh cells as a standalone SVG document."""
    width, height = _domain_size(result.geometry)
    stroke = 0.002 * max(width, height)
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {format_float(width)} {format_float(height)}">'
    ]
    for cell in result.cells:
        steps = []
        for i, vertex in enumerate(cell):
            x, y = embed_point(vertex.x, vertex.y, result.geometry)
            command = "M" if i == 0 else "L"
            steps.append(f"{command} {format_float(x)} {format_float(height - y)}")
        steps.append("Z")
        lines.append(
            f'<path d="{" ".join(steps)}" fill="none" stroke="black" '
            f'stroke-width="{format_float(stroke)}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def mesh_stats(result: MeshResult) -> dict:
    """Statistics block for one mesh, floats rounded to printed precision."""
    return {
        "depth": result.depth,
        "max_diam": _rounded(result.max_diam),
        "max_diam_euclid": _rounded(result.max_diam_euclid),
        "cells": result.cell_count,
        "max_diams": [_rounded(d) for d in result.max_diams],
        "max_diams_euclid": [_rounded(d) for d in result.max_diams_euclid],
        "cell_counts": list(result.cell_counts),
    }


def _write_decay_csv(result: MeshResult, path: str) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["depth", "cells", "max_diam", "max_diam_euclid"])
        for n in range(result.depth + 1):
            writer.writerow(
                [
                    n,
                    result.cell_counts[n],
                    format_float(result.max_diams[n]),
                    format_float(result.max_diams_euclid[n]),
                ]
            )


def _write_decay_figure(result: MeshResult, path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    depths = list(range(result.depth + 1))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(depths, result.max_diams, marker="o", label="Chebyshev")
    ax.semilogy(depths, result.max_diams_euclid, marker="s", label="Euclidean")
    ax.set_xlabel("depth")
    ax.set_ylabel("max cell diameter")
    ax.set_title("Preimage mesh diameter decay")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_mesh_outputs(result: MeshResult, svg_path: str) -> dict:
    """Write the SVG plus its companion stats, CSV and figure files.

    Companions live next to the SVG: for out.svg they are out.stats.json,
    out.decay.csv and out.decay.png.  Returns {"stats": block,
    "files": {kind: path}}.
    """
    base = svg_path[:-4] if svg_path.endswith(".svg") else svg_path
    paths = {
        "svg": base + ".svg",
        "stats": base + ".stats.json",
        "csv": base + ".decay.csv",
        "png": base + ".decay.png",
    }
    with open(paths["svg"], "w") as handle:
        handle.write(mesh_svg(result))
    stats = mesh_stats(result)
    with open(paths["stats"], "w") as handle:
        json.dump(stats, handle, indent=2)
        handle.write("\n")
    _write_decay_csv(result, paths["csv"])
    _write_decay_figure(result, paths["png"])
    return {"stats": stats, "files": paths}
