"""Deterministic SVG rendering of layouts and CSV emission for comparisons."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .model import Layout, compute_metrics, format_number, validate

PAD = 10.0  # px margin around the grid
GAP = 10.0  # px between bins


@dataclass(frozen=True)
class RenderOptions:
    pixels_per_unit: float = 10.0
    label_densities: bool = True
    bins_per_row: int = 3

    def __post_init__(self):
        if self.pixels_per_unit <= 0:
            raise ValueError(f"scale must be > 0, got {self.pixels_per_unit}")
        if self.bins_per_row < 1:
            raise ValueError(f"bins_per_row must be >= 1, got {self.bins_per_row}")


def bin_origin(slot: int, bin_side: float, options: RenderOptions) -> tuple[float, float]:
    """Top-left screen corner of the slot-th bin (0-based, row-major grid)."""
    s = options.pixels_per_unit
    col = slot % options.bins_per_row
    row = slot // options.bins_per_row
    return PAD + col * (bin_side * s + GAP), PAD + row * (bin_side * s + GAP)


def render_svg(layout: Layout, options: RenderOptions = RenderOptions()) -> str:
    """One square outline per non-empty bin, circles to scale, density labels.

    Refuses invalid layouts. Output is deterministic text; the screen
    transform is y-down with each bin's own origin from ``bin_origin``.
    """
    report = validate(layout)
    if not report.ok:
        raise ValueError(f"refusing to render an invalid layout:\n{report}")
    inst = layout.instance
    opts = options
    s = opts.pixels_per_unit
    side = inst.bin_side
    bins = layout.bins()
    order = sorted(bins)
    metrics = compute_metrics(layout)
    n_bins = len(order)
    cols = min(opts.bins_per_row, n_bins)
    rows = (n_bins + opts.bins_per_row - 1) // opts.bins_per_row
    width = 2 * PAD + cols * side * s + (cols - 1) * GAP
    height = 2 * PAD + rows * side * s + (rows - 1) * GAP

    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%s" height="%s" '
        'viewBox="0 0 %s %s">'
        % tuple(format_number(v) for v in (width, height, width, height))
    ]
    for slot, k in enumerate(order):
        ox, oy = bin_origin(slot, side, opts)
        out.append(
            '  <rect x="%s" y="%s" width="%s" height="%s" fill="none" '
            'stroke="black"/>'
            % tuple(format_number(v) for v in (ox, oy, side * s, side * s))
        )
        for p in bins[k]:
            out.append(
                '  <circle cx="%s" cy="%s" r="%s" fill="none" stroke="steelblue"/>'
                % tuple(
                    format_number(v)
                    for v in (
                        ox + p.x * s,
                        oy + (side - p.y) * s,
                        inst.radii[p.id] * s,
                    )
                )
            )
        if opts.label_densities:
            out.append(
                '  <text x="%s" y="%s" font-size="12">d=%.4f</text>'
                % (
                    format_number(ox + 2.0),
                    format_number(oy + 14.0),
                    metrics.bin_densities[slot],
                )
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_comparison_csv(
    results: list[tuple[str, str, float, int, list[float], float]],
) -> str:
    """Tabulate (instance, algorithm, f, K, bin densities, wall_time) rows.

    Densities are padded with empty cells to the widest row. When both a
    "gacoa" row and rows whose algorithm label starts with "alns" are
    present, the latter carry f_alns - f_gacoa in a trailing diff column.
    """
    max_bins = max((len(r[4]) for r in results), default=0)
    gacoa_f: dict[str, float] = {
        inst: f for inst, alg, f, _, _, _ in results if alg == "gacoa"
    }
    with_diff = bool(gacoa_f) and any(r[1].startswith("alns") for r in results)

    buf = io.StringIO()
    writer = csv.writer(buf)
    header = ["instance", "algorithm", "f", "K", "wall_time"]
    header += [f"d{i + 1}" for i in range(max_bins)]
    if with_diff:
        header.append("f_alns_minus_f_gacoa")
    writer.writerow(header)
    for inst, alg, f, k, densities, wall_time in results:
        row = [inst, alg, format_number(f), str(k), format_number(wall_time)]
        row += [format_number(d) for d in densities]
        row += [""] * (max_bins - len(densities))
        if with_diff:
            diff = ""
            if alg.startswith("alns") and inst in gacoa_f:
                diff = format_number(f - gacoa_f[inst])
            row.append(diff)
        writer.writerow(row)
    return buf.getvalue()
