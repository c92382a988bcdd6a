"""Phase-diagram heatmap with analytic-border overlays."""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import BoundaryNorm, ListedColormap  # noqa: E402

from .io import ArtifactError, PlotSpec, read_borders, read_sweep  # noqa: E402

# classification colors: unstable, EdH, A, marginal
CMAP = ListedColormap(["#f2f2f2", "#d62728", "#1f77b4", "#ff7f0e"])
NORM = BoundaryNorm([-0.5, 0.5, 1.5, 2.5, 3.5], CMAP.N)


def _edges(axis: np.ndarray, scale: str) -> np.ndarray:
    if scale == "log":
        mid = np.sqrt(axis[:-1] * axis[1:])
        first = axis[0] ** 2 / mid[0]
        last = axis[-1] ** 2 / mid[-1]
    else:
        mid = (axis[:-1] + axis[1:]) / 2
        first = 2 * axis[0] - mid[0]
        last = 2 * axis[-1] - mid[-1]
    return np.concatenate([[first], mid, [last]])


def plot_phase_diagram(spec: PlotSpec) -> None:
    """Render one sweep CSV (plus optional borders JSON) to an image file."""
    b0, r, grid = read_sweep(spec.input_csv)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.pcolormesh(_edges(b0, spec.axes_scale[0]), _edges(r, spec.axes_scale[1]),
                  grid, cmap=CMAP, norm=NORM, shading="flat")
    ax.set_xscale(spec.axes_scale[0])
    ax.set_yscale(spec.axes_scale[1])
    ax.set_xlabel("bias field B0 (T)")
    ax.set_ylabel("radius R (m)")
    ax.set_xlim(b0[0], b0[-1])
    ax.set_ylim(r[0], r[-1])

    if spec.borders_json:
        borders = read_borders(spec.borders_json)
        ax.axvline(borders["B_c1"], color="red", ls="--", lw=1.2, label="B_c1")
        ax.axvline(borders["B_c2"], color="red", ls="--", lw=1.2, label="B_c2")
        samples = np.asarray(borders["R_c_samples"], dtype=float)
        inside = samples[:, 1] <= r[-1] * 1.05
        ax.plot(samples[inside, 0], samples[inside, 1],
                color="red", ls="--", lw=1.2, label="R_c(B0)")
    else:
        print("warning: no borders file given, skipping overlays", file=sys.stderr)

    handles = [plt.Rectangle((0, 0), 1, 1, fc=CMAP.colors[k]) for k in (1, 2, 0)]
    ax.legend(handles, ["EdH phase", "A phase", "unstable"],
              loc="upper right", fontsize=8, framealpha=0.9)
    fig.tight_layout()
    fig.savefig(spec.output_image, dpi=spec.dpi)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-phase", description="Render a stability-sweep CSV as a heatmap.")
    parser.add_argument("sweep_csv")
    parser.add_argument("borders_json", nargs="?", default=None)
    parser.add_argument("-o", "--out", required=True,
                        help="output image (.png or .svg)")
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument("--linear", action="store_true", help="linear axes")
    args = parser.parse_args(argv)
    scale = ("linear", "linear") if args.linear else ("log", "log")
    spec = PlotSpec(input_csv=args.sweep_csv, borders_json=args.borders_json,
                    output_image=args.out, axes_scale=scale, dpi=args.dpi)
    try:
        plot_phase_diagram(spec)
    except ArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
