"""Entanglement/squeezing curves along a bias scan."""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .io import ArtifactError, PlotSpec, read_state  # noqa: E402


def plot_state_scan(spec: PlotSpec) -> None:
    """Render one state-scan CSV to an image file.

    NaN rows (unstable points) break the curves into the stable windows.
    Single-point windows are still visible thanks to the markers.
    """
    b0, ent, squeeze = read_state(spec.input_csv)
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    n_finite = int(np.isfinite(ent).sum())
    marker = "o" if n_finite <= 2 else None
    ax.plot(b0, ent, color="black", ls="--", marker=marker, ms=3,
            label="entanglement")
    ax.plot(b0, squeeze, color="gray", ls="-", marker=marker, ms=3,
            label="squeezing")
    ax.set_xscale(spec.axes_scale[0])
    ax.set_xlabel("bias field B0 (T)")
    ax.set_ylabel("entanglement / squeezing")
    if len(b0) > 1:
        ax.set_xlim(b0[0], b0[-1])
    if n_finite == 0:
        ax.annotate("no stable points in scan", xy=(0.5, 0.5),
                    xycoords="axes fraction", ha="center")
        print("warning: scan has no stable points", file=sys.stderr)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.output_image, dpi=spec.dpi)
    plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-state",
        description="Render a state-scan CSV as entanglement/squeezing curves.")
    parser.add_argument("state_csv")
    parser.add_argument("-o", "--out", required=True,
                        help="output image (.png or .svg)")
    parser.add_argument("--dpi", type=int, default=150)
    parser.add_argument("--linear", action="store_true", help="linear x axis")
    args = parser.parse_args(argv)
    spec = PlotSpec(input_csv=args.state_csv, output_image=args.out,
                    axes_scale=(("linear" if args.linear else "log"), "linear"),
                    dpi=args.dpi)
    try:
        plot_state_scan(spec)
    except ArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
