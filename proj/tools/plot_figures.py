#!/usr/bin/env python3
"""Plot the CSV files written by irtr-lab. Usage: plot_figures.py OUT_DIR [PNG_DIR]"""

import csv
import pathlib
import sys


def read(path):
    with open(path) as f:
        rows = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(rows))


def column(rows, name):
    return [float(r[name]) for r in rows]


def main():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    src = pathlib.Path(sys.argv[1])
    dst = pathlib.Path(sys.argv[2]) if len(sys.argv) > 2 else src
    dst.mkdir(parents=True, exist_ok=True)

    if (p := src / "fig1_incompatibility.csv").exists():
        rows = read(p)
        plt.figure()
        plt.plot(column(rows, "theta2_over_sigma"), column(rows, "c_tilde_closed_form"))
        plt.xlabel("theta2 / sigma")
        plt.ylabel("c~")
        plt.savefig(dst / "fig1.png")

    if (p := src / "fig2_direct_imaging.csv").exists():
        rows = read(p)
        plt.figure()
        t = column(rows, "theta2_over_sigma")
        plt.plot(t, column(rows, "delta1"), label="delta1")
        plt.plot(t, column(rows, "delta2"), label="delta2")
        plt.xlabel("theta2 / sigma")
        plt.legend()
        plt.savefig(dst / "fig2.png")

    for name, points, x in (("fig4", "fig4_spade.csv", "theta1_over_sigma"), ("fig5", "fig5_random.csv", None)):
        if not (src / points).exists():
            continue
        rows = read(src / points)
        plt.figure()
        if x is None:
            plt.scatter(column(rows, "delta1"), column(rows, "delta2"), s=2)
        else:
            plt.plot(column(rows, "delta1"), column(rows, "delta2"), ".")
        front = read(src / f"{name}_frontier.csv")
        if front:
            plt.plot(column(front, "delta1"), column(front, "delta2"), "k-")
        plt.xlabel("delta1")
        plt.ylabel("delta2")
        plt.savefig(dst / f"{name}.png")

    panels = sorted(src.glob("fig3_panel*_frontier.csv"))
    if panels:
        summary = read(src / "fig3_panels.csv")
        fig, axes = plt.subplots(2, (len(panels) + 1) // 2, figsize=(12, 6))
        for ax, path, row in zip(axes.flat, panels, summary):
            front = read(path)
            if front:
                ax.plot(column(front, "delta1"), column(front, "delta2"), "k-")
            ax.plot([float(row["delta1"])], [float(row["delta2"])], "ro")
            ax.set_title(f"theta2 = {float(row['theta2_over_sigma']):g} sigma")
            ax.set_xlim(0, 1)
            ax.set_ylim(0, 1)
        fig.savefig(dst / "fig3.png")


if __name__ == "__main__":
    main()
