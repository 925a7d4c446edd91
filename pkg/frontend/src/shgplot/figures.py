"""Static figure rendering: one labelled curve per input file versus zeta."""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .csvio import load_curves

# figure key -> (CSV column, reference line, y-axis label)
FIGURES = {
    "vxa": ("VXa", 1.0, r"$V(X_a)$"),
    "vxb": ("VXb", 1.0, r"$V(X_b)$"),
    "vyb": ("VYb", 1.0, r"$V(Y_b)$"),
    "ds-minus": ("DS_minus", 4.0, r"$V(X_a{-}X_b)+V(Y_a{+}Y_b)$"),
    "ds-plus": ("DS_plus", 4.0, r"$V(X_a{+}X_b)+V(Y_a{-}Y_b)$"),
    "epr-a": ("EPR_a", 1.0, r"$V^{inf}(X_a)\,V^{inf}(Y_a)$"),
    "epr-b": ("EPR_b", 1.0, r"$V^{inf}(X_b)\,V^{inf}(Y_b)$"),
}


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: which column, from which files, to which image."""

    figure: str
    inputs: list[str]
    labels: list[str]
    output: str
    error_bands: bool = False
    dpi: int = 150

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise ValueError(
                f"unknown figure {self.figure!r}; choose from {sorted(FIGURES)}"
            )


def render(spec: FigureSpec) -> str:
    """Draw the figure and write the image file; returns the output path."""
    column, reference, ylabel = FIGURES[spec.figure]
    curves = load_curves(spec.inputs, spec.labels, column)

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    try:
        for curve in curves:
            (line,) = ax.plot(curve.zeta, curve.value, label=curve.label)
            if spec.error_bands:
                ax.fill_between(
                    curve.zeta,
                    curve.value - curve.se,
                    curve.value + curve.se,
                    color=line.get_color(),
                    alpha=0.25,
                    linewidth=0,
                )
        ax.axhline(reference, color="black", linewidth=0.8, linestyle="--")
        ax.set_xlabel(r"$\zeta$")
        ax.set_ylabel(ylabel)
        ax.set_xlim(curves[0].zeta[0], curves[0].zeta[-1])
        if len(curves) > 1 or any(c.label for c in curves):
            ax.legend(frameon=False)
        fig.tight_layout()
        fig.savefig(spec.output, dpi=spec.dpi, metadata={"Software": None})
    finally:
        plt.close(fig)
    return spec.output
