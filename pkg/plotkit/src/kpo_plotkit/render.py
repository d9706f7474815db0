"""Rendering of kpo-spectro CSV artifacts into the paper's figure types."""

import os
from importlib import resources

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from .specs import PlotSpec, SpecError

_SAVEFIG_METADATA = {"Software": "kpo-plotkit"}


def _default_style() -> str:
    return str(resources.files("kpo_plotkit") / "styles" / "paper.mplstyle")


def _read_csv(path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def _need(frame: pd.DataFrame, columns, path):
    for column in columns:
        if column not in frame.columns:
            raise SpecError(f"{path}: missing required column {column!r}")


def _apply_cosmetics(ax, spec: PlotSpec, default_x=None, default_y=None):
    ax.set_xlabel(spec.x_label or default_x or "")
    ax.set_ylabel(spec.y_label or default_y or "")
    if spec.x_range:
        ax.set_xlim(*spec.x_range)
    if spec.y_range:
        ax.set_ylim(*spec.y_range)


def _save(fig, spec: PlotSpec) -> str:
    directory = os.path.dirname(spec.output)
    if directory:
        os.makedirs(directory, exist_ok=True)
    fig.savefig(spec.output, metadata=_SAVEFIG_METADATA)
    plt.close(fig)
    return spec.output


def _render_heatmap(spec: PlotSpec):
    frame = _read_csv(spec.inputs[0])
    x_col = "omega_in_minus_omega_p_half_over_2pi_MHz"
    y_col = "beta_over_2pi_MHz"
    _need(frame, [x_col, y_col, "abs_gamma"], spec.inputs[0])
    table = frame.pivot_table(index=y_col, columns=x_col, values="abs_gamma",
                              sort=True)
    fig, ax = plt.subplots()
    mesh = ax.pcolormesh(table.columns.to_numpy(), table.index.to_numpy(),
                         table.to_numpy(), shading="nearest")
    fig.colorbar(mesh, ax=ax, label=r"$|\Gamma|$")
    if spec.overlay is not None:
        curves = _read_csv(spec.overlay)
        _need(curves, ["beta_over_2pi_MHz", "m", "n",
                       "delta_omega_over_2pi_MHz"], spec.overlay)
        wanted = spec.overlay_transitions
        for (m, n), group in sorted(curves.groupby(["m", "n"])):
            if wanted is not None and (m, n) not in wanted:
                continue
            ax.plot(group["delta_omega_over_2pi_MHz"], group["beta_over_2pi_MHz"],
                    lw=0.9, ls="--", color="white", alpha=0.85)
            ax.annotate(f"{m}→{n}",
                        (group["delta_omega_over_2pi_MHz"].iloc[-1],
                         group["beta_over_2pi_MHz"].iloc[-1]),
                        color="white", fontsize=7,
                        xytext=(2, -6), textcoords="offset points")
    if spec.title:
        ax.set_title(spec.title)
    _apply_cosmetics(ax, spec,
                     default_x=r"$(\omega_{in}-\omega_p/2)/2\pi$ (MHz)",
                     default_y=r"$\beta/2\pi$ (MHz)")
    return _save(fig, spec)


def _render_levels(spec: PlotSpec):
    frame = _read_csv(spec.inputs[0])
    _need(frame, ["beta_over_2pi_MHz"], spec.inputs[0])
    omega_cols = [c for c in frame.columns
                  if c.startswith("omega_") and c.endswith("_over_2pi_MHz")]
    if not omega_cols:
        raise SpecError(f"{spec.inputs[0]}: missing required column 'omega_*_over_2pi_MHz'")
    fig, ax = plt.subplots()
    for column in omega_cols:
        label = column.split("_")[1]
        parity_col = f"parity_{label}"
        parity = frame[parity_col].iloc[0] if parity_col in frame.columns else "even"
        ax.plot(frame["beta_over_2pi_MHz"], frame[column],
                ls="-" if parity == "even" else "--",
                label=rf"$|\tilde{{{label}}}\rangle$ ({parity})")
    ax.legend(fontsize=8)
    if spec.title:
        ax.set_title(spec.title)
    _apply_cosmetics(ax, spec, default_x=r"$\beta/2\pi$ (MHz)",
                     default_y=r"$\omega_{\tilde m}/2\pi$ (MHz)")
    return _save(fig, spec)


def _render_lines(spec: PlotSpec):
    frame = _read_csv(spec.inputs[0])
    _need(frame, ["beta_over_2pi_MHz"], spec.inputs[0])
    x = "beta_over_2pi_MHz"
    if {"m", "n"} <= set(frame.columns):
        value_cols = [c for c in frame.columns if c not in (x, "m", "n")]
        fig, axes = plt.subplots(len(value_cols), 1, sharex=True, squeeze=False)
        for ax, column in zip(axes[:, 0], value_cols):
            for (m, n), group in sorted(frame.groupby(["m", "n"])):
                if np.abs(group[column]).max() < 1e-12:
                    continue  # parity-forbidden transitions are identically zero
                ax.plot(group[x], group[column],
                        label=rf"$|\tilde{{{m}}}\rangle\to|\tilde{{{n}}}\rangle$")
            ax.set_ylabel(column)
            ax.legend(fontsize=7)
        _apply_cosmetics(axes[-1, 0], spec, default_x=r"$\beta/2\pi$ (MHz)",
                         default_y=value_cols[-1])
        axes[-1, 0].set_ylabel(value_cols[-1])
        if spec.title:
            axes[0, 0].set_title(spec.title)
    else:
        fig, ax = plt.subplots()
        for column in frame.columns:
            if column == x:
                continue
            ax.plot(frame[x], frame[column], label=column)
        ax.legend(fontsize=8)
        if spec.title:
            ax.set_title(spec.title)
        _apply_cosmetics(ax, spec, default_x=r"$\beta/2\pi$ (MHz)")
    return _save(fig, spec)


def _beta_annotation(path) -> str | None:
    with open(path) as fh:
        for line in fh:
            if not line.startswith("#"):
                return None
            if line.startswith("# beta_over_2pi_MHz:"):
                return line.split(":", 1)[1].strip()
    return None


def _render_wigner_panels(spec: PlotSpec):
    frames = []
    for path in spec.inputs:
        frame = _read_csv(path)
        _need(frame, ["x", "p", "w"], path)
        frames.append(frame)
    n_panels = len(frames)
    fig, axes = plt.subplots(1, n_panels, figsize=(3.0 * n_panels, 3.0),
                             squeeze=False)
    w_max = max(frame["w"].abs().max() for frame in frames)
    mesh = None
    for ax, frame, path in zip(axes[0], frames, spec.inputs):
        table = frame.pivot_table(index="p", columns="x", values="w", sort=True)
        mesh = ax.pcolormesh(table.columns.to_numpy(), table.index.to_numpy(),
                             table.to_numpy(), cmap="RdBu_r",
                             vmin=-w_max, vmax=w_max, shading="nearest")
        ax.set_aspect("equal")
        ax.set_xlabel(spec.x_label or "x")
        beta = _beta_annotation(path)
        if beta is not None:
            ax.set_title(rf"$\beta/2\pi$ = {beta} MHz", fontsize=9)
    axes[0, 0].set_ylabel(spec.y_label or "p")
    fig.colorbar(mesh, ax=list(axes[0]), label="W", shrink=0.85)
    if spec.title:
        fig.suptitle(spec.title)
    return _save(fig, spec)


_RENDERERS = {
    "heatmap": _render_heatmap,
    "levels": _render_levels,
    "lines": _render_lines,
    "wigner-panels": _render_wigner_panels,
}


def render(spec: PlotSpec) -> str:
    """Render one spec to its output image; returns the written path."""
    style = spec.style or _default_style()
    with plt.style.context(style):
        return _RENDERERS[spec.kind](spec)
