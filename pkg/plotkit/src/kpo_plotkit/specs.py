"""Plot specification documents.

A spec is a JSON object naming the plot kind, the input CSV artifact(s) from
kpo-spectro, optional overlay data, axis cosmetics, and the output image
path.  Relative paths resolve against a base directory chosen by the caller
(the CLI default is the current working directory).
"""

import json
import os
from dataclasses import dataclass, field

KINDS = ("heatmap", "lines", "wigner-panels", "levels")


class SpecError(ValueError):
    """Malformed plot spec or incompatible input schema."""


@dataclass(frozen=True)
class PlotSpec:
    kind: str
    inputs: tuple
    output: str
    overlay: str | None = None
    overlay_transitions: tuple | None = None
    x_label: str | None = None
    y_label: str | None = None
    x_range: tuple | None = None
    y_range: tuple | None = None
    title: str | None = None
    style: str | None = None
    options: dict = field(default_factory=dict)


def load_spec(path, base_dir=None) -> PlotSpec:
    with open(path) as fh:
        raw = json.load(fh)
    base = base_dir if base_dir is not None else os.getcwd()
    return parse_spec(raw, base)


def _resolve(base, path):
    return path if os.path.isabs(path) else os.path.join(base, path)


def parse_spec(raw: dict, base_dir: str) -> PlotSpec:
    kind = raw.get("kind")
    if kind not in KINDS:
        raise SpecError(f"kind must be one of {KINDS}, got {kind!r}")
    inputs = raw.get("input_csv")
    if isinstance(inputs, str):
        inputs = [inputs]
    if not isinstance(inputs, list) or not inputs:
        raise SpecError("input_csv must be a path or a non-empty list of paths")
    inputs = tuple(_resolve(base_dir, p) for p in inputs)
    for p in inputs:
        if not os.path.isfile(p):
            raise SpecError(f"input CSV does not exist: {p}")
    output = raw.get("output")
    if not isinstance(output, str) or not output:
        raise SpecError("output must be a non-empty path")
    overlay = raw.get("overlay_csv")
    if overlay is not None:
        overlay = _resolve(base_dir, overlay)
        if not os.path.isfile(overlay):
            raise SpecError(f"overlay CSV does not exist: {overlay}")
    transitions = raw.get("overlay_transitions")
    if transitions is not None:
        transitions = tuple((int(m), int(n)) for m, n in transitions)
    ranges = {}
    for key in ("x_range", "y_range"):
        value = raw.get(key)
        if value is not None:
            if (not isinstance(value, list) or len(value) != 2):
                raise SpecError(f"{key} must be [min, max]")
            value = tuple(float(v) for v in value)
        ranges[key] = value
    style = raw.get("style")
    if style is not None:
        style = _resolve(base_dir, style)
    known = {"kind", "input_csv", "output", "overlay_csv", "overlay_transitions",
             "x_label", "y_label", "x_range", "y_range", "title", "style"}
    options = {k: v for k, v in raw.items() if k not in known}
    return PlotSpec(
        kind=kind,
        inputs=inputs,
        output=_resolve(base_dir, output),
        overlay=overlay,
        overlay_transitions=transitions,
        x_label=raw.get("x_label"),
        y_label=raw.get("y_label"),
        x_range=ranges["x_range"],
        y_range=ranges["y_range"],
        title=raw.get("title"),
        style=style,
        options=options,
    )
