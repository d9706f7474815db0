"""Offline rendering of kpo-spectro CSV artifacts into paper-style figures."""

__version__ = "0.1.0"

from .render import render
from .specs import PlotSpec, SpecError, load_spec, parse_spec

__all__ = ["__version__", "render", "PlotSpec", "SpecError", "load_spec", "parse_spec"]
