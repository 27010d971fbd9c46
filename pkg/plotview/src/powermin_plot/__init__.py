"""Figure rendering for powermin sweep and configuration outputs."""

from .render import (
    PLOT_KINDS,
    PlotSpec,
    SchemaError,
    build_configuration_figure,
    build_diameter_figure,
    build_potential_figure,
    classify,
    fit_loglog,
    kernel_values,
    read_sweep_csv,
    render_configuration,
    render_diameter_plot,
    render_potential_shapes,
)

__version__ = "0.1.0"

__all__ = [
    "PLOT_KINDS",
    "PlotSpec",
    "SchemaError",
    "build_configuration_figure",
    "build_diameter_figure",
    "build_potential_figure",
    "classify",
    "fit_loglog",
    "kernel_values",
    "read_sweep_csv",
    "render_configuration",
    "render_diameter_plot",
    "render_potential_shapes",
]
