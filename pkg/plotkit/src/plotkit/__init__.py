"""Render maglev CSV/JSON artifacts as figures."""

__version__ = "0.1.0"

from .io import ArtifactError, PlotSpec, read_borders, read_state, read_sweep
from .phase import plot_phase_diagram
from .state import plot_state_scan

__all__ = ["__version__", "ArtifactError", "PlotSpec", "read_sweep",
           "read_state", "read_borders", "plot_phase_diagram",
           "plot_state_scan"]
