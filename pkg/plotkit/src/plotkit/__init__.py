from .curves import Curve, PlotDataError, PlotSpec, plot_runtime_curves, runtime_curves

__version__ = "0.1.0"
