"""drplots: figure renderer for drbandits experiment CSV files.

Consumes only the documented CSV schemas (results and sweep summaries);
it has no dependency on the simulation library itself.
"""

__version__ = "0.1.0"

from .data import CurveSeries, SchemaError, SweepSeries, load_curves, load_summary
from .render import KINDS, PlotRequest, render
