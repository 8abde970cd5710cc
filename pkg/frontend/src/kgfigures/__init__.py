"""Figure rendering for kgpilot CLI artifacts.

Consumes only the documented flat-file schemas (scan.csv, trace_NN.csv,
transport_NN.csv, events.json); never imports the simulator.
"""

from .artifacts import (
    EventsFile,
    ScanTable,
    SchemaError,
    TraceEntry,
    TraceEvent,
    TraceTable,
    TransportTable,
    read_events,
    read_scan,
    read_trace,
    read_transport,
)
from .figspec import (
    FIGURE_IDS,
    STYLE_PATH,
    STYLE_SCAN,
    VELOCITY_COLUMN,
    FigureSpec,
    input_root,
    spec_for,
)
from .render import build_figure, render

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "SchemaError",
    "ScanTable",
    "TraceTable",
    "TransportTable",
    "TraceEvent",
    "TraceEntry",
    "EventsFile",
    "read_scan",
    "read_trace",
    "read_transport",
    "read_events",
    "FIGURE_IDS",
    "VELOCITY_COLUMN",
    "STYLE_SCAN",
    "STYLE_PATH",
    "FigureSpec",
    "input_root",
    "spec_for",
    "build_figure",
    "render",
]
