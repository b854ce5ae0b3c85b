"""Concrete and symbolic semantics, and bounded trace oracles."""

from .core import Config, Delay, Move, Run, StepError, Trace, parse_trace, replay, step, trace_of
from .oracles import OracleReport, bounded_tioco, bounded_trace_equiv
from .regiongraph import DELAY, RegionGraph
from .symbolic import DelaySet, after, elapse, enab, in_, out_, reach

__all__ = [
    "DELAY", "Config", "Delay", "DelaySet", "Move", "OracleReport", "RegionGraph",
    "Run", "StepError", "Trace", "after", "bounded_tioco", "bounded_trace_equiv",
    "elapse", "enab", "in_", "out_", "parse_trace", "reach", "replay", "step",
    "trace_of",
]
