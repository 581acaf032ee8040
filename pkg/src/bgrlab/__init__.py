"""Verification laboratory for edge-colorings of complete bipartite graphs."""

__version__ = "0.1.0"

from .core import (Biclique, Certificate, ColoredBigraph, EvenCycle, PathV, RainbowPattern, Star,
                   TargetGraph, parse_target, read_coloring, write_coloring)

__all__ = ["Biclique", "Certificate", "ColoredBigraph", "EvenCycle", "PathV", "RainbowPattern",
           "Star", "TargetGraph", "parse_target", "read_coloring", "write_coloring", "__version__"]
