"""graph6 codec as exposed to the command line front end."""

from jahangir_ramsey.utils.graph6 import GRAPH6_CEILING, describe, emit_graph6, parse_graph6

__all__ = ["GRAPH6_CEILING", "describe", "emit_graph6", "parse_graph6"]
