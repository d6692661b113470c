"""Ramsey numbers of paths versus Jahangir graphs: witnesses, exhaustive checks, extractors."""

__version__ = "0.1.0"
