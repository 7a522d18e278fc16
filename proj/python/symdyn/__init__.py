"""Subshift languages, one-sided almost specification checks and entropy tools."""

from ._symdyn import Error, InputError, Shift, __version__, load, parse, run_cli

__all__ = ["Error", "InputError", "Shift", "__version__", "load", "parse", "run_cli"]
