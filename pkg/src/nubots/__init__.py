"""Simulator and analysis toolkit for the nubot self-assembly model."""

from .grid import hex_distance, neighbors  # noqa: F401
from .model import Bond, Configuration  # noqa: F401
from .rules import EMPTY, Rule, RuleSet, make_rule  # noqa: F401

__version__ = "1.0.0"
