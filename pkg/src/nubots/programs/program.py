"""Common container for generated programs."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..model import Bond, Configuration
from ..rules import RuleSet


@dataclass
class Program:
    """A rule set with its seed configuration.

    ``expected_terminal`` (when known in closed form) is the unique
    terminal configuration up to translation; ``metadata`` carries
    program-specific facts such as parameter values.
    """

    name: str
    ruleset: RuleSet
    initial: Configuration
    expected_terminal: Configuration | None = None
    metadata: dict = field(default_factory=dict)


def horizontal_line(n: int, state: str = "0",
                    bond: Bond | None = Bond.RIGID,
                    y: int = 0) -> Configuration:
    """n monomers at (0..n-1, y), consecutive pairs bonded."""
    c = Configuration()
    for i in range(n):
        c.add_monomer((i, y), state)
        if i and bond is not None:
            c.set_bond((i - 1, y), (i, y), bond)
    return c
