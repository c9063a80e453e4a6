"""Rule-set generators: parameterized self-assembly programs."""

from .program import Program, horizontal_line  # noqa: F401
