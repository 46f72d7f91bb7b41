"""Concrete execution of the Java subset with full trace recording."""

from .interpreter import DEFAULT_STEP_BUDGET, Interpreter, execute
from .trace import ExecutionTrace, TraceEntry
from .values import JavaArray, JavaList, render_value

__all__ = [
    "DEFAULT_STEP_BUDGET",
    "ExecutionTrace",
    "Interpreter",
    "JavaArray",
    "JavaList",
    "TraceEntry",
    "execute",
    "render_value",
]
