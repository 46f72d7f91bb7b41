"""Program slicing workbench: slicers, a tracing interpreter, and an LLM
evaluation harness for a Java subset."""

from __future__ import annotations

__version__ = "0.1.0"
