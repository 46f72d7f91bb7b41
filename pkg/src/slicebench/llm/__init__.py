"""Prompt building, completion transport, and response parsing."""

from .client import (
    CallResult,
    Gateway,
    HttpProvider,
    MockProvider,
    estimate_tokens,
)
from .config import DEFAULT_TEMPERATURE, ROSTER, ModelConfig, model_config
from .parsing import (
    FAILURE_KINDS,
    LlmResponse,
    ParseFailure,
    parse_slice_response,
)
from .prompts import (
    MODES,
    STRATEGIES,
    PromptSpec,
    ShotExample,
    build_prompt,
    default_example,
    escape_template_tokens,
    render_criterion,
    render_output_json,
)

__all__ = [
    "CallResult",
    "DEFAULT_TEMPERATURE",
    "FAILURE_KINDS",
    "Gateway",
    "HttpProvider",
    "LlmResponse",
    "MODES",
    "MockProvider",
    "ModelConfig",
    "ParseFailure",
    "PromptSpec",
    "ROSTER",
    "STRATEGIES",
    "ShotExample",
    "build_prompt",
    "default_example",
    "escape_template_tokens",
    "estimate_tokens",
    "model_config",
    "parse_slice_response",
    "render_criterion",
    "render_output_json",
]
