"""Model configuration and the evaluated-model roster."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

DEFAULT_TEMPERATURE = 0.7  # assumption for models whose setting is unstated

API_BASE_VAR = "SLICEBENCH_API_BASE"
API_KEY_VAR = "SLICEBENCH_API_KEY"
MODEL_VAR = "SLICEBENCH_MODEL"


@dataclass(frozen=True)
class ModelConfig:
    name: str
    endpoint: str = ""
    api_key_ref: str = API_KEY_VAR
    temperature: float = DEFAULT_TEMPERATURE
    context_window: int = 8192
    max_retries: int = 3
    timeout: float = 60.0

    def __post_init__(self):
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature {self.temperature} outside [0, 2]")
        if self.context_window <= 0:
            raise ValueError("context_window must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")

    def resolve_endpoint(self) -> str:
        return self.endpoint or os.environ.get(API_BASE_VAR, "")

    def resolve_api_key(self) -> str:
        return os.environ.get(self.api_key_ref, "")


def _k(tokens_in_k: int) -> int:
    return tokens_in_k * 1024


# the four evaluated chat models with their published context windows;
# two temperatures were stated, the others take the default
ROSTER: dict[str, ModelConfig] = {
    cfg.name: cfg
    for cfg in (
        ModelConfig(name="Llama-2-7B-Chat", context_window=_k(4), temperature=0.8),
        ModelConfig(name="Gemma-7B", context_window=_k(8)),
        ModelConfig(name="GPT-3.5 Turbo", context_window=_k(4)),
        ModelConfig(name="GPT-4o", context_window=_k(8), temperature=0.7),
    )
}


def model_config(name: str, **overrides) -> ModelConfig:
    """Roster config by name, or a default config for unknown models."""
    base = ROSTER.get(name)
    if base is None:
        return ModelConfig(name=name, **overrides)
    if overrides:
        merged = {**base.__dict__, **overrides}
        return ModelConfig(**merged)
    return base
