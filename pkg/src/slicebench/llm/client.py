"""Chat-completion transport: live OpenAI-compatible endpoint or mock.

The gateway runs a context-window preflight before any network call,
limits in-flight requests, retries transient failures with exponential
backoff, and reports per-call metadata (latency, retries, token counts).
"""

from __future__ import annotations

import math
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import requests

from ..errors import ContextOverflow, RateLimited, TransportError
from .config import ModelConfig

TOKEN_MARGIN = 1.10  # 10% safety on top of the chars/4 heuristic
DEFAULT_IN_FLIGHT = 4
BACKOFF_BASE_S = 0.5

RETRYABLE_STATUS = frozenset({500, 502, 503, 504})


def estimate_tokens(text: str) -> int:
    """Provider-independent preflight estimate: chars/4 plus margin."""
    return math.ceil(math.ceil(len(text) / 4) * TOKEN_MARGIN)


@dataclass(frozen=True)
class CallResult:
    text: str
    latency_s: float
    retry_count: int
    prompt_tokens_est: int
    completion_tokens: Optional[int] = None
    provider: str = "http"


@dataclass
class HttpProvider:
    """OpenAI-compatible chat-completion transport."""

    session: Optional[requests.Session] = None
    sleep: Callable[[float], None] = time.sleep

    name = "http"

    def complete(self, prompt: str, config: ModelConfig,
                 task_id: Optional[str] = None) -> CallResult:
        endpoint = config.resolve_endpoint().rstrip("/")
        if not endpoint:
            raise TransportError("no endpoint configured; set SLICEBENCH_API_BASE")
        url = f"{endpoint}/chat/completions"
        headers = {"Content-Type": "application/json"}
        key = config.resolve_api_key()
        if key:
            headers["Authorization"] = f"Bearer {key}"
        payload = {
            "model": config.name,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": config.temperature,
        }
        session = self.session or requests
        attempts = 0
        started = time.monotonic()
        while True:
            rate_limited = False
            try:
                response = session.post(url, json=payload, headers=headers,
                                        timeout=config.timeout)
                status = response.status_code
                if status == 200:
                    body = response.json()
                    try:
                        text = body["choices"][0]["message"]["content"]
                    except (KeyError, IndexError, TypeError):
                        raise TransportError(f"malformed completion body: {body!r}")
                    usage = body.get("usage") or {}
                    return CallResult(
                        text=text,
                        latency_s=time.monotonic() - started,
                        retry_count=attempts,
                        prompt_tokens_est=estimate_tokens(prompt),
                        completion_tokens=usage.get("completion_tokens"),
                    )
                if status == 429:
                    rate_limited = True
                    failure = f"rate limited (HTTP 429)"
                elif status in RETRYABLE_STATUS:
                    failure = f"transient HTTP {status}"
                else:
                    raise TransportError(f"HTTP {status}: {response.text[:200]}")
            except requests.RequestException as exc:
                failure = f"transport failure: {exc}"
            if attempts >= config.max_retries:
                if rate_limited:
                    raise RateLimited(f"{failure} after {attempts} retries")
                raise TransportError(f"{failure} after {attempts} retries")
            self.sleep(BACKOFF_BASE_S * (2 ** attempts))
            attempts += 1


@dataclass
class MockProvider:
    """Deterministic provider reading fixtures/<experiment>/<task>.txt."""

    fixtures_dir: Path
    experiment: str = ""

    name = "mock"

    def complete(self, prompt: str, config: ModelConfig,
                 task_id: Optional[str] = None) -> CallResult:
        if task_id is None:
            raise TransportError("mock provider needs a task id")
        base = Path(self.fixtures_dir)
        if self.experiment:
            base = base / self.experiment
        path = base / f"{task_id}.txt"
        if not path.is_file():
            raise TransportError(f"no fixture at {path}")
        return CallResult(
            text=path.read_text(encoding="utf-8"),
            latency_s=0.0,
            retry_count=0,
            prompt_tokens_est=estimate_tokens(prompt),
            provider="mock",
        )


@dataclass
class Gateway:
    """Provider wrapper adding preflight, concurrency cap, and call records."""

    provider: object
    max_in_flight: int = DEFAULT_IN_FLIGHT
    on_record: Optional[Callable[[dict], None]] = None
    _gate: threading.Semaphore = field(init=False, repr=False)

    def __post_init__(self):
        self._gate = threading.Semaphore(self.max_in_flight)

    def complete(self, prompt: str, config: ModelConfig,
                 task_id: Optional[str] = None) -> CallResult:
        estimate = estimate_tokens(prompt)
        if estimate > config.context_window:
            raise ContextOverflow(estimate, config.context_window)
        with self._gate:
            result = self.provider.complete(prompt, config, task_id=task_id)
        if self.on_record is not None:
            self.on_record({
                "task_id": task_id,
                "model": config.name,
                "latency_s": result.latency_s,
                "retry_count": result.retry_count,
                "prompt_tokens_est": result.prompt_tokens_est,
                "completion_tokens": result.completion_tokens,
                "provider": result.provider,
            })
        return result
