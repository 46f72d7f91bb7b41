"""Prompt templates, transport behavior, and response parsing."""

from __future__ import annotations

import random
import threading
import time
from pathlib import Path

import pytest
import requests
from hypothesis import given, settings
from hypothesis import strategies as st

from slicebench.errors import (
    ContextOverflow,
    RateLimited,
    TemplateError,
    TransportError,
)
from slicebench.llm import (
    Gateway,
    HttpProvider,
    MockProvider,
    ModelConfig,
    PromptSpec,
    ROSTER,
    build_prompt,
    default_example,
    escape_template_tokens,
    estimate_tokens,
    model_config,
    parse_slice_response,
    render_output_json,
)
from slicebench.slicing import SlicingCriterion
from slicebench.source import SourceProgram

GOLDEN_DIR = Path(__file__).parent / "goldens"

SAMPLE = SourceProgram(id="sample", text="""public class Sample {
    public static int main() {
        int a = 2;
        int b = a + 3;
        return b;
    }
}""")


def spec_for(mode: str, strategy: str) -> PromptSpec:
    if mode == "static":
        crit = SlicingCriterion(mode="static", line=5, variable="b")
    else:
        crit = SlicingCriterion(mode="dynamic", line=5)
    return PromptSpec(mode=mode, strategy=strategy, program=SAMPLE,
                      criterion=crit, example=default_example(mode, strategy))


# -- prompt building ---------------------------------------------------------


@pytest.mark.parametrize("mode", ["static", "dynamic"])
@pytest.mark.parametrize("strategy", ["zero_shot", "one_shot", "one_shot_cot"])
def test_prompts_match_goldens_byte_for_byte(mode, strategy):
    text = build_prompt(spec_for(mode, strategy))
    golden = (GOLDEN_DIR / f"prompt_{mode}_{strategy}.txt").read_text(encoding="utf-8")
    assert text == golden


def test_zero_shot_static_opening_and_no_example():
    text = build_prompt(spec_for("static", "zero_shot"))
    assert text.startswith(
        "You are an AI assistant specialized in performing backward "
        "static slicing for Java programs."
    )
    assert "Example:" not in text
    assert "Slicing Criterion Format:" in text


def test_dynamic_prompt_names_the_main_return_anchor():
    text = build_prompt(spec_for("dynamic", "one_shot"))
    assert ("The Slicing Criterion line number corresponds to the return "
            "statement in the main function.") in text
    assert "Slicing Criterion Format:" not in text


def test_cot_prompt_contains_reasoning_one_shot_does_not():
    cot = build_prompt(spec_for("static", "one_shot_cot"))
    shot = build_prompt(spec_for("static", "one_shot"))
    assert "Reasoning:" in cot
    assert "Reasoning:" not in shot
    # the two differ only by the reasoning insertion
    assert shot.replace("Output: {\"output\":", "MARK") != cot


def test_prompt_is_deterministic():
    a = build_prompt(spec_for("dynamic", "one_shot_cot"))
    b = build_prompt(spec_for("dynamic", "one_shot_cot"))
    assert a == b


def test_program_lines_are_numbered_from_one():
    text = build_prompt(spec_for("static", "zero_shot"))
    assert "Program: 1: public class Sample {" in text
    assert "\n5:         return b;" in text


def test_spec_validation():
    crit = SlicingCriterion(mode="static", line=5, variable="b")
    with pytest.raises(TemplateError):
        PromptSpec(mode="static", strategy="zero_shot", program=SAMPLE,
                   criterion=crit, example=default_example("static", "one_shot"))
    with pytest.raises(TemplateError):
        PromptSpec(mode="static", strategy="one_shot", program=SAMPLE,
                   criterion=crit, example=None)
    with pytest.raises(TemplateError):
        PromptSpec(mode="dynamic", strategy="zero_shot", program=SAMPLE,
                   criterion=crit)  # criterion mode mismatch
    ex = default_example("static", "one_shot")
    with pytest.raises(TemplateError):  # CoT needs reasoning text
        PromptSpec(mode="static", strategy="one_shot_cot", program=SAMPLE,
                   criterion=crit, example=ex)


def test_template_token_in_program_is_rejected_not_substituted():
    poisoned = SourceProgram(id="p", text="public class A {\n// <<PROGRAM>>\n}")
    crit = SlicingCriterion(mode="dynamic", line=1)
    spec = PromptSpec(mode="dynamic", strategy="zero_shot", program=poisoned,
                      criterion=crit)
    with pytest.raises(TemplateError):
        build_prompt(spec)
    cleaned = SourceProgram(id="p", text=escape_template_tokens(poisoned.text))
    spec = PromptSpec(mode="dynamic", strategy="zero_shot", program=cleaned,
                      criterion=crit)
    text = build_prompt(spec)
    assert "<[PROGRAM]>" in text


# -- response parsing -----------------------------------------------------------


def test_plain_json_response():
    r = parse_slice_response('{"output": ["3","5"]}', SAMPLE)
    assert not r.parse_failed
    assert r.slice.lines == (3, 5)


def test_fenced_json_response():
    r = parse_slice_response('```json\n{"output":["1"]}\n```', SAMPLE)
    assert not r.parse_failed
    assert r.slice.lines == (1,)


def test_missing_output_field():
    r = parse_slice_response('{"result": []}', SAMPLE)
    assert r.parse_failed and r.failure.kind == "MissingOutputField"


def test_malformed_json():
    r = parse_slice_response("no json here at all", SAMPLE)
    assert r.parse_failed and r.failure.kind == "MalformedJson"


def test_truncated_json_is_malformed():
    r = parse_slice_response('{"output": ["1", "2"', SAMPLE)
    assert r.parse_failed and r.failure.kind == "MalformedJson"


def test_empty_output_array():
    r = parse_slice_response('{"output": []}', SAMPLE)
    assert r.parse_failed and r.failure.kind == "EmptyOutput"


def test_non_numeric_entry():
    r = parse_slice_response('{"output": ["line three"]}', SAMPLE)
    assert r.parse_failed and r.failure.kind == "NonNumericLine"


def test_out_of_range_lines_dropped_with_warning():
    r = parse_slice_response('{"output": ["2", "99"]}', SAMPLE)
    assert not r.parse_failed
    assert r.slice.lines == (2,)
    assert any("99" in w for w in r.warnings)


def test_integer_entries_and_surrounding_prose():
    r = parse_slice_response(
        'Sure! The slice is {"output": [3, 5, 3]} as requested.', SAMPLE
    )
    assert not r.parse_failed
    assert r.slice.lines == (3, 5)


def test_first_object_with_output_key_wins():
    r = parse_slice_response('{"a": 1} {"output": ["2"]}', SAMPLE)
    assert not r.parse_failed
    assert r.slice.lines == (2,)


@settings(max_examples=200, deadline=None)
@given(st.sets(st.integers(1, 7), min_size=1))
def test_render_parse_round_trip(lines):
    rendered = render_output_json(lines)
    r = parse_slice_response(rendered, SAMPLE)
    assert not r.parse_failed
    assert set(r.slice.lines) == lines


def test_parser_totality_on_fuzzed_inputs():
    rng = random.Random(20260822)
    alphabet = b'{}[]",:output123456789 \n\t\\abcdef`'
    for _ in range(1000):
        n = rng.randrange(0, 120)
        blob = bytes(rng.choice(alphabet) for _ in range(n))
        result = parse_slice_response(blob, SAMPLE)
        assert result.parse_failed or result.slice.lines


# -- model config -----------------------------------------------------------------


def test_roster_matches_published_model_parameters():
    assert ROSTER["Llama-2-7B-Chat"].context_window == 4096
    assert ROSTER["Llama-2-7B-Chat"].temperature == 0.8
    assert ROSTER["Gemma-7B"].context_window == 8192
    assert ROSTER["GPT-3.5 Turbo"].context_window == 4096
    assert ROSTER["GPT-4o"].context_window == 8192
    assert ROSTER["GPT-4o"].temperature == 0.7


def test_config_validation_and_overrides():
    with pytest.raises(ValueError):
        ModelConfig(name="x", temperature=2.5)
    with pytest.raises(ValueError):
        ModelConfig(name="x", context_window=0)
    tweaked = model_config("GPT-4o", temperature=0.0)
    assert tweaked.temperature == 0.0
    assert tweaked.context_window == 8192


# -- transport -----------------------------------------------------------------


class _StubResponse:
    def __init__(self, status_code: int, body=None, text=""):
        self.status_code = status_code
        self._body = body or {}
        self.text = text

    def json(self):
        return self._body


class _ScriptedSession:
    def __init__(self, script):
        self.script = list(script)
        self.calls = 0

    def post(self, url, json=None, headers=None, timeout=None):
        self.calls += 1
        step = self.script.pop(0)
        if isinstance(step, Exception):
            raise step
        return step


def _ok(text="ok"):
    return _StubResponse(200, {
        "choices": [{"message": {"content": text}}],
        "usage": {"completion_tokens": 7},
    })


def _config(**kw):
    defaults = dict(name="GPT-4o", endpoint="https://api.example.test/v1",
                    max_retries=3)
    defaults.update(kw)
    return ModelConfig(**defaults)


def test_transient_rate_limit_then_success():
    session = _ScriptedSession([_StubResponse(429), _ok("answer")])
    sleeps = []
    provider = HttpProvider(session=session, sleep=sleeps.append)
    result = provider.complete("p", _config())
    assert result.text == "answer"
    assert result.retry_count == 1
    assert result.completion_tokens == 7
    assert sleeps == [0.5]


def test_rate_limited_after_exhausted_retries():
    session = _ScriptedSession([_StubResponse(429)] * 3)
    provider = HttpProvider(session=session, sleep=lambda s: None)
    with pytest.raises(RateLimited):
        provider.complete("p", _config(max_retries=2))
    assert session.calls == 3


def test_server_errors_retry_with_exponential_backoff():
    session = _ScriptedSession([
        _StubResponse(503), requests.ConnectionError("boom"), _ok(),
    ])
    sleeps = []
    provider = HttpProvider(session=session, sleep=sleeps.append)
    result = provider.complete("p", _config())
    assert result.retry_count == 2
    assert sleeps == [0.5, 1.0]


def test_client_errors_do_not_retry():
    session = _ScriptedSession([_StubResponse(400, text="bad request")])
    provider = HttpProvider(session=session, sleep=lambda s: None)
    with pytest.raises(TransportError):
        provider.complete("p", _config())
    assert session.calls == 1


def test_mock_provider_reads_fixture(tmp_path):
    d = tmp_path / "fixtures" / "exp1"
    d.mkdir(parents=True)
    (d / "t-1.txt").write_text('{"output": ["1"]}')
    provider = MockProvider(fixtures_dir=tmp_path / "fixtures", experiment="exp1")
    result = provider.complete("p", _config(), task_id="t-1")
    assert result.text == '{"output": ["1"]}'
    with pytest.raises(TransportError):
        provider.complete("p", _config(), task_id="t-2")


def test_context_overflow_preflights_before_any_call():
    class Exploding:
        name = "boom"

        def complete(self, prompt, config, task_id=None):
            raise AssertionError("provider must not be called")

    gateway = Gateway(provider=Exploding())
    huge = "x" * 40_000  # ~11k estimated tokens
    with pytest.raises(ContextOverflow):
        gateway.complete(huge, _config(context_window=4096))
    assert estimate_tokens(huge) > 4096


def test_gateway_caps_in_flight_requests():
    active = []
    peak = []
    lock = threading.Lock()

    class Slow:
        name = "slow"

        def complete(self, prompt, config, task_id=None):
            with lock:
                active.append(1)
                peak.append(len(active))
            time.sleep(0.01)
            with lock:
                active.pop()
            return MockProvider(fixtures_dir=Path("."))  # placeholder, unused

    class SlowOk(Slow):
        def complete(self, prompt, config, task_id=None):
            with lock:
                active.append(1)
                peak.append(len(active))
            time.sleep(0.01)
            with lock:
                active.pop()
            from slicebench.llm import CallResult
            return CallResult(text="", latency_s=0.0, retry_count=0,
                              prompt_tokens_est=1)

    gateway = Gateway(provider=SlowOk(), max_in_flight=4)
    threads = [threading.Thread(target=gateway.complete, args=("p", _config()))
               for _ in range(12)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert max(peak) <= 4


def test_gateway_emits_call_records():
    records = []
    session = _ScriptedSession([_ok("fine")])
    gateway = Gateway(provider=HttpProvider(session=session, sleep=lambda s: None),
                      on_record=records.append)
    gateway.complete("hello", _config(), task_id="t-9")
    assert len(records) == 1
    assert records[0]["task_id"] == "t-9"
    assert records[0]["retry_count"] == 0
