"""Exception hierarchy shared across the workbench."""


class SliceBenchError(Exception):
    """Base class for all workbench errors."""


class ParseError(SliceBenchError):
    """Source text falls outside the supported Java subset.

    Carries the offending position and a short summary of what the
    parser expected instead.
    """

    def __init__(self, message: str, line: int, column: int, expected: str = ""):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"line {line}, col {column}: {message}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class NotFound(SliceBenchError):
    """No statement is anchored at or spans the requested line."""


class InternalError(SliceBenchError):
    """Frontend/flow mismatch; indicates a bug in the workbench, not user error."""


class CriterionError(SliceBenchError):
    """Slicing criterion is inconsistent with the program text."""


class StepBudgetExceeded(SliceBenchError):
    """Interpretation exceeded the configured step budget (likely non-termination)."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"execution exceeded step budget of {budget}")


class JavaRuntimeError(SliceBenchError):
    """Runtime fault in the interpreted program (division by zero, bad index, ...)."""

    def __init__(self, message: str, line: int, seq: int):
        self.line = line
        self.seq = seq
        super().__init__(f"line {line} (instance {seq}): {message}")


class CriterionNotExecuted(SliceBenchError):
    """The dynamic criterion line never appears in the execution trace."""


class TemplateError(SliceBenchError):
    """Prompt template assembly produced or encountered an unusable delimiter."""


class TransportError(SliceBenchError):
    """LLM endpoint could not be reached after the configured retries."""


class RateLimited(SliceBenchError):
    """LLM endpoint kept rate-limiting past the retry budget."""


class ContextOverflow(SliceBenchError):
    """Prompt token estimate exceeds the model's context window; never sent."""

    def __init__(self, estimated: int, window: int):
        self.estimated = estimated
        self.window = window
        super().__init__(f"estimated {estimated} tokens exceeds context window {window}")


class EmptyTruth(SliceBenchError):
    """Ground-truth slice was empty; signals a harness bug upstream."""


class RunMismatch(SliceBenchError):
    """Per-run score lists do not cover the same task set."""


class DegenerateSamples(SliceBenchError):
    """All values across both statistical samples are identical."""


class UnknownTask(SliceBenchError):
    """Label refers to a task id absent from the score store."""


class NotAFailure(SliceBenchError):
    """Label refers to a task whose prediction matched ground truth exactly."""


class UnresolvedDisagreement(SliceBenchError):
    """Reviewers disagree on one or more tasks; resolution required first."""

    def __init__(self, task_ids):
        self.task_ids = list(task_ids)
        super().__init__(f"unresolved label disagreement on: {', '.join(self.task_ids)}")


class CategoryGap(SliceBenchError):
    """Crafted example does not cover the mandated failure categories."""


class MissingLabel(SliceBenchError):
    """Iterative re-prompt requested for a task with no recorded failure label."""


class BaselineMissing(SliceBenchError):
    """Improvement experiment requires baseline results that are not present."""


class MissingCriterion(SliceBenchError):
    """Dataset program has no criterion sidecar."""


class CriterionMismatch(SliceBenchError):
    """Criterion variable does not occur at the stated line."""
