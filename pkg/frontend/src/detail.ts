// Task view: source with the three-way highlight, criterion marker,
// current score, label state, reprompt control, and iteration history
// rendered beside the original prediction.

import {
  ApiError,
  ConflictDetail,
  DiffPayload,
  LabelPayload,
  TaskDetail,
  TriageApi,
} from "./api";
import { el, pct } from "./dom";
import { buildLineRows } from "./highlight";
import { buildLabelForm } from "./labelform";
import { HotkeyMap } from "./hotkeys";
import { LabelDraft, LOCATIONS, ROOT_CAUSES, SUB_KINDS,
         displayFor } from "./taxonomy";

export interface DetailContext {
  api: TriageApi;
  reviewer: string;
  backToQueue: () => void;
  reload: () => void;
  setStatus: (message: string, isError?: boolean) => void;
  setHotkeys: (map: HotkeyMap) => void;
}

function labelSummary(label: LabelPayload): string {
  const parts = [displayFor(ROOT_CAUSES, label.root_cause)];
  if (label.sub_kind) parts.push(displayFor(SUB_KINDS, label.sub_kind));
  parts.push(label.locations.map(
    (loc) => displayFor(LOCATIONS, loc)).join(", "));
  return parts.join(" — ");
}

function diffPane(title: string, source: string, truth: number[],
                  predicted: number[] | null, criterionLine: number,
                  diff: DiffPayload): HTMLElement {
  const rows = buildLineRows(source, truth, predicted, criterionLine);
  const pre = el("div", { class: "code" });
  for (const row of rows) {
    pre.append(el("div", {
      class: `code-line ${row.cls}${row.criterion ? " criterion" : ""}`,
      "data-line": String(row.line),
      "data-cls": row.cls,
    },
      el("span", { class: "gutter" },
         `${row.criterion ? "▶" : " "}${row.line}`),
      el("span", { class: "text" }, row.text || " "),
    ));
  }
  return el("div", { class: "diff-pane" },
    el("h4", {}, title),
    el("div", { class: "legend" },
      el("span", { class: "chip both" }, `both ${diff.both.length}`),
      el("span", { class: "chip missed" }, `missed ${diff.missed.length}`),
      el("span", { class: "chip over" }, `over ${diff.over.length}`)),
    pre);
}

function conflictDialog(detail: ConflictDetail, ctx: DetailContext,
                        taskId: string): HTMLElement {
  const dialog = el("div", { class: "conflict", "data-testid": "conflict" },
    el("h3", {}, "Reviewer disagreement"),
    el("p", {}, "Your label was stored, but reviewers now disagree. "
      + "Record a resolution to make one judgment effective."));
  for (const [reviewer, label] of Object.entries(detail.latest)) {
    dialog.append(el("p", { class: "mono" },
                     `${reviewer}: ${labelSummary(label)}`));
  }
  const form = buildLabelForm((draft) => {
    void submitResolution(draft);
  }, "Resolution");
  async function submitResolution(draft: LabelDraft): Promise<void> {
    try {
      await ctx.api.resolveLabel(taskId, {
        reviewer: ctx.reviewer || "resolution",
        root_cause: draft.rootCause as string,
        locations: [...draft.locations],
        ...(draft.subKind ? { sub_kind: draft.subKind } : {}),
        notes: draft.notes,
      });
      ctx.setStatus("resolution recorded");
      ctx.reload();
    } catch (error) {
      ctx.setStatus(describeError(error), true);
    }
  }
  dialog.append(form.root);
  return dialog;
}

export function describeError(error: unknown): string {
  if (error instanceof ApiError) {
    const detail = error.detail;
    if (typeof detail === "string") return `${error.status}: ${detail}`;
    if (detail && typeof detail === "object" && "error" in detail) {
      return `${error.status}: ${(detail as { error: string }).error}`;
    }
    return `request failed with ${error.status}`;
  }
  return error instanceof Error ? error.message : String(error);
}

export function renderDetail(detail: TaskDetail, ctx: DetailContext,
                             container: HTMLElement): void {
  container.replaceChildren();

  const header = el("div", { class: "detail-header" },
    el("button", { class: "link", onclick: () => ctx.backToQueue() },
       "← queue"),
    el("h2", { class: "mono" }, detail.task_id),
    el("span", { class: "score", "data-testid": "score" },
       `acc-d ${pct(detail.acc_d)}${detail.exact_match ? " · exact" : ""}`),
    el("span", {}, `${detail.model} · ${detail.strategy} · run ${detail.run}`),
  );

  const criterionText = detail.criterion.variable !== undefined
    ? `criterion: ${detail.criterion.variable} @ line ${detail.criterion.line}`
    : `criterion: line ${detail.criterion.line} (returned value)`;
  header.append(el("span", { class: "criterion-tag" }, criterionText));

  const panes = el("div", { class: "panes" },
    diffPane("current prediction vs ground truth", detail.source,
             detail.truth_lines, detail.predicted_lines,
             detail.criterion.line, detail.diff));

  const side = el("div", { class: "side" });

  if (detail.parse_failed && detail.failure_kind) {
    side.append(el("p", { class: "failure-kind" },
                   `response unusable: ${detail.failure_kind}`));
  }
  for (const warning of detail.warnings) {
    side.append(el("p", { class: "warning" }, warning));
  }

  if (detail.effective_label) {
    side.append(el("p", { class: "effective", "data-testid": "effective" },
                   `label: ${labelSummary(detail.effective_label)}`));
  } else if (Object.keys(detail.labels).length > 0) {
    for (const [reviewer, label] of Object.entries(detail.labels)) {
      side.append(el("p", { class: "mono" },
                     `${reviewer}: ${labelSummary(label)}`));
    }
  }

  let hotkeys: HotkeyMap = {
    Escape: () => ctx.backToQueue(),
  };

  if (detail.disagreement) {
    side.append(el("p", { class: "banner", "data-testid": "banner" },
                   "disagreement open — resolve before reprompting"));
    const form = buildLabelForm((draft) => void resolve(draft), "Resolution");
    async function resolve(draft: LabelDraft): Promise<void> {
      try {
        await ctx.api.resolveLabel(detail.task_id, {
          reviewer: ctx.reviewer || "resolution",
          root_cause: draft.rootCause as string,
          locations: [...draft.locations],
          ...(draft.subKind ? { sub_kind: draft.subKind } : {}),
          notes: draft.notes,
        });
        ctx.setStatus("resolution recorded");
        ctx.reload();
      } catch (error) {
        ctx.setStatus(describeError(error), true);
      }
    }
    side.append(form.root);
    hotkeys = { ...hotkeys, ...form.hotkeys };
  } else if (!detail.exact_match) {
    const form = buildLabelForm((draft) => void submit(draft));
    async function submit(draft: LabelDraft): Promise<void> {
      try {
        await ctx.api.submitLabel(detail.task_id, {
          reviewer: ctx.reviewer,
          root_cause: draft.rootCause as string,
          locations: [...draft.locations],
          ...(draft.subKind ? { sub_kind: draft.subKind } : {}),
          notes: draft.notes,
        });
        ctx.setStatus("label stored");
        ctx.reload();
      } catch (error) {
        if (error instanceof ApiError && error.status === 409) {
          // conflicting second opinion: stored, but needs resolution
          side.replaceChildren(
            conflictDialog(error.detail as ConflictDetail, ctx,
                           detail.task_id));
          return;
        }
        ctx.setStatus(describeError(error), true);
      }
    }
    side.append(form.root);
    hotkeys = { ...hotkeys, ...form.hotkeys };
  }

  const repromptButton = el("button", {
    class: "reprompt",
    "data-testid": "reprompt",
    disabled: detail.effective_label === null || detail.disagreement,
    onclick: () => void doReprompt(),
  }, "Reprompt with label feedback");
  async function doReprompt(): Promise<void> {
    ctx.setStatus("reprompting…");
    try {
      const result = await ctx.api.reprompt(detail.task_id);
      ctx.setStatus(`iteration ${result.iteration}: acc-d `
        + `${pct(result.acc_d)}${result.exact_match ? " · exact" : ""}`);
      panes.append(diffPane(`iteration ${result.iteration}`, detail.source,
                            detail.truth_lines, result.predicted_lines,
                            detail.criterion.line, result.diff));
      ctx.reload();
    } catch (error) {
      ctx.setStatus(describeError(error), true);
    }
  }
  hotkeys.p = () => { if (!repromptButton.disabled) void doReprompt(); };
  side.append(repromptButton);

  container.append(header, el("div", { class: "detail-body" }, panes, side));

  if (detail.iterations > 0) {
    void ctx.api.iterations(detail.task_id).then((payload) => {
      for (const iteration of payload.iterations) {
        panes.append(diffPane(`iteration ${iteration.index}`, detail.source,
                              detail.truth_lines, iteration.predicted_lines,
                              detail.criterion.line, iteration.diff));
      }
    }).catch((error: unknown) => ctx.setStatus(describeError(error), true));
  }

  ctx.setHotkeys(hotkeys);
}
