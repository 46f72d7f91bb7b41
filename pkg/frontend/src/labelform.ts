// Label form: root-cause radio group, location multi-select, optional
// ModelConstraint sub-kind, notes. Submit stays disabled until the
// draft is complete. Category hotkeys toggle the same state.

import { el } from "./dom";
import {
  CategoryOption,
  LabelDraft,
  LOCATIONS,
  MODEL_CONSTRAINT_CODE,
  ROOT_CAUSES,
  SUB_KINDS,
  draftComplete,
  emptyDraft,
} from "./taxonomy";
import { HotkeyMap } from "./hotkeys";

export interface LabelFormHandle {
  root: HTMLElement;
  draft: LabelDraft;
  hotkeys: HotkeyMap;
  refresh: () => void;
}

export function buildLabelForm(
  onSubmit: (draft: LabelDraft) => void,
  heading = "Label this failure",
): LabelFormHandle {
  const draft = emptyDraft();

  const rootButtons = new Map<string, HTMLButtonElement>();
  const locButtons = new Map<string, HTMLButtonElement>();
  const kindButtons = new Map<string, HTMLButtonElement>();

  const submit = el("button", {
    class: "submit",
    "data-testid": "submit-label",
    disabled: true,
    onclick: () => { if (draftComplete(draft)) onSubmit(draft); },
  }, "Submit label");

  const notes = el("textarea", {
    class: "notes",
    placeholder: "notes (optional)",
    oninput: (event: Event) => {
      draft.notes = (event.target as HTMLTextAreaElement).value;
    },
  });

  const subKindRow = el("div", { class: "choices sub-kinds" });

  function refresh(): void {
    for (const [code, button] of rootButtons) {
      button.classList.toggle("on", draft.rootCause === code);
    }
    for (const [code, button] of locButtons) {
      button.classList.toggle("on", draft.locations.has(code));
    }
    for (const [code, button] of kindButtons) {
      button.classList.toggle("on", draft.subKind === code);
    }
    subKindRow.style.display =
      draft.rootCause === MODEL_CONSTRAINT_CODE ? "" : "none";
    submit.disabled = !draftComplete(draft);
  }

  function pickRoot(code: string): void {
    draft.rootCause = draft.rootCause === code ? null : code;
    if (draft.rootCause !== MODEL_CONSTRAINT_CODE) draft.subKind = null;
    refresh();
  }

  function toggleLocation(code: string): void {
    if (draft.locations.has(code)) draft.locations.delete(code);
    else draft.locations.add(code);
    refresh();
  }

  function pickSubKind(code: string): void {
    draft.subKind = draft.subKind === code ? null : code;
    refresh();
  }

  function choiceButton(option: CategoryOption, act: (code: string) => void,
                        into: Map<string, HTMLButtonElement>): HTMLElement {
    const button = el("button", {
      class: "choice",
      "data-code": option.code,
      title: option.display,
      onclick: () => act(option.code),
    }, el("kbd", {}, option.hotkey), ` ${option.code === option.value
        ? option.display : option.code + " " + option.display}`);
    into.set(option.code, button);
    return button;
  }

  const rootRow = el("div", { class: "choices root-causes" },
    ...ROOT_CAUSES.map((o) => choiceButton(o, pickRoot, rootButtons)));
  const locRow = el("div", { class: "choices locations" },
    ...LOCATIONS.map((o) => choiceButton(o, toggleLocation, locButtons)));
  subKindRow.append(
    ...SUB_KINDS.map((o) => choiceButton(o, pickSubKind, kindButtons)));

  const hotkeys: HotkeyMap = {};
  for (const option of ROOT_CAUSES) {
    hotkeys[option.hotkey] = () => pickRoot(option.code);
  }
  for (const option of LOCATIONS) {
    hotkeys[option.hotkey] = () => toggleLocation(option.code);
  }
  for (const option of SUB_KINDS) {
    hotkeys[option.hotkey] = () => pickSubKind(option.code);
  }
  hotkeys.Enter = () => { if (draftComplete(draft)) onSubmit(draft); };

  const root = el("div", { class: "label-form" },
    el("h3", {}, heading),
    el("div", { class: "group-title" }, "root cause"),
    rootRow,
    el("div", { class: "group-title" }, "model constraint kind"),
    subKindRow,
    el("div", { class: "group-title" }, "fault locations"),
    locRow,
    notes,
    submit,
  );
  refresh();
  return { root, draft, hotkeys, refresh };
}
