// Category tables mirroring the server's taxonomy. The server accepts
// value, code, or display for root causes and locations; the UI sends
// codes (what reviewers see on the hotkey legend).

export interface CategoryOption {
  code: string;
  value: string;
  display: string;
  hotkey: string;
}

export const ROOT_CAUSES: CategoryOption[] = [
  { code: "B1", value: "LogicConditional", display: "Conditional Logic", hotkey: "1" },
  { code: "B2", value: "LogicLoop", display: "Loop Logic", hotkey: "2" },
  { code: "B3", value: "LogicMethodInvocation", display: "Method Invocation Logic", hotkey: "3" },
  { code: "C1", value: "AmbiguityInCode", display: "Ambiguity in Code", hotkey: "4" },
  { code: "C2", value: "ComplexControlFlow", display: "Complex Control Flow", hotkey: "5" },
  { code: "MC", value: "ModelConstraint", display: "Model Constraint", hotkey: "6" },
];

export const LOCATIONS: CategoryOption[] = [
  { code: "A1", value: "ConditionalStatements", display: "Conditional Statements", hotkey: "q" },
  { code: "A2", value: "LoopConstructs", display: "Loop Constructs", hotkey: "w" },
  { code: "A3", value: "MethodInvocationsAndReturns", display: "Method Invocations and Returns", hotkey: "e" },
  { code: "A4", value: "VariableDeclarationsAndAssignments", display: "Variable Declarations and Assignments", hotkey: "r" },
  { code: "A5", value: "ClassDeclarations", display: "Class Declarations", hotkey: "t" },
  { code: "A6", value: "Imports", display: "Imports", hotkey: "y" },
];

// sub-kinds only apply when the root cause is ModelConstraint
export const SUB_KINDS: CategoryOption[] = [
  { code: "ContextWindow", value: "ContextWindow", display: "Context Window", hotkey: "7" },
  { code: "IntermixedText", value: "IntermixedText", display: "Intermixed Text", hotkey: "8" },
  { code: "JsonParsing", value: "JsonParsing", display: "JSON Parsing", hotkey: "9" },
];

export const MODEL_CONSTRAINT_CODE = "MC";

export interface LabelDraft {
  rootCause: string | null;
  locations: Set<string>;
  subKind: string | null;
  notes: string;
}

export function emptyDraft(): LabelDraft {
  return { rootCause: null, locations: new Set(), subKind: null, notes: "" };
}

// submit stays disabled until a root cause and at least one location are
// chosen; ModelConstraint additionally needs its sub-kind
export function draftComplete(draft: LabelDraft): boolean {
  if (draft.rootCause === null || draft.locations.size === 0) return false;
  if (draft.rootCause === MODEL_CONSTRAINT_CODE && draft.subKind === null) {
    return false;
  }
  return true;
}

export function displayFor(options: CategoryOption[],
                           valueOrCode: string): string {
  const hit = options.find(
    (o) => o.value === valueOrCode || o.code === valueOrCode);
  return hit ? `${hit.code === hit.value ? "" : hit.code + " "}${hit.display}`
             : valueOrCode;
}
