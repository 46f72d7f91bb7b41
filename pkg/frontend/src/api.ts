// Typed client over the triage HTTP API. Every number shown in the UI
// comes out of these payloads; the client never recomputes a score.

export interface TaskRow {
  task_id: string;
  program_id: string;
  mode: "static" | "dynamic";
  strategy: string;
  model: string;
  run: number;
  acc_d: number;
  exact_match: boolean;
  parse_failed: boolean;
  first_acc_d: number;
  failure_kind: string | null;
  labeled: boolean;
  label_count: number;
  disagreement: boolean;
  iterations: number;
}

export interface TaskListPayload {
  tasks: TaskRow[];
  total: number;
  labeled: number;
  failed: number;
}

export interface DiffPayload {
  both: number[];
  missed: number[];
  over: number[];
}

export interface Criterion {
  mode: "static" | "dynamic";
  line: number;
  variable?: string;
}

export interface LabelPayload {
  task_id: string;
  reviewer: string;
  root_cause: string;
  sub_kind: string | null;
  locations: string[];
  notes: string;
  version: number;
  timestamp: string;
}

export interface TaskDetail extends TaskRow {
  source: string;
  line_count: number;
  criterion: Criterion;
  truth_lines: number[];
  predicted_lines: number[] | null;
  diff: DiffPayload;
  raw_response: string;
  warnings: string[];
  labels: Record<string, LabelPayload>;
  effective_label: LabelPayload | null;
}

export interface LabelRequest {
  reviewer: string;
  root_cause: string;
  locations: string[];
  sub_kind?: string;
  notes?: string;
}

export interface LabelResponse {
  label: LabelPayload;
  disagreement: boolean;
}

export interface ConflictDetail {
  error: string;
  stored: boolean;
  label: LabelPayload;
  latest: Record<string, LabelPayload>;
}

export interface RepromptResponse {
  iteration: number;
  predicted_lines: number[] | null;
  diff: DiffPayload;
  acc_d: number;
  exact_match: boolean;
  parse_failed: boolean;
}

export interface IterationRow {
  task_id: string;
  index: number;
  prior_answer: string;
  new_answer: string;
  new_prompt: string;
  predicted_lines: number[] | null;
  diff: DiffPayload;
  exact_match: boolean | null;
  feedback: Record<string, unknown>;
}

export interface ReportPayload {
  record_count: number;
  tables: Record<string, Array<Record<string, string | number>>>;
  failure_kinds: Record<string, number>;
  distribution?: {
    total?: number;
    root_causes?: Record<string, number>;
    model_constraints?: Record<string, number>;
    locations?: Record<string, number>;
    error?: string;
    open_tasks?: string[];
  };
  flow_map?: Array<{ root_cause: string; location: string; count: number }>;
  improvement_reference: Array<Record<string, string | null>>;
  stat_test: Record<string, unknown> | null;
}

export class ApiError extends Error {
  status: number;
  detail: unknown;

  constructor(status: number, detail: unknown) {
    super(`API error ${status}`);
    this.status = status;
    this.detail = detail;
  }
}

async function request<T>(base: string, path: string,
                          init?: RequestInit): Promise<T> {
  const response = await fetch(base + path, init);
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    throw new ApiError(response.status,
                       body && typeof body === "object" && "detail" in body
                         ? (body as { detail: unknown }).detail
                         : body);
  }
  return body as T;
}

export class TriageApi {
  constructor(private base: string = "") {}

  listTasks(failedOnly: boolean): Promise<TaskListPayload> {
    const query = failedOnly ? "?failed=true" : "";
    return request(this.base, `/api/tasks${query}`);
  }

  taskDetail(taskId: string): Promise<TaskDetail> {
    return request(this.base, `/api/tasks/${encodeURIComponent(taskId)}`);
  }

  submitLabel(taskId: string, label: LabelRequest): Promise<LabelResponse> {
    return request(this.base,
                   `/api/tasks/${encodeURIComponent(taskId)}/label`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(label),
    });
  }

  resolveLabel(taskId: string, label: LabelRequest): Promise<LabelResponse> {
    return request(this.base,
                   `/api/tasks/${encodeURIComponent(taskId)}/resolve`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(label),
    });
  }

  reprompt(taskId: string): Promise<RepromptResponse> {
    return request(this.base,
                   `/api/tasks/${encodeURIComponent(taskId)}/reprompt`,
                   { method: "POST" });
  }

  iterations(taskId: string): Promise<{ task_id: string;
                                        iterations: IterationRow[] }> {
    return request(this.base,
                   `/api/tasks/${encodeURIComponent(taskId)}/iterations`);
  }

  report(): Promise<ReportPayload> {
    return request(this.base, "/api/report");
  }
}
