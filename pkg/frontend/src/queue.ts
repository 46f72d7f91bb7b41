// Failure queue: pending failures exactly as the server ordered them
// (worst acc_d first), with the labeled/total progress count.

import { TaskListPayload, TaskRow } from "./api";
import { el, pct } from "./dom";

export interface QueueHandlers {
  openTask: (taskId: string) => void;
  openReport: () => void;
  toggleAll: (showAll: boolean) => void;
}

function rowBadges(row: TaskRow): string {
  const badges: string[] = [];
  if (row.parse_failed && row.failure_kind) badges.push(row.failure_kind);
  if (row.disagreement) badges.push("disagreement");
  if (row.iterations > 0) badges.push(`iter ${row.iterations}`);
  return badges.join(" · ");
}

export function renderQueue(payload: TaskListPayload, showAll: boolean,
                            handlers: QueueHandlers): HTMLElement {
  const header = el("div", { class: "queue-header" },
    el("h1", {}, showAll ? "All tasks" : "Failure queue"),
    el("span", { class: "progress", "data-testid": "progress" },
       `${payload.labeled}/${payload.total} labeled`),
    el("span", { class: "progress" }, `${payload.failed} failing`),
    el("button", { class: "link", onclick: () => handlers.toggleAll(!showAll) },
       showAll ? "pending failures only" : "show all tasks"),
    el("button", { class: "link", onclick: () => handlers.openReport() },
       "report"),
  );

  const body = el("tbody", {});
  // server order is the review order; the client must not re-sort
  for (const row of payload.tasks) {
    const tr = el("tr", {
      class: row.labeled ? "labeled" : "",
      "data-task": row.task_id,
      onclick: () => handlers.openTask(row.task_id),
    },
      el("td", { class: "mono" }, row.task_id),
      el("td", {}, row.mode),
      el("td", {}, row.model),
      el("td", { class: "num" }, pct(row.acc_d)),
      el("td", {}, row.exact_match ? "exact" : ""),
      el("td", {}, row.labeled ? "labeled" : ""),
      el("td", { class: "badges" }, rowBadges(row)),
    );
    body.append(tr);
  }

  const empty = payload.tasks.length === 0
    ? el("p", { class: "empty" },
         showAll ? "no tasks loaded"
                 : "0 pending — every failure is handled")
    : null;

  const table = el("table", { class: "queue" },
    el("thead", {}, el("tr", {},
      el("th", {}, "task"), el("th", {}, "mode"), el("th", {}, "model"),
      el("th", {}, "acc-d"), el("th", {}, "em"), el("th", {}, "label"),
      el("th", {}, "notes"))),
    body);

  const root = el("section", { class: "view queue-view" }, header, table);
  if (empty) root.append(empty);
  return root;
}
