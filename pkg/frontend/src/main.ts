// Hash-routed single-page app over the triage API: #/ queue,
// #/task/<id> detail, #/report summary.

import { TriageApi } from "./api";
import { describeError, renderDetail } from "./detail";
import { el } from "./dom";
import { installHotkeys, setHotkeys } from "./hotkeys";
import { renderQueue } from "./queue";
import { renderReport } from "./report";

const api = new TriageApi("");
const app = document.getElementById("app") as HTMLElement;
const status = el("div", { class: "status", "data-testid": "status" });
document.body.append(status);

let showAll = false;
let statusTimer: ReturnType<typeof setTimeout> | undefined;

function setStatus(message: string, isError = false): void {
  status.textContent = message;
  status.classList.toggle("error", isError);
  if (statusTimer !== undefined) clearTimeout(statusTimer);
  if (!isError) statusTimer = setTimeout(() => {
    status.textContent = "";
  }, 4000);
}

function reviewerName(): string {
  let name = localStorage.getItem("slicebench-reviewer") ?? "";
  while (!name) {
    name = (window.prompt("reviewer name for labels") ?? "").trim();
  }
  localStorage.setItem("slicebench-reviewer", name);
  return name;
}

async function showQueue(): Promise<void> {
  setHotkeys({ r: () => { location.hash = "#/report"; } });
  try {
    const payload = await api.listTasks(!showAll);
    app.replaceChildren(renderQueue(payload, showAll, {
      openTask: (taskId) => {
        location.hash = `#/task/${encodeURIComponent(taskId)}`;
      },
      openReport: () => { location.hash = "#/report"; },
      toggleAll: (next) => { showAll = next; void showQueue(); },
    }));
  } catch (error) {
    // leave whatever is on screen; surface the problem in the status bar
    setStatus(describeError(error), true);
  }
}

async function showTask(taskId: string): Promise<void> {
  try {
    const detail = await api.taskDetail(taskId);
    renderDetail(detail, {
      api,
      reviewer: reviewerName(),
      backToQueue: () => { location.hash = "#/"; },
      reload: () => void showTask(taskId),
      setStatus,
      setHotkeys,
    }, app);
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

async function showReport(): Promise<void> {
  setHotkeys({ Escape: () => { location.hash = "#/"; } });
  try {
    const report = await api.report();
    app.replaceChildren(renderReport(report, () => {
      location.hash = "#/";
    }));
  } catch (error) {
    setStatus(describeError(error), true);
  }
}

function route(): void {
  const hash = location.hash || "#/";
  const taskMatch = /^#\/task\/(.+)$/.exec(hash);
  if (taskMatch) {
    void showTask(decodeURIComponent(taskMatch[1]));
  } else if (hash === "#/report") {
    void showReport();
  } else {
    void showQueue();
  }
}

installHotkeys();
window.addEventListener("hashchange", route);
route();
