// Report view: accuracy tables, failure kinds, label distribution bars,
// and the root-cause → location flow. All numbers come straight from
// /api/report.

import { ReportPayload } from "./api";
import { el } from "./dom";
import { displayFor, LOCATIONS, ROOT_CAUSES } from "./taxonomy";

function accuracyTable(mode: string,
                       rows: Array<Record<string, string | number>>)
    : HTMLElement {
  const body = el("tbody", {});
  for (const row of rows) {
    body.append(el("tr", {},
      el("td", {}, String(row.model)),
      el("td", {}, String(row.strategy)),
      el("td", { class: "num" }, String(row.acc_d)),
      el("td", { class: "num" }, String(row.acc_em)),
      el("td", { class: "num" }, String(row.runs))));
  }
  return el("div", { class: "report-table" },
    el("h3", {}, `${mode} slicing`),
    el("table", {},
      el("thead", {}, el("tr", {},
        el("th", {}, "model"), el("th", {}, "strategy"),
        el("th", {}, "acc-d"), el("th", {}, "acc-em"),
        el("th", {}, "runs"))),
      body));
}

function bars(title: string, counts: Record<string, number>,
              displayTable: typeof ROOT_CAUSES): HTMLElement {
  const total = Object.values(counts).reduce((a, b) => a + b, 0);
  const wrap = el("div", { class: "bars" }, el("h3", {}, title));
  const entries = Object.entries(counts).sort((a, b) => b[1] - a[1]);
  for (const [name, count] of entries) {
    const width = total > 0 ? (count / total) * 100 : 0;
    wrap.append(el("div", { class: "bar-row" },
      el("span", { class: "bar-label" }, displayFor(displayTable, name)),
      el("div", { class: "bar-track" },
        el("div", { class: "bar-fill", style: `width:${width}%` })),
      el("span", { class: "bar-count" }, String(count))));
  }
  return wrap;
}

function flowView(rows: Array<{ root_cause: string; location: string;
                                count: number }>): HTMLElement {
  const wrap = el("div", { class: "flow" },
                  el("h3", {}, "root cause → fault location"));
  for (const row of rows) {
    wrap.append(el("div", { class: "flow-row" },
      el("span", { class: "flow-from" },
         displayFor(ROOT_CAUSES, row.root_cause)),
      el("span", { class: "flow-arrow" }, "→".repeat(1)),
      el("span", { class: "flow-to" },
         displayFor(LOCATIONS, row.location)),
      el("span", { class: "flow-count" }, String(row.count))));
  }
  return wrap;
}

export function renderReport(report: ReportPayload,
                             back: () => void): HTMLElement {
  const root = el("section", { class: "view report-view" },
    el("div", { class: "queue-header" },
      el("button", { class: "link", onclick: back }, "← queue"),
      el("h1", {}, "Report"),
      el("span", { class: "progress" },
         `${report.record_count} records`)));

  for (const [mode, rows] of Object.entries(report.tables)) {
    root.append(accuracyTable(mode, rows));
  }

  if (Object.keys(report.failure_kinds).length > 0) {
    const kinds = el("div", { class: "bars" },
                     el("h3", {}, "response failure kinds"));
    for (const [kind, count] of Object.entries(report.failure_kinds)) {
      kinds.append(el("div", { class: "bar-row" },
        el("span", { class: "bar-label" }, kind),
        el("span", { class: "bar-count" }, String(count))));
    }
    root.append(kinds);
  }

  const distribution = report.distribution;
  if (distribution?.error) {
    root.append(el("p", { class: "banner" },
      `${distribution.error}: ${(distribution.open_tasks ?? []).join(", ")}`));
  } else if (distribution?.root_causes) {
    root.append(bars(`label distribution (${distribution.total} labeled)`,
                     distribution.root_causes, ROOT_CAUSES));
    if (distribution.locations) {
      root.append(bars("fault locations", distribution.locations, LOCATIONS));
    }
    if (report.flow_map && report.flow_map.length > 0) {
      root.append(flowView(report.flow_map));
    }
  }

  return root;
}
