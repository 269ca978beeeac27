// DOM wiring for the decision cockpit. All math lives server-side; this file
// only renders state and forwards edits.

import { ApiClient } from "./api.js";
import { DEFAULT_CRITERIA } from "./default_criteria.js";
import { formatSig12 } from "./format.js";
import {
  JudgmentGrid,
  gridFromMatrix,
  isOnScale,
  matrixOf,
  setJudgment,
  triadHint,
} from "./grid.js";
import { WhatIfController } from "./state.js";
import type { CriteriaConfig, TreeNode } from "./types.js";

const api = new ApiClient("");
const controller = new WhatIfController(api, structuredClone(DEFAULT_CRITERIA));

const grids = new Map<string, JudgmentGrid>();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function comparableNodes(tree: TreeNode, out: TreeNode[] = []): TreeNode[] {
  if (tree.children && tree.children.length > 1) {
    out.push(tree);
    for (const child of tree.children) comparableNodes(child, out);
  }
  return out;
}

function buildGrids(criteria: CriteriaConfig): void {
  grids.clear();
  for (const node of comparableNodes(criteria.tree)) {
    const ids = node.children!.map((c) => c.id);
    const labels = node.children!.map((c) => c.name ?? c.id);
    const matrix = criteria.matrices[node.id]
      ?? ids.map((_, i) => ids.map((__, j) => (i === j ? 1 : 1)));
    grids.set(node.id, gridFromMatrix(node.id, ids, matrix, labels));
  }
}

function syncMatrices(): void {
  for (const [nodeId, grid] of grids) {
    controller.criteria.matrices[nodeId] = matrixOf(grid);
  }
}

function renderGridSelector(): void {
  const select = el<HTMLSelectElement>("grid-node");
  select.innerHTML = "";
  for (const nodeId of grids.keys()) {
    const option = document.createElement("option");
    option.value = nodeId;
    option.textContent = nodeId;
    select.appendChild(option);
  }
  select.onchange = renderGrid;
}

function renderGrid(): void {
  const nodeId = el<HTMLSelectElement>("grid-node").value;
  const grid = grids.get(nodeId);
  if (!grid) return;
  const table = el<HTMLTableElement>("judgment-grid");
  table.innerHTML = "";
  const header = table.insertRow();
  header.insertCell();
  for (const label of grid.labels) {
    const th = document.createElement("th");
    th.textContent = label;
    header.appendChild(th);
  }
  grid.cells.forEach((row, i) => {
    const tr = table.insertRow();
    const th = document.createElement("th");
    th.textContent = grid.labels[i];
    tr.appendChild(th);
    row.forEach((value, j) => {
      const td = tr.insertCell();
      if (i === j) {
        td.textContent = "1";
        td.className = "diagonal";
      } else if (i < j) {
        const input = document.createElement("input");
        input.type = "number";
        input.step = "any";
        input.value = String(value);
        input.onchange = () => onJudgmentEdit(grid, i, j, input);
        td.appendChild(input);
      } else {
        td.textContent = formatSig12(value);
        td.className = "reciprocal";
      }
    });
  });
}

function onJudgmentEdit(grid: JudgmentGrid, row: number, col: number,
                        input: HTMLInputElement): void {
  const value = Number(input.value);
  if (!isOnScale(value)) {
    input.classList.add("invalid");
    input.title = "judgments must lie in [1/9, 9]";
    return;
  }
  input.classList.remove("invalid");
  input.title = "";
  setJudgment(grid, row, col, value);
  syncMatrices();
  renderGrid();
  void controller.refreshWeights(triadHint(grid));
  void controller.refreshRank();
}

function renderBadge(): void {
  const badge = el<HTMLSpanElement>("cr-badge");
  const state = controller.crBadge;
  if (!state) {
    badge.textContent = "CR: –";
    badge.className = "badge";
    return;
  }
  const cr = state.cr === null ? "?" : formatSig12(state.cr);
  badge.textContent = state.state === "ok" ? `CR ${cr} ✓` : `CR ${cr} ⚠`;
  badge.className = `badge ${state.state}`;
  el<HTMLSpanElement>("cr-hint").textContent =
    state.state === "warn" && state.hint ? state.hint : "";
}

function renderRanking(): void {
  const report = controller.report;
  const tbody = el<HTMLTableSectionElement>("ranking-body");
  tbody.innerHTML = "";
  const winnerCard = el<HTMLDivElement>("winner-card");
  if (!report) {
    winnerCard.textContent = "no ranking yet";
    return;
  }
  if (report.winner) {
    winnerCard.textContent = `winner: ${report.winner}`;
    winnerCard.className = controller.winnerFlipped ? "winner flipped" : "winner";
  } else {
    winnerCard.textContent = report.advisory ?? "no winner";
    winnerCard.className = "winner none";
  }
  for (const entry of report.rankings) {
    const tr = tbody.insertRow();
    tr.insertCell().textContent = String(entry.rank);
    tr.insertCell().textContent = entry.component_id;
    for (const [value, cls] of [
      [entry.quality_term, "q"], [entry.penalty_term, "m"], [entry.score, "s"],
    ] as [number, string][]) {
      const td = tr.insertCell();
      const bar = document.createElement("div");
      bar.className = `bar ${cls}`;
      bar.style.width = `${Math.max(0, Math.abs(value)) * 100}px`;
      bar.title = formatSig12(value);
      const label = document.createElement("span");
      label.textContent = formatSig12(value);
      td.appendChild(bar);
      td.appendChild(label);
    }
  }
  const rejected = el<HTMLUListElement>("rejected-list");
  rejected.innerHTML = "";
  for (const r of report.rejected) {
    const li = document.createElement("li");
    li.textContent = `${r.id} (${r.stage}): ${r.reason}`;
    rejected.appendChild(li);
  }
}

function renderStability(): void {
  const list = el<HTMLDivElement>("stability");
  const intervals = controller.stability;
  if (!intervals) {
    list.textContent = "";
    return;
  }
  list.textContent = intervals
    .map((s) => `[${formatSig12(s.alpha_start)}, ${formatSig12(s.alpha_end)}] → ${s.winner ?? "–"}`)
    .join("   ");
}

function renderError(): void {
  el<HTMLDivElement>("toast").textContent = controller.lastError ?? "";
}

function render(): void {
  renderBadge();
  renderRanking();
  renderStability();
  renderError();
  el<HTMLButtonElement>("export-btn").disabled = controller.reportText === null;
}

function wireControls(): void {
  const slider = el<HTMLInputElement>("alpha-slider");
  const alphaOut = el<HTMLSpanElement>("alpha-value");
  slider.oninput = () => {
    const value = Number(slider.value);
    alphaOut.textContent = value.toFixed(2);
    void controller.moveAlpha(value);
  };

  el<HTMLInputElement>("threshold-input").onchange = (ev) => {
    controller.threshold = Number((ev.target as HTMLInputElement).value);
    void controller.refreshRank();
    void controller.refreshStability();
  };

  el<HTMLInputElement>("services-input").onchange = (ev) => {
    const raw = (ev.target as HTMLInputElement).value;
    controller.requiredServices = raw.split(",").map((s) => s.trim()).filter(Boolean);
    void controller.refreshRank();
    void controller.refreshStability();
  };

  el<HTMLButtonElement>("export-btn").onclick = () => {
    const exported = controller.exportReport();
    if (!exported) return;
    const blob = new Blob([exported.content], { type: "application/json" });
    const url = URL.createObjectURL(blob);
    const a = document.createElement("a");
    a.href = url;
    a.download = exported.filename;
    a.click();
    URL.revokeObjectURL(url);
  };

  el<HTMLInputElement>("criteria-file").onchange = async (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (!file) return;
    controller.criteria = JSON.parse(await file.text()) as CriteriaConfig;
    buildGrids(controller.criteria);
    syncMatrices();
    renderGridSelector();
    renderGrid();
    void controller.refreshWeights(null);
    void controller.refreshRank();
    void controller.refreshStability();
  };
}

function start(): void {
  buildGrids(controller.criteria);
  syncMatrices();
  renderGridSelector();
  renderGrid();
  wireControls();
  controller.onChange(render);
  void controller.refreshWeights(null);
  void controller.refreshRank();
  void controller.refreshStability();
}

if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", start);
}
