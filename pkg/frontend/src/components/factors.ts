// Important Risk Factors: actionable variables only, red bars increase
// risk, green bars decrease it, each sized by its percentage share.
// Every row carries a what-if control so values can be edited in place
// and the prediction re-scored live.

import type { Factor, PatientDetail, SummaryFeature } from "../api";

export interface WhatifControls {
  onEdit: (feature: string, raw: string) => void;
  overrides: Record<string, number | string>;
}

function controlFor(
  feature: SummaryFeature,
  current: number | string,
  override: number | string | undefined,
  onEdit: (feature: string, raw: string) => void,
): HTMLElement {
  const wrap = document.createElement("span");
  wrap.className = "whatif-control";
  const icon = document.createElement("span");
  icon.className = "whatif-icon";
  icon.title = "what-if: edit to re-score";
  icon.textContent = "✎";
  wrap.appendChild(icon);

  if (feature.kind === "continuous") {
    const input = document.createElement("input");
    input.type = "number";
    input.step = "0.1";
    input.className = "whatif-input";
    input.dataset.feature = feature.name;
    input.value = String(override ?? current);
    const [lo, hi] = feature.bounds ?? [-Infinity, Infinity];
    input.min = String(lo);
    input.max = String(hi);
    input.addEventListener("change", () => {
      const v = Number(input.value);
      if (input.value === "" || Number.isNaN(v) || v < lo || v > hi) {
        input.classList.add("invalid");
        input.title = `enter a number between ${lo} and ${hi}`;
        return; // invalid input: no request
      }
      input.classList.remove("invalid");
      onEdit(feature.name, input.value);
    });
    wrap.appendChild(input);
  } else {
    const select = document.createElement("select");
    select.className = "whatif-input";
    select.dataset.feature = feature.name;
    for (const label of Object.keys(feature.counts)) {
      const opt = document.createElement("option");
      opt.value = label;
      opt.textContent = label;
      if (label === (override ?? current)) opt.selected = true;
      select.appendChild(opt);
    }
    select.addEventListener("change", () => onEdit(feature.name, select.value));
    wrap.appendChild(select);
  }

  const baseline = document.createElement("span");
  baseline.className = "baseline muted";
  baseline.textContent = `current: ${current}`;
  wrap.appendChild(baseline);
  return wrap;
}

export function renderFactors(
  root: HTMLElement,
  factors: Factor[],
  detail: PatientDetail,
  features: SummaryFeature[],
  controls: WhatifControls,
): void {
  root.innerHTML = "";
  const byName = new Map(features.map((f) => [f.name, f]));

  for (const factor of factors) {
    const row = document.createElement("div");
    row.className = "factor-row";

    const head = document.createElement("div");
    head.className = "factor-head";
    const name = document.createElement("span");
    name.className = "factor-name";
    name.textContent = factor.feature;
    head.appendChild(name);
    const share = document.createElement("span");
    share.className = "factor-share";
    share.dataset.feature = factor.feature;
    share.textContent = `${factor.percent_share.toFixed(1)}%`;
    head.appendChild(share);
    row.appendChild(head);

    const track = document.createElement("div");
    track.className = "factor-track";
    const bar = document.createElement("div");
    bar.className = `factor-bar ${factor.direction === "increases_risk" ? "bar-up" : "bar-down"}`;
    bar.style.width = `${Math.min(factor.percent_share, 100)}%`;
    bar.title = factor.direction === "increases_risk" ? "increases risk" : "decreases risk";
    track.appendChild(bar);
    row.appendChild(track);

    if (factor.note) {
      const note = document.createElement("div");
      note.className = "factor-note muted";
      note.textContent = factor.note;
      row.appendChild(note);
    }

    const spec = byName.get(factor.feature);
    if (spec) {
      row.appendChild(controlFor(
        spec,
        detail.values[factor.feature],
        controls.overrides[factor.feature],
        controls.onEdit,
      ));
    }
    root.appendChild(row);
  }
}

/** Refresh only the bars/shares after a what-if response, keeping the
 * edit controls (and focus) in place. */
export function updateFactorBars(root: HTMLElement, factors: Factor[]): void {
  const byFeature = new Map(factors.map((f) => [f.feature, f]));
  root.querySelectorAll<HTMLElement>(".factor-row").forEach((row) => {
    const name = row.querySelector(".factor-name")?.textContent ?? "";
    const factor = byFeature.get(name);
    if (!factor) return;
    const share = row.querySelector<HTMLElement>(".factor-share");
    if (share) share.textContent = `${factor.percent_share.toFixed(1)}%`;
    const bar = row.querySelector<HTMLElement>(".factor-bar");
    if (bar) {
      bar.style.width = `${Math.min(factor.percent_share, 100)}%`;
      bar.className = `factor-bar ${factor.direction === "increases_risk" ? "bar-up" : "bar-down"}`;
    }
  });
}
