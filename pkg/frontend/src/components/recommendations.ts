// Recommendations to reduce risk: counterfactual suggestions with an
// easy/difficult badge and the estimated risk reduction, shown above the
// risk factors so they are easy to discover.

import type { Recommendation } from "../api";

export function renderRecommendations(root: HTMLElement, recs: Recommendation[]): void {
  root.innerHTML = "";
  if (recs.length === 0) {
    const empty = document.createElement("p");
    empty.className = "muted";
    empty.textContent = "No feasible recommendations within the configured limits.";
    root.appendChild(empty);
    return;
  }
  const list = document.createElement("ul");
  list.className = "rec-list";
  for (const rec of recs) {
    const item = document.createElement("li");
    item.className = "rec-item";

    const badge = document.createElement("span");
    badge.className = `badge badge-${rec.feasibility}`;
    badge.textContent = rec.feasibility;
    item.appendChild(badge);

    const text = document.createElement("span");
    text.className = "rec-text";
    text.textContent = rec.text;
    item.appendChild(text);

    const delta = document.createElement("span");
    delta.className = "rec-delta";
    delta.title = "estimated risk reduction";
    delta.textContent = `−${rec.risk_reduction_percent} pp`;
    item.appendChild(delta);

    list.appendChild(item);
  }
  root.appendChild(list);
}
