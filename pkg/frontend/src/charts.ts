// Hand-rolled SVG charts. Shared color convention: green = low risk /
// in range, orange = moderate / near range, red = high / out of range.

import type { HistoryPoint, RiskLevel } from "./api";

export const LEVEL_COLORS: Record<RiskLevel, string> = {
  Low: "#3d9e58",
  Moderate: "#e8972e",
  High: "#d64545",
};

export const ZONE_COLORS: Record<string, string> = {
  green: "#3d9e58",
  orange: "#e8972e",
  red: "#d64545",
};

const SVG = "http://www.w3.org/2000/svg";

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number> = {},
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

/** Risk donut: colored ring proportional to percent, level label in the
 * center, exact percentage in the tooltip. */
export function donutChart(level: RiskLevel, percent: number): SVGSVGElement {
  const svg = el("svg", { viewBox: "0 0 120 120", class: "donut", role: "img" });
  const title = el("title");
  title.textContent = `risk ${percent}%`;
  svg.appendChild(title);

  const r = 48;
  const circumference = 2 * Math.PI * r;
  svg.appendChild(el("circle", {
    cx: 60, cy: 60, r, fill: "none", stroke: "#e8e8ee", "stroke-width": 14,
  }));
  const arc = el("circle", {
    cx: 60, cy: 60, r, fill: "none",
    stroke: LEVEL_COLORS[level], "stroke-width": 14, "stroke-linecap": "round",
    "stroke-dasharray": `${(percent / 100) * circumference} ${circumference}`,
    transform: "rotate(-90 60 60)",
  });
  arc.classList.add("donut-arc");
  svg.appendChild(arc);

  const label = el("text", {
    x: 60, y: 66, "text-anchor": "middle", "font-size": 20, "font-weight": 700,
    fill: LEVEL_COLORS[level], class: "donut-level",
  });
  label.textContent = level;
  svg.appendChild(label);
  return svg;
}

/** Area chart for one continuous feature's histogram, with the
 * recommended range shaded and the patient's value as a marker line. */
export function areaChart(
  edges: number[],
  counts: number[],
  range: [number, number] | undefined,
  marker: number | undefined,
): SVGSVGElement {
  const w = 220, h = 80, pad = 4;
  const svg = el("svg", { viewBox: `0 0 ${w} ${h}`, class: "area-chart" });
  const lo = edges[0], hi = edges[edges.length - 1];
  const maxCount = Math.max(...counts, 1);
  const x = (v: number) => pad + ((v - lo) / (hi - lo)) * (w - 2 * pad);
  const y = (c: number) => h - pad - (c / maxCount) * (h - 2 * pad);

  if (range) {
    const [rlo, rhi] = range;
    svg.appendChild(el("rect", {
      x: x(Math.max(rlo, lo)), y: pad,
      width: Math.max(x(Math.min(rhi, hi)) - x(Math.max(rlo, lo)), 0),
      height: h - 2 * pad, fill: "#3d9e58", opacity: 0.15, class: "range-band",
    }));
  }

  const mids = counts.map((_, i) => (edges[i] + edges[i + 1]) / 2);
  const pts = [`${x(lo)},${y(0)}`];
  mids.forEach((m, i) => pts.push(`${x(m)},${y(counts[i])}`));
  pts.push(`${x(hi)},${y(0)}`);
  svg.appendChild(el("polygon", {
    points: pts.join(" "), fill: "#5b84c4", opacity: 0.55,
    stroke: "#3a62a0", "stroke-width": 1,
  }));

  if (marker !== undefined) {
    const mx = x(Math.min(Math.max(marker, lo), hi));
    svg.appendChild(el("line", {
      x1: mx, y1: pad, x2: mx, y2: h - pad,
      stroke: "#1c2a3a", "stroke-width": 2, "stroke-dasharray": "3 2", class: "marker",
    }));
  }
  return svg;
}

/** Bar chart for one categorical feature's label counts; the patient's
 * own label is highlighted. */
export function barChart(
  counts: Record<string, number>,
  marker: string | undefined,
): SVGSVGElement {
  const labels = Object.keys(counts);
  const w = 220, h = 90, pad = 4, gap = 8;
  const svg = el("svg", { viewBox: `0 0 ${w} ${h}`, class: "bar-chart" });
  const maxCount = Math.max(...Object.values(counts), 1);
  const bw = (w - 2 * pad - gap * (labels.length - 1)) / labels.length;
  labels.forEach((label, i) => {
    const bh = (counts[label] / maxCount) * (h - 24);
    const bx = pad + i * (bw + gap);
    svg.appendChild(el("rect", {
      x: bx, y: h - 16 - bh, width: bw, height: Math.max(bh, 1),
      fill: label === marker ? "#3a62a0" : "#aabfdd",
      class: label === marker ? "bar marker" : "bar",
    }));
    const text = el("text", {
      x: bx + bw / 2, y: h - 4, "text-anchor": "middle", "font-size": 9, fill: "#444",
    });
    text.textContent = label;
    svg.appendChild(text);
  });
  return svg;
}

/** Risk-recovery line: one point per record, colored by level. Hovering
 * highlights the point and brings up the risk-zone bands. */
export function historyChart(points: HistoryPoint[]): SVGSVGElement {
  const w = 460, h = 140, padX = 30, padY = 10;
  const svg = el("svg", { viewBox: `0 0 ${w} ${h}`, class: "history-chart" });
  const y = (p: number) => h - padY - p * (h - 2 * padY);
  const x = (i: number) =>
    points.length === 1 ? w / 2 : padX + (i / (points.length - 1)) * (w - 2 * padX);

  // risk zones, revealed on hover (CSS drives the opacity)
  const zones = el("g", { class: "risk-zones" });
  const bands: Array<[number, number, string]> = [
    [0.75, 1.0, ZONE_COLORS.red],
    [0.5, 0.75, ZONE_COLORS.orange],
    [0.0, 0.5, ZONE_COLORS.green],
  ];
  for (const [zlo, zhi, color] of bands) {
    zones.appendChild(el("rect", {
      x: padX, y: y(zhi), width: w - 2 * padX, height: y(zlo) - y(zhi),
      fill: color, opacity: 0.12,
    }));
  }
  svg.appendChild(zones);

  if (points.length > 1) {
    svg.appendChild(el("polyline", {
      points: points.map((p, i) => `${x(i)},${y(p.prob)}`).join(" "),
      fill: "none", stroke: "#3a62a0", "stroke-width": 2,
    }));
  }
  points.forEach((p, i) => {
    const dot = el("circle", {
      cx: x(i), cy: y(p.prob), r: 4,
      fill: LEVEL_COLORS[p.level], class: "history-point",
      "data-timestamp": p.timestamp, "data-prob": p.prob,
    });
    const tip = el("title");
    tip.textContent = `${p.timestamp}: ${(p.prob * 100).toFixed(1)}% (${p.level})`;
    dot.appendChild(tip);
    svg.appendChild(dot);
  });
  return svg;
}
