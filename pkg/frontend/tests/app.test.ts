// Mock-API contract tests: the dashboard must render exactly what the
// service provides, send exactly one request per what-if edit, drop
// stale responses, and clear overrides on patient switch.

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { configureApi } from "../src/api";
import { Dashboard } from "../src/app";
import * as fx from "./fixtures";

interface RecordedRequest {
  url: string;
  method: string;
  body?: unknown;
}

let requests: RecordedRequest[];
let whatifGate: ((body: unknown) => void) | null;

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

function route(url: string, init?: RequestInit): Response | Promise<Response> {
  const path = url.replace("http://test", "");
  const m = (re: RegExp) => path.match(re);

  if (init?.method === "POST") {
    const body = JSON.parse(String(init.body));
    if (whatifGate) {
      return new Promise<Response>((resolve) => {
        const gate = whatifGate;
        gate!(body);
        resolveLater.push((payload) => resolve(jsonResponse(payload)));
      });
    }
    return jsonResponse(fx.whatifResult);
  }
  let match;
  if (path === "/api/patients") return jsonResponse(fx.patients);
  if ((match = m(/^\/api\/patients\/(\w+)\/factors$/))) return jsonResponse(fx.factors[match[1]]);
  if ((match = m(/^\/api\/patients\/(\w+)\/recommendations/))) {
    const recs = fx.recommendations[match[1]];
    return recs.length === 0 && match[1] === "p2"
      ? jsonResponse({ code: "already_at_target", message: "already Low", detail: null }, 409)
      : jsonResponse(recs);
  }
  if ((match = m(/^\/api\/patients\/(\w+)\/history$/))) return jsonResponse(fx.histories[match[1]]);
  if ((match = m(/^\/api\/patients\/(\w+)$/))) return jsonResponse(fx.details[match[1]]);
  if ((match = m(/^\/api\/population\/summary\?patient_id=(\w+)$/))) {
    return jsonResponse(fx.summaryFor(match[1]));
  }
  return jsonResponse({ code: "unknown", message: `no route ${path}`, detail: null }, 404);
}

let resolveLater: Array<(payload: unknown) => void>;

async function mount(): Promise<{ root: HTMLElement; app: Dashboard }> {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const app = new Dashboard(root);
  await app.start();
  await flush();
  return { root, app };
}

const flush = () => new Promise((r) => setTimeout(r, 0));

beforeEach(() => {
  requests = [];
  resolveLater = [];
  whatifGate = null;
  configureApi("http://test");
  vi.stubGlobal("fetch", (url: string, init?: RequestInit) => {
    requests.push({
      url: String(url),
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    });
    return Promise.resolve(route(String(url), init));
  });
});

afterEach(() => {
  vi.unstubAllGlobals();
  document.body.innerHTML = "";
});

describe("rendering the five components from API payloads", () => {
  it("shows every provided number, traceable to a payload field", async () => {
    const { root } = await mount();

    // VC1: donut level + percent tooltip + indicator coloring
    const donutLevel = root.querySelector("#vc1 .donut-level");
    expect(donutLevel?.textContent).toBe("High");
    expect(root.querySelector("#vc1 .donut title")?.textContent).toBe("risk 87.5%");
    expect(root.querySelector("#vc1 .patient-values")?.textContent).toContain("7.5");

    // VC2: population size and per-feature charts for actionable features
    expect(root.querySelector("#vc2 .muted")?.textContent).toContain("250");
    expect(root.querySelectorAll("#vc2 .area-chart").length).toBe(1); // glucose only (age not actionable)
    expect(root.querySelectorAll("#vc2 .bar-chart").length).toBe(1);  // activity
    expect(root.querySelectorAll("#vc2 .range-band").length).toBe(1);

    // VC4: recommendation texts, badges and risk-reduction figures
    const recText = root.querySelector("#vc4")?.textContent ?? "";
    expect(recText).toContain("Exercise daily for 30 minutes");
    expect(recText).toContain("21.5");
    expect(root.querySelectorAll("#vc4 .badge-easy").length).toBe(1);
    expect(root.querySelectorAll("#vc4 .badge-difficult").length).toBe(1);

    // VC3: factor shares and directions
    const shares = [...root.querySelectorAll("#vc3 .factor-share")].map((e) => e.textContent);
    expect(shares).toEqual(["61.4%", "38.6%"]);
    expect(root.querySelectorAll("#vc3 .bar-up").length).toBe(2);
    expect(root.querySelector("#vc3 .factor-note")?.textContent)
      .toBe("7.5 mmol/L is above the recommended range 4-6");

    // VC5: one point per history record plus the trend verdict
    expect(root.querySelectorAll("#vc5 .history-point").length).toBe(3);
    expect(root.querySelector("#vc5 .trend")?.textContent).toBe("condition worsening");
  });

  it("keeps level label, donut color and percent mutually consistent", async () => {
    const { root } = await mount();
    const arc = root.querySelector("#vc1 .donut-arc");
    const label = root.querySelector("#vc1 .donut-level");
    expect(label?.textContent).toBe("High");
    expect(arc?.getAttribute("stroke")).toBe("#d64545");
    expect(label?.getAttribute("fill")).toBe("#d64545");
    const badge = root.querySelector("#patient-badge") as HTMLElement;
    expect(badge.textContent).toBe("High");
  });

  it("sorts the patient picker most-critical first with level badges", async () => {
    const { root } = await mount();
    const options = [...root.querySelectorAll("#patient-select option")];
    expect(options.map((o) => (o as HTMLOptionElement).value)).toEqual(["p1", "p2"]);
    expect(options[0].textContent).toContain("High");
    expect(options[0].textContent).toContain("87.5%");
  });
});

describe("what-if interaction", () => {
  it("issues exactly one request per edit and updates donut, badge and bars quickly", async () => {
    const { root } = await mount();
    const before = requests.filter((r) => r.method === "POST").length;
    expect(before).toBe(0);

    const input = root.querySelector<HTMLInputElement>('#vc3 input[data-feature="glucose"]')!;
    const started = performance.now();
    input.value = "5.2";
    input.dispatchEvent(new Event("change"));
    await flush();
    const elapsed = performance.now() - started;

    const posts = requests.filter((r) => r.method === "POST");
    expect(posts.length).toBe(1);
    expect(posts[0].body).toEqual({ overrides: { glucose: 5.2 } });

    expect(root.querySelector("#vc1 .donut-level")?.textContent).toBe("Low");
    expect(root.querySelector("#vc1 .donut title")?.textContent).toBe("risk 41%");
    expect((root.querySelector("#patient-badge") as HTMLElement).textContent).toBe("Low");
    const shares = [...root.querySelectorAll("#vc3 .factor-share")].map((e) => e.textContent);
    expect(shares).toEqual(["30.0%", "70.0%"]);
    expect(root.querySelectorAll("#vc3 .bar-down").length).toBe(1);
    expect(elapsed).toBeLessThan(200);
  });

  it("keeps the baseline value visible next to the edit control", async () => {
    const { root } = await mount();
    const baseline = root.querySelector("#vc3 .baseline");
    expect(baseline?.textContent).toBe("current: 7.5");
    const input = root.querySelector<HTMLInputElement>('#vc3 input[data-feature="glucose"]')!;
    input.value = "5.2";
    input.dispatchEvent(new Event("change"));
    await flush();
    expect(root.querySelector("#vc3 .baseline")?.textContent).toBe("current: 7.5");
  });

  it("marks out-of-bounds input invalid and sends nothing", async () => {
    const { root } = await mount();
    const input = root.querySelector<HTMLInputElement>('#vc3 input[data-feature="glucose"]')!;
    input.value = "99";  // bounds are [3, 15]
    input.dispatchEvent(new Event("change"));
    await flush();
    expect(input.classList.contains("invalid")).toBe(true);
    expect(requests.filter((r) => r.method === "POST").length).toBe(0);

    input.value = "abc";
    input.dispatchEvent(new Event("change"));
    await flush();
    expect(requests.filter((r) => r.method === "POST").length).toBe(0);
  });

  it("accumulates overrides across edits of different features", async () => {
    const { root, app } = await mount();
    const input = root.querySelector<HTMLInputElement>('#vc3 input[data-feature="glucose"]')!;
    input.value = "5.2";
    input.dispatchEvent(new Event("change"));
    await flush();
    const select = root.querySelector<HTMLSelectElement>('#vc3 select[data-feature="activity"]')!;
    select.value = "moderate";
    select.dispatchEvent(new Event("change"));
    await flush();
    const posts = requests.filter((r) => r.method === "POST");
    expect(posts.length).toBe(2);
    expect(posts[1].body).toEqual({ overrides: { glucose: 5.2, activity: "moderate" } });
    expect(app.getState().overrides).toEqual({ glucose: 5.2, activity: "moderate" });
  });

  it("drops a stale what-if response that resolves after a newer one", async () => {
    const { root, app } = await mount();
    const gatedBodies: unknown[] = [];
    whatifGate = (body) => gatedBodies.push(body);

    void app.whatif("glucose", "5.2");   // slow request, gated
    await flush();
    void app.whatif("glucose", "4.4");   // newer request, also gated
    await flush();
    expect(resolveLater.length).toBe(2);

    // resolve newest first with Low, then the stale one with High
    resolveLater[1]({ prediction: { prob: 0.2, level: "Low", percent: 20.0 }, factors: fx.whatifResult.factors });
    await flush();
    expect(root.querySelector("#vc1 .donut-level")?.textContent).toBe("Low");

    resolveLater[0]({ prediction: { prob: 0.9, level: "High", percent: 90.0 }, factors: fx.whatifResult.factors });
    await flush();
    expect(root.querySelector("#vc1 .donut-level")?.textContent).toBe("Low"); // stale dropped
  });
});

describe("patient switching", () => {
  it("clears overrides and refreshes all five panels", async () => {
    const { root, app } = await mount();
    const input = root.querySelector<HTMLInputElement>('#vc3 input[data-feature="glucose"]')!;
    input.value = "5.2";
    input.dispatchEvent(new Event("change"));
    await flush();
    expect(app.getState().overrides).toEqual({ glucose: 5.2 });

    const select = root.querySelector<HTMLSelectElement>("#patient-select")!;
    select.value = "p2";
    select.dispatchEvent(new Event("change"));
    await flush();
    await flush();

    expect(app.getState()).toEqual({ selectedPatient: "p2", overrides: {} });
    expect(root.querySelector("#vc1 .donut-level")?.textContent).toBe("Low");
    expect(root.querySelector("#vc5 .trend")?.textContent).toBe("condition improving");
    expect(root.querySelectorAll("#vc5 .history-point").length).toBe(2);
    // p2 is already at the target: the 409 renders as an empty-state note
    expect(root.querySelector("#vc4")?.textContent).toContain("No feasible recommendations");
    // what-if inputs reset to the new patient's values
    const fresh = root.querySelector<HTMLInputElement>('#vc3 input[data-feature="glucose"]')!;
    expect(fresh.value).toBe("4.9");
  });
});

describe("failure handling", () => {
  it("shows the error banner with retry when the API is down, then recovers", async () => {
    let down = true;
    vi.stubGlobal("fetch", (url: string, init?: RequestInit) => {
      if (down) return Promise.reject(new TypeError("fetch failed"));
      requests.push({ url: String(url), method: init?.method ?? "GET" });
      return Promise.resolve(route(String(url), init));
    });

    const root = document.createElement("div");
    document.body.appendChild(root);
    const app = new Dashboard(root);
    await app.start();
    await flush();

    const banner = root.querySelector("#error-banner") as HTMLElement;
    expect(banner.hidden).toBe(false);
    expect(root.querySelector("#error-message")?.textContent).toContain("Cannot reach");

    down = false;
    (root.querySelector("#retry-button") as HTMLButtonElement).click();
    await flush();
    await flush();
    expect(banner.hidden).toBe(true);
    expect(root.querySelector("#vc1 .donut-level")?.textContent).toBe("High");
  });
});
