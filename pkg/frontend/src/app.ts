// Dashboard wiring: one patient selection drives five linked panels.
// What-if edits live only in view state (nothing persists server-side);
// switching patients clears them. In-flight what-if requests are
// superseded by newer ones so a stale response can never overwrite a
// fresher prediction.

import {
  fetchFactors,
  fetchHistory,
  fetchPatient,
  fetchPatients,
  fetchRecommendations,
  fetchSummary,
  postWhatif,
  type PatientDetail,
  type PatientListEntry,
  type SummaryFeature,
} from "./api";
import { LEVEL_COLORS } from "./charts";
import { renderFactors, updateFactorBars } from "./components/factors";
import { renderHistory } from "./components/history";
import { renderPatientInfo, updateDonut } from "./components/patientInfo";
import { renderRecommendations } from "./components/recommendations";
import { renderSummary } from "./components/summary";

interface ViewState {
  selectedPatient: string | null;
  overrides: Record<string, number | string>;
  whatifSeq: number;            // last issued what-if request id
  whatifController: AbortController | null;
}

export class Dashboard {
  private state: ViewState = {
    selectedPatient: null,
    overrides: {},
    whatifSeq: 0,
    whatifController: null,
  };
  private detail: PatientDetail | null = null;
  private features: SummaryFeature[] = [];

  constructor(private root: HTMLElement) {}

  async start(): Promise<void> {
    this.root.innerHTML = `
      <header class="topbar">
        <h1>Risk Monitor</h1>
        <label class="picker">Patient
          <select id="patient-select" title="pick a patient; most critical first"></select>
        </label>
        <span id="patient-badge" class="level-badge"></span>
      </header>
      <div id="error-banner" class="error-banner" hidden>
        <span id="error-message"></span>
        <button id="retry-button" type="button">Retry</button>
      </div>
      <main class="panels">
        <section id="vc1" class="panel"><h2>Patient Information</h2><div class="body">…</div></section>
        <section id="vc2" class="panel"><h2>Patient Summary</h2><div class="body">…</div></section>
        <section id="vc4" class="panel"><h2>Recommendations to Reduce Risk</h2><div class="body">…</div></section>
        <section id="vc3" class="panel"><h2>Important Risk Factors <span class="whatif-hint" title="supports what-if edits">✎</span></h2><div class="body">…</div></section>
        <section id="vc5" class="panel"><h2>Risk Recovery</h2><div class="body">…</div></section>
      </main>`;

    this.select.addEventListener("change", () => {
      void this.selectPatient(this.select.value);
    });
    (this.root.querySelector("#retry-button") as HTMLButtonElement)
      .addEventListener("click", () => void this.reload());

    await this.reload();
  }

  private get select(): HTMLSelectElement {
    return this.root.querySelector("#patient-select") as HTMLSelectElement;
  }

  private panel(id: string): HTMLElement {
    return this.root.querySelector(`#${id} .body`) as HTMLElement;
  }

  private showError(message: string): void {
    const banner = this.root.querySelector("#error-banner") as HTMLElement;
    (this.root.querySelector("#error-message") as HTMLElement).textContent = message;
    banner.hidden = false;
  }

  private clearError(): void {
    (this.root.querySelector("#error-banner") as HTMLElement).hidden = true;
  }

  async reload(): Promise<void> {
    this.clearError();
    let patients: PatientListEntry[];
    try {
      patients = await fetchPatients();
    } catch (err) {
      this.showError(`Cannot reach the risk service: ${String(err)}`);
      return;
    }
    const order = { High: 0, Moderate: 1, Low: 2 };
    patients.sort((a, b) =>
      order[a.level] - order[b.level] || b.percent - a.percent);

    this.select.innerHTML = "";
    for (const p of patients) {
      const opt = document.createElement("option");
      opt.value = p.patient_id;
      opt.textContent = `${p.patient_id} · ${p.level} · ${p.percent}%`;
      this.select.appendChild(opt);
    }
    const keep = this.state.selectedPatient &&
      patients.some((p) => p.patient_id === this.state.selectedPatient)
      ? this.state.selectedPatient
      : patients[0]?.patient_id;
    if (!keep) {
      this.showError("The service returned no patients.");
      return;
    }
    this.select.value = keep;
    await this.selectPatient(keep);
  }

  /** Load all five panels for one patient; clears what-if state. */
  async selectPatient(patientId: string): Promise<void> {
    this.state.selectedPatient = patientId;
    this.state.overrides = {};
    this.state.whatifController?.abort();
    this.state.whatifController = null;
    this.state.whatifSeq++;  // orphan any in-flight what-if
    this.clearError();

    try {
      const [detail, summary, factors, recs, history] = await Promise.all([
        fetchPatient(patientId),
        fetchSummary(patientId),
        fetchFactors(patientId),
        fetchRecommendations(patientId).catch((err) =>
          err?.status === 409 ? [] : Promise.reject(err)),
        fetchHistory(patientId),
      ]);
      this.detail = detail;
      this.features = summary.features;

      const badge = this.root.querySelector("#patient-badge") as HTMLElement;
      badge.textContent = detail.prediction.level;
      badge.style.background = LEVEL_COLORS[detail.prediction.level];

      renderPatientInfo(this.panel("vc1"), detail);
      renderSummary(this.panel("vc2"), summary);
      renderRecommendations(this.panel("vc4"), recs);
      renderFactors(this.panel("vc3"), factors, detail, summary.features, {
        overrides: this.state.overrides,
        onEdit: (feature, raw) => void this.whatif(feature, raw),
      });
      renderHistory(this.panel("vc5"), history);
    } catch (err) {
      this.showError(`Failed to load patient ${patientId}: ${String(err)}`);
    }
  }

  /** One edited value -> one POST; donut, badge and factor bars update
   * from the response. Baseline values stay visible for comparison. */
  async whatif(feature: string, raw: string): Promise<void> {
    if (!this.state.selectedPatient || !this.detail) return;
    const spec = this.features.find((f) => f.name === feature);
    if (!spec) return; // overrides may only reference schema features
    const value = spec.kind === "continuous" ? Number(raw) : raw;
    this.state.overrides = { ...this.state.overrides, [feature]: value };

    this.state.whatifController?.abort();
    const controller = new AbortController();
    this.state.whatifController = controller;
    const seq = ++this.state.whatifSeq;
    const patient = this.state.selectedPatient;

    try {
      const res = await postWhatif(patient, this.state.overrides, controller.signal);
      if (seq !== this.state.whatifSeq || patient !== this.state.selectedPatient) {
        return; // superseded or patient switched: drop stale response
      }
      const badge = this.root.querySelector("#patient-badge") as HTMLElement;
      badge.textContent = res.prediction.level;
      badge.style.background = LEVEL_COLORS[res.prediction.level];
      updateDonut(this.panel("vc1"), res.prediction);
      updateFactorBars(this.panel("vc3"), res.factors);
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      if (seq !== this.state.whatifSeq) return;
      this.showError(`What-if failed: ${String(err)}`);
    }
  }

  /** Test hook: current view state snapshot. */
  getState(): { selectedPatient: string | null; overrides: Record<string, number | string> } {
    return {
      selectedPatient: this.state.selectedPatient,
      overrides: { ...this.state.overrides },
    };
  }
}
