// Typed client for the risk-monitoring API. The dashboard renders these
// payloads verbatim: every number on screen comes from a field below.

export type RiskLevel = "Low" | "Moderate" | "High";

export interface Prediction {
  prob: number;
  level: RiskLevel;
  percent: number;
}

export interface PatientListEntry {
  patient_id: string;
  level: RiskLevel;
  percent: number;
}

export interface RangeIndicator {
  feature: string;
  value: number;
  status: "within_range" | "outside_range";
  arrow: "above_range" | "below_range" | "none";
  zone_color: "green" | "orange" | "red";
}

export interface CategoryStatus {
  feature: string;
  value: string;
  status: "within_range" | "outside_range";
  zone_color: "green" | "orange" | "red";
}

export interface PatientDetail {
  patient_id: string;
  timestamp: string;
  values: Record<string, number | string>;
  prediction: Prediction;
  indicators: RangeIndicator[];
  category_statuses: CategoryStatus[];
}

export interface Factor {
  feature: string;
  percent_share: number;
  direction: "increases_risk" | "decreases_risk";
  in_recommended_range: boolean | null;
  note: string | null;
}

export interface FeatureChange {
  feature: string;
  from: number | string;
  to: number | string;
}

export interface Recommendation {
  text: string;
  feasibility: "easy" | "difficult";
  risk_reduction_percent: number;
  changes: FeatureChange[];
}

export interface HistoryPoint {
  timestamp: string;
  prob: number;
  level: RiskLevel;
}

export interface History {
  patient_id: string;
  points: HistoryPoint[];
  trend: "improving" | "worsening" | "stable";
}

export interface ContinuousFeature {
  name: string;
  kind: "continuous";
  actionable: boolean;
  unit?: string;
  histogram: { bin_edges: number[]; counts: number[] };
  recommended_range?: [number, number];
  bounds?: [number, number];
}

export interface CategoricalFeature {
  name: string;
  kind: "categorical";
  actionable: boolean;
  counts: Record<string, number>;
}

export type SummaryFeature = ContinuousFeature | CategoricalFeature;

export interface PopulationSummary {
  n: number;
  features: SummaryFeature[];
  markers?: Record<string, number | string>;
}

export interface WhatifResponse {
  prediction: Prediction;
  factors: Factor[];
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

let baseUrl = "http://localhost:8080";

export function configureApi(url: string): void {
  baseUrl = url.replace(/\/+$/, "");
}

async function get<T>(path: string): Promise<T> {
  const res = await fetch(`${baseUrl}${path}`);
  if (!res.ok) throw new ApiError(`GET ${path} failed (${res.status})`, res.status);
  return res.json() as Promise<T>;
}

export const fetchPatients = () => get<PatientListEntry[]>("/api/patients");
export const fetchPatient = (id: string) => get<PatientDetail>(`/api/patients/${id}`);
export const fetchFactors = (id: string) => get<Factor[]>(`/api/patients/${id}/factors`);
export const fetchRecommendations = (id: string, target = "low", k = 3) =>
  get<Recommendation[]>(`/api/patients/${id}/recommendations?target=${target}&k=${k}`);
export const fetchHistory = (id: string) => get<History>(`/api/patients/${id}/history`);
export const fetchSummary = (patientId: string) =>
  get<PopulationSummary>(`/api/population/summary?patient_id=${patientId}`);

export async function postWhatif(
  id: string,
  overrides: Record<string, number | string>,
  signal?: AbortSignal,
): Promise<WhatifResponse> {
  const res = await fetch(`${baseUrl}/api/patients/${id}/whatif`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ overrides }),
    signal,
  });
  if (!res.ok) throw new ApiError(`what-if failed (${res.status})`, res.status);
  return res.json() as Promise<WhatifResponse>;
}
