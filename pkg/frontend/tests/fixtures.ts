// Canned payloads mirroring the live service's JSON shapes.

import type {
  Factor,
  History,
  PatientDetail,
  PatientListEntry,
  PopulationSummary,
  Recommendation,
  WhatifResponse,
} from "../src/api";

export const patients: PatientListEntry[] = [
  { patient_id: "p1", level: "High", percent: 87.5 },
  { patient_id: "p2", level: "Low", percent: 12.3 },
];

export const details: Record<string, PatientDetail> = {
  p1: {
    patient_id: "p1",
    timestamp: "2024-06-15",
    values: { glucose: 7.5, activity: "low", age: 61.0 },
    prediction: { prob: 0.875, level: "High", percent: 87.5 },
    indicators: [
      { feature: "glucose", value: 7.5, status: "outside_range", arrow: "above_range", zone_color: "red" },
    ],
    category_statuses: [
      { feature: "activity", value: "low", status: "outside_range", zone_color: "red" },
    ],
  },
  p2: {
    patient_id: "p2",
    timestamp: "2024-06-15",
    values: { glucose: 4.9, activity: "high", age: 35.0 },
    prediction: { prob: 0.123, level: "Low", percent: 12.3 },
    indicators: [
      { feature: "glucose", value: 4.9, status: "within_range", arrow: "none", zone_color: "green" },
    ],
    category_statuses: [
      { feature: "activity", value: "high", status: "within_range", zone_color: "green" },
    ],
  },
};

export const factors: Record<string, Factor[]> = {
  p1: [
    { feature: "glucose", percent_share: 61.4, direction: "increases_risk",
      in_recommended_range: false, note: "7.5 mmol/L is above the recommended range 4-6" },
    { feature: "activity", percent_share: 38.6, direction: "increases_risk",
      in_recommended_range: null, note: null },
  ],
  p2: [
    { feature: "glucose", percent_share: 55.0, direction: "decreases_risk",
      in_recommended_range: true, note: "4.9 mmol/L is within the recommended range 4-6" },
    { feature: "activity", percent_share: 45.0, direction: "decreases_risk",
      in_recommended_range: null, note: null },
  ],
};

export const recommendations: Record<string, Recommendation[]> = {
  p1: [
    { text: "Exercise daily for 30 minutes", feasibility: "easy",
      risk_reduction_percent: 21.5,
      changes: [{ feature: "activity", from: "low", to: "moderate" }] },
    { text: "Reduce glucose from 7.5 to 5.4 mmol/L", feasibility: "difficult",
      risk_reduction_percent: 48.2,
      changes: [{ feature: "glucose", from: 7.5, to: 5.4 }] },
  ],
  p2: [],
};

export const histories: Record<string, History> = {
  p1: {
    patient_id: "p1",
    trend: "worsening",
    points: [
      { timestamp: "2024-04-15", prob: 0.71, level: "Moderate" },
      { timestamp: "2024-05-15", prob: 0.79, level: "High" },
      { timestamp: "2024-06-15", prob: 0.875, level: "High" },
    ],
  },
  p2: {
    patient_id: "p2",
    trend: "improving",
    points: [
      { timestamp: "2024-05-15", prob: 0.31, level: "Low" },
      { timestamp: "2024-06-15", prob: 0.123, level: "Low" },
    ],
  },
};

export function summaryFor(patientId: string): PopulationSummary {
  return {
    n: 250,
    features: [
      {
        name: "glucose", kind: "continuous", actionable: true, unit: "mmol/L",
        histogram: {
          bin_edges: [3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
          counts: [5, 30, 60, 70, 40, 20, 10, 6, 4, 3, 1, 1],
        },
        recommended_range: [4, 6],
        bounds: [3, 15],
      },
      {
        name: "activity", kind: "categorical", actionable: true,
        counts: { low: 90, moderate: 110, high: 50 },
      },
      {
        name: "age", kind: "continuous", actionable: false,
        histogram: {
          bin_edges: [20, 25, 30, 35, 40, 45, 50, 55, 60, 65, 70, 75, 80],
          counts: [10, 15, 20, 25, 30, 35, 30, 25, 20, 20, 15, 5],
        },
        bounds: [18, 90],
      },
    ],
    markers: details[patientId].values,
  };
}

export const whatifResult: WhatifResponse = {
  prediction: { prob: 0.41, level: "Low", percent: 41.0 },
  factors: [
    { feature: "glucose", percent_share: 30.0, direction: "decreases_risk",
      in_recommended_range: true, note: "5.2 mmol/L is within the recommended range 4-6" },
    { feature: "activity", percent_share: 70.0, direction: "increases_risk",
      in_recommended_range: null, note: null },
  ],
};
