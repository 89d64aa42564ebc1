// Render models: pure projections of API responses into what the tables
// and panels display. Kept DOM-free so they are directly unit-testable.

import type { DimensionVector, EvaluateResponse, RankResponse, Weights } from "./types.js";

export interface ContributionPart {
  dimension: keyof Weights;
  label: string;
  weight: number; // normalized weight
  value: number; // dimension value in [0,1]
  product: number; // weight * value, the row's share from this dimension
}

export interface RankingRow {
  rank: number;
  datasetId: string;
  name: string;
  dataValue: number;
  dataValueText: string; // 4 decimals, what the table shows
  contributions: ContributionPart[];
}

export interface RankingModel {
  rows: RankingRow[];
  weights: Weights;
}

const DIMENSION_LABELS: Record<keyof Weights, string> = {
  utility: "Utility",
  creation_date: "Creation date",
  n_objects: "Objects",
  usage: "Usage",
};

const DIMENSION_VALUE: Record<keyof Weights, keyof DimensionVector> = {
  utility: "utility",
  creation_date: "currency",
  n_objects: "objects",
  usage: "usage",
};

export function formatValue(value: number): string {
  return value.toFixed(4);
}

/** Rows in exactly the response order; the UI never reorders them. */
export function buildRankingModel(response: RankResponse): RankingModel {
  const rows = response.ranked.map((item, index) => {
    const contributions = (Object.keys(DIMENSION_LABELS) as (keyof Weights)[]).map(
      (dimension) => {
        const weight = response.weights[dimension];
        const value = item.dimension_vector[DIMENSION_VALUE[dimension]];
        return {
          dimension,
          label: DIMENSION_LABELS[dimension],
          weight,
          value,
          product: weight * value,
        };
      },
    );
    return {
      rank: index + 1,
      datasetId: item.dataset_id,
      name: item.name,
      dataValue: item.data_value,
      dataValueText: formatValue(item.data_value),
      contributions,
    };
  });
  return { rows, weights: response.weights };
}

export interface ScoresModel {
  ndcgText: string;
  ndcgAtKText: string;
  k: number;
}

export function buildScoresModel(response: EvaluateResponse): ScoresModel {
  return {
    ndcgText: formatValue(response.ndcg),
    ndcgAtKText: formatValue(response.ndcg_at_k),
    k: response.k,
  };
}
