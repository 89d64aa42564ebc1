// Wire types of the ranking service JSON API.

export type UsageMode = "total" | "average";

export interface Weights {
  utility: number;
  creation_date: number;
  n_objects: number;
  usage: number;
}

export interface DimensionVector {
  utility: number;
  currency: number;
  objects: number;
  usage: number;
}

export interface RankedRow {
  dataset_id: string;
  name: string;
  data_value: number;
  dimension_vector: DimensionVector;
}

export interface RankResponse {
  weights: Weights; // normalized, sums to 1
  ranked: RankedRow[];
}

export interface EvaluateResponse {
  ndcg: number;
  ndcg_at_k: number;
  k: number;
}

export interface CatalogSummary {
  count: number;
  as_of_date: string;
  utility_sources: string[];
  default_utility_source: string | null;
  datasets: unknown[];
}

export interface ApiError {
  error: string;
  message: string;
}

export type ApiResult<T> =
  | { ok: true; body: T }
  | { ok: false; status: number; error: ApiError };
