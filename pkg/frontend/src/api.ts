// Thin typed wrappers over the service endpoints. Failures surface as
// { ok: false } results with the API's stable error body, never as throws,
// so callers can keep the previous ranking on screen.

import type {
  ApiResult,
  CatalogSummary,
  EvaluateResponse,
  RankResponse,
  UsageMode,
  Weights,
} from "./types.js";

export interface RankRequestBody {
  weights: Weights;
  usage_mode: UsageMode;
  utility_source: string | null;
}

async function post<T>(url: string, body: unknown): Promise<ApiResult<T>> {
  let response: Response;
  try {
    response = await fetch(url, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  } catch (exc) {
    return {
      ok: false,
      status: 0,
      error: { error: "network", message: String(exc) },
    };
  }
  if (!response.ok) {
    let error = { error: "http_error", message: `HTTP ${response.status}` };
    try {
      error = await response.json();
    } catch {
      // keep the generic message
    }
    return { ok: false, status: response.status, error };
  }
  return { ok: true, body: (await response.json()) as T };
}

export function fetchRanking(request: RankRequestBody): Promise<ApiResult<RankResponse>> {
  return post<RankResponse>("/api/rank", request);
}

export function fetchScores(
  request: RankRequestBody & { ideal_ranking: string[]; k: number },
): Promise<ApiResult<EvaluateResponse>> {
  return post<EvaluateResponse>("/api/evaluate", request);
}

export async function fetchCatalog(): Promise<ApiResult<CatalogSummary>> {
  try {
    const response = await fetch("/api/catalog");
    if (!response.ok) {
      return {
        ok: false,
        status: response.status,
        error: { error: "http_error", message: `HTTP ${response.status}` },
      };
    }
    return { ok: true, body: (await response.json()) as CatalogSummary };
  } catch (exc) {
    return { ok: false, status: 0, error: { error: "network", message: String(exc) } };
  }
}
