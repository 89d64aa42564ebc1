// Slider state: the four 0-10 dimension weights plus the usage-aggregate
// toggle and utility-source selector. Restorable from the URL query string
// so a stakeholder session can be shared as a link.

import type { UsageMode, Weights } from "./types.js";

export interface SliderState {
  utility: number;
  creation_date: number;
  n_objects: number;
  usage: number;
  usage_mode: UsageMode;
  utility_source: string | null;
}

export const DIMENSIONS = ["utility", "creation_date", "n_objects", "usage"] as const;
export type Dimension = (typeof DIMENSIONS)[number];

export const ALL_ZERO_MESSAGE =
  "All four weights are zero. Zero lets you discard a dimension, but at " +
  "least one weight must be non-zero to rank.";

export function defaultState(): SliderState {
  return {
    utility: 5,
    creation_date: 5,
    n_objects: 5,
    usage: 5,
    usage_mode: "total",
    utility_source: null,
  };
}

function clampSlider(raw: unknown): number {
  const value = typeof raw === "string" ? Number(raw) : raw;
  if (typeof value !== "number" || !Number.isFinite(value)) return 0;
  return Math.min(10, Math.max(0, Math.round(value)));
}

export function setSlider(state: SliderState, dimension: Dimension, value: number): SliderState {
  return { ...state, [dimension]: clampSlider(value) };
}

export function weightsOf(state: SliderState): Weights {
  return {
    utility: state.utility,
    creation_date: state.creation_date,
    n_objects: state.n_objects,
    usage: state.usage,
  };
}

/** The elicitation rule: a rank request needs at least one non-zero slider. */
export function canRequest(state: SliderState): boolean {
  return state.utility + state.creation_date + state.n_objects + state.usage > 0;
}

const QUERY_KEYS: Record<Dimension, string> = {
  utility: "u",
  creation_date: "c",
  n_objects: "o",
  usage: "s",
};

export function stateToQuery(state: SliderState): string {
  const params = new URLSearchParams();
  for (const dimension of DIMENSIONS) {
    params.set(QUERY_KEYS[dimension], String(state[dimension]));
  }
  params.set("mode", state.usage_mode);
  if (state.utility_source !== null) params.set("src", state.utility_source);
  return params.toString();
}

export function stateFromQuery(query: string): SliderState {
  const params = new URLSearchParams(query);
  const state = defaultState();
  for (const dimension of DIMENSIONS) {
    const raw = params.get(QUERY_KEYS[dimension]);
    if (raw !== null) state[dimension] = clampSlider(raw);
  }
  const mode = params.get("mode");
  if (mode === "total" || mode === "average") state.usage_mode = mode;
  const source = params.get("src");
  if (source) state.utility_source = source;
  return state;
}

/**
 * Parse a pasted ideal ranking: a JSON array of dataset id strings.
 * Returns the ids, or an error message for malformed input (no request is
 * issued in that case; permutation errors come back from the API).
 */
export function parseIdealRanking(text: string): { ids: string[] } | { error: string } {
  const trimmed = text.trim();
  if (trimmed === "") return { error: "Paste a JSON list of dataset ids." };
  let parsed: unknown;
  try {
    parsed = JSON.parse(trimmed);
  } catch {
    return { error: "Not valid JSON: expected something like [\"ds-07\", \"ds-02\", ...]." };
  }
  if (!Array.isArray(parsed) || parsed.length === 0 || !parsed.every((x) => typeof x === "string")) {
    return { error: "The ideal ranking must be a non-empty JSON array of dataset id strings." };
  }
  return { ids: parsed };
}
