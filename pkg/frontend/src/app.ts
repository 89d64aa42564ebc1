// Browser entry point: wires the sliders, ranking table, and score panel
// to the service API. All projection logic lives in the DOM-free modules.

import { fetchCatalog, fetchRanking, fetchScores, type RankRequestBody } from "./api.js";
import { buildRankingModel, buildScoresModel, type RankingModel } from "./model.js";
import { Debouncer, LatestWins } from "./scheduler.js";
import {
  ALL_ZERO_MESSAGE,
  DIMENSIONS,
  canRequest,
  parseIdealRanking,
  setSlider,
  stateFromQuery,
  stateToQuery,
  weightsOf,
  type Dimension,
  type SliderState,
} from "./state.js";

const DEBOUNCE_MS = 150;

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function el(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Array<string | Node>
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "className") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

let state: SliderState = stateFromQuery(location.search);
let idealRanking: string[] | null = null;
const rankDebounce = new Debouncer(DEBOUNCE_MS);
const rankSequence = new LatestWins();
const scoreSequence = new LatestWins();

function requestBody(): RankRequestBody {
  return {
    weights: weightsOf(state),
    usage_mode: state.usage_mode,
    utility_source: state.utility_source,
  };
}

function syncUrl(): void {
  history.replaceState(null, "", `?${stateToQuery(state)}`);
}

function showBanner(message: string | null): void {
  const banner = $("banner");
  if (message === null) {
    banner.hidden = true;
    banner.textContent = "";
  } else {
    banner.hidden = false;
    banner.textContent = message;
  }
}

function renderTable(model: RankingModel): void {
  const body = $("ranking-body");
  body.innerHTML = "";
  for (const row of model.rows) {
    const bar = el("div", { className: "bar" });
    for (const part of row.contributions) {
      if (part.product <= 0) continue;
      const segment = el("span", {
        className: `bar-segment dim-${part.dimension}`,
        title: `${part.label}: ${part.weight.toFixed(3)} x ${part.value.toFixed(3)} = ${part.product.toFixed(4)}`,
      });
      segment.style.width = `${(part.product * 100).toFixed(2)}%`;
      bar.append(segment);
    }
    body.append(
      el(
        "tr",
        {},
        el("td", { className: "rank" }, String(row.rank)),
        el("td", {}, el("div", {}, row.name), el("div", { className: "muted" }, row.datasetId)),
        el("td", { className: "value" }, row.dataValueText),
        el("td", { className: "breakdown" }, bar),
      ),
    );
  }
}

function renderScores(text: { ndcgText: string; ndcgAtKText: string; k: number } | null, note = ""): void {
  $("score-ndcg").textContent = text ? text.ndcgText : "–";
  $("score-ndcg-k").textContent = text ? text.ndcgAtKText : "–";
  $("score-k-label").textContent = text ? `NDCG@${text.k}` : "NDCG@5";
  $("ideal-note").textContent = note;
}

async function refreshScores(): Promise<void> {
  if (idealRanking === null) return;
  const seq = scoreSequence.next();
  const result = await fetchScores({ ...requestBody(), ideal_ranking: idealRanking, k: 5 });
  if (!scoreSequence.accept(seq)) return;
  if (result.ok) {
    renderScores(buildScoresModel(result.body));
  } else {
    renderScores(null, result.error.message);
  }
}

async function issueRank(): Promise<void> {
  const seq = rankSequence.next();
  const result = await fetchRanking(requestBody());
  if (!rankSequence.accept(seq)) return;
  if (result.ok) {
    showBanner(null);
    renderTable(buildRankingModel(result.body));
    void refreshScores();
  } else {
    // keep the previous ranking on screen; the banner explains the failure
    showBanner(result.error.message);
  }
}

function scheduleRank(): void {
  if (!canRequest(state)) {
    rankDebounce.cancel();
    showBanner(ALL_ZERO_MESSAGE);
    return;
  }
  rankDebounce.schedule(() => void issueRank());
}

function bindSlider(dimension: Dimension): void {
  const input = $(`slider-${dimension}`) as HTMLInputElement;
  const label = $(`value-${dimension}`);
  input.value = String(state[dimension]);
  label.textContent = String(state[dimension]);
  input.addEventListener("input", () => {
    state = setSlider(state, dimension, Number(input.value));
    label.textContent = String(state[dimension]);
    syncUrl();
    scheduleRank();
  });
}

function bindControls(): void {
  for (const dimension of DIMENSIONS) bindSlider(dimension);

  const mode = $("usage-mode") as HTMLSelectElement;
  mode.value = state.usage_mode;
  mode.addEventListener("change", () => {
    state = { ...state, usage_mode: mode.value === "average" ? "average" : "total" };
    syncUrl();
    scheduleRank();
  });

  const source = $("utility-source") as HTMLSelectElement;
  source.addEventListener("change", () => {
    state = { ...state, utility_source: source.value === "" ? null : source.value };
    syncUrl();
    scheduleRank();
  });

  const idealInput = $("ideal-input") as HTMLTextAreaElement;
  $("ideal-apply").addEventListener("click", () => {
    const parsed = parseIdealRanking(idealInput.value);
    if ("error" in parsed) {
      idealRanking = null;
      renderScores(null, parsed.error);
      return;
    }
    idealRanking = parsed.ids;
    $("ideal-note").textContent = "";
    void refreshScores();
  });
}

async function loadCatalog(): Promise<void> {
  const result = await fetchCatalog();
  if (!result.ok) {
    showBanner(`Cannot load the catalog: ${result.error.message}`);
    return;
  }
  const summary = result.body;
  $("catalog-info").textContent =
    `${summary.count} datasets, as of ${summary.as_of_date}`;
  const source = $("utility-source") as HTMLSelectElement;
  source.innerHTML = "";
  source.append(el("option", { value: "" }, "default"));
  for (const label of summary.utility_sources) {
    source.append(el("option", { value: label }, label));
  }
  if (state.utility_source && summary.utility_sources.includes(state.utility_source)) {
    source.value = state.utility_source;
  } else {
    state = { ...state, utility_source: null };
    source.value = "";
  }
}

async function main(): Promise<void> {
  bindControls();
  await loadCatalog();
  scheduleRank();
}

window.addEventListener("load", () => void main());
