import { buildChart, seriesColor, type ChartMarker, type ChartSeries } from "./chart";
import { formatSumBadge, renormalizeWeights } from "./simplex";
import {
  DEFAULT_ALPHA,
  DEFAULT_HORIZON,
  DEFAULT_MODEL,
  SAMPLE_CRITERIA,
  parseCriteriaCsv,
} from "./sample";
import type {
  CriteriaPayload,
  FullStatePayload,
  ModelPayload,
  RankEventPayload,
  RankingEntryPayload,
  ServiceClient,
  StepStatePayload,
  WhatIfRequestPayload,
} from "./types";

export interface Overlay {
  label: string;
  trajectory: StepStatePayload[];
  events: RankEventPayload[];
  /** set when the overlay previews a concrete model that can be committed */
  model?: ModelPayload;
}

interface ViewState {
  sessionId: string | null;
  criteria: CriteriaPayload | null;
  weights: number[];
  thresholds: { q: number; p: number; v: number }[];
  exponent: number;
  alpha: number;
  history: StepStatePayload[];
  events: RankEventPayload[];
  ranking: RankingEntryPayload[];
  steadyPreview: RankingEntryPayload[] | null;
  overlays: Overlay[];
  busy: boolean;
  error: string | null;
}

const SKELETON = `
  <div class="columns">
    <section class="panel" data-role="dataset-panel">
      <h2>Dataset</h2>
      <div class="controls">
        <button type="button" data-role="load-sample">Load bundled sample</button>
        <input type="file" accept=".csv" data-role="file-input" />
      </div>
      <div data-role="error-banner" class="error-banner" hidden></div>
      <table data-role="criteria-table" class="criteria-table"></table>

      <h2>Preferences</h2>
      <div data-role="weight-editor" class="weight-editor"></div>
      <div class="sum-row">
        <span data-role="sum-badge" class="sum-badge"></span>
        <button type="button" data-role="apply-model">Apply preferences</button>
      </div>
      <div data-role="threshold-editor" class="threshold-editor"></div>
      <label class="alpha-row">
        smoothing α
        <input type="number" min="0.01" max="1" step="0.01" data-role="alpha-input" />
      </label>

      <h2>Advance</h2>
      <div class="controls">
        <input type="number" min="1" value="1" data-role="advance-count" />
        <button type="button" data-role="advance">Advance</button>
        <button type="button" data-role="auto-toggle">Auto ▶</button>
      </div>

      <h2>What-if</h2>
      <div class="controls">
        <input type="number" min="0.01" max="1" step="0.01" data-role="whatif-alpha" placeholder="α" />
        <input type="number" min="1" value="${DEFAULT_HORIZON}" data-role="whatif-horizon" />
        <button type="button" data-role="preview-alpha">Preview α</button>
        <button type="button" data-role="preview-model">Preview edited model</button>
      </div>
      <div class="controls">
        <button type="button" data-role="commit-preview">Commit previewed model</button>
        <button type="button" data-role="clear-overlays">Clear overlays</button>
      </div>
    </section>

    <section class="panel">
      <h2>Ranking <span data-role="step-indicator" class="step-indicator"></span></h2>
      <table data-role="ranking" class="ranking-table"></table>
      <div data-role="steady-preview-wrap" hidden>
        <h3>Steady-state preview</h3>
        <table data-role="steady-preview" class="ranking-table"></table>
      </div>
      <h2>Trajectory</h2>
      <div data-role="chart" class="chart-host"></div>
      <h3>Rank crossings</h3>
      <ul data-role="events" class="event-list"></ul>
    </section>
  </div>
`;

export class SteeringApp {
  readonly state: ViewState;
  private autoTimer: ReturnType<typeof setInterval> | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ServiceClient,
    private readonly pollIntervalMs = 500,
  ) {
    this.state = {
      sessionId: null,
      criteria: null,
      weights: [...DEFAULT_MODEL.weights],
      thresholds: DEFAULT_MODEL.thresholds.map((t) => ({ ...t })),
      exponent: DEFAULT_MODEL.exponent,
      alpha: DEFAULT_ALPHA,
      history: [],
      events: [],
      ranking: [],
      steadyPreview: null,
      overlays: [],
      busy: false,
      error: null,
    };
    root.innerHTML = SKELETON;
    this.bind();
    this.renderAll();
  }

  private query<T extends HTMLElement>(role: string): T {
    const node = this.root.querySelector(`[data-role="${role}"]`);
    if (!node) throw new Error(`missing element ${role}`);
    return node as T;
  }

  private bind(): void {
    this.query("load-sample").addEventListener("click", () => {
      void this.loadBundledSample();
    });
    this.query<HTMLInputElement>("file-input").addEventListener("change", (event) => {
      const input = event.target as HTMLInputElement;
      const file = input.files?.[0];
      if (!file) return;
      void file.text().then((text) => this.loadCsvText(text));
    });
    this.query("apply-model").addEventListener("click", () => {
      void this.applyPreferences();
    });
    this.query("advance").addEventListener("click", () => {
      const count = Number(this.query<HTMLInputElement>("advance-count").value) || 1;
      void this.advance(count);
    });
    this.query("auto-toggle").addEventListener("click", () => this.toggleAutoAdvance());
    this.query("preview-alpha").addEventListener("click", () => {
      const alpha = Number(this.query<HTMLInputElement>("whatif-alpha").value);
      const horizon = Number(this.query<HTMLInputElement>("whatif-horizon").value) || DEFAULT_HORIZON;
      if (alpha > 0 && alpha <= 1) void this.previewAlpha(alpha, horizon);
    });
    this.query("preview-model").addEventListener("click", () => {
      const horizon = Number(this.query<HTMLInputElement>("whatif-horizon").value) || DEFAULT_HORIZON;
      void this.previewEditedModel(horizon);
    });
    this.query("commit-preview").addEventListener("click", () => {
      void this.commitPreview();
    });
    this.query("clear-overlays").addEventListener("click", () => this.clearOverlays());
    this.query<HTMLInputElement>("alpha-input").addEventListener("change", (event) => {
      const value = Number((event.target as HTMLInputElement).value);
      if (value > 0 && value <= 1) this.state.alpha = value;
    });
  }

  // ----------------------------------------------------------------- dataset

  currentModel(): ModelPayload {
    return {
      weights: [...this.state.weights],
      thresholds: this.state.thresholds.map((t) => ({ ...t })),
      exponent: this.state.exponent,
    };
  }

  async loadBundledSample(): Promise<void> {
    await this.loadCriteria(SAMPLE_CRITERIA);
  }

  async loadCsvText(text: string): Promise<void> {
    let criteria: CriteriaPayload;
    try {
      criteria = parseCriteriaCsv(text);
    } catch (error) {
      this.fail(error);
      return;
    }
    await this.loadCriteria(criteria);
  }

  async loadCriteria(criteria: CriteriaPayload): Promise<void> {
    const n = criteria.criterion_labels.length;
    if (this.state.weights.length !== n) {
      this.state.weights = Array.from({ length: n }, () => 1 / n);
      this.state.thresholds = Array.from({ length: n }, () => ({ q: 0, p: 0.1, v: 0.3 }));
    }
    try {
      const created = await this.client.createSession({
        criteria,
        initial_model: this.currentModel(),
        filter: { alpha: this.state.alpha },
        horizon: DEFAULT_HORIZON,
        schedule: [],
      });
      this.state.criteria = criteria;
      this.state.sessionId = created.session_id;
      this.state.ranking = created.ranking;
      this.state.history = [{ step: created.step, scores: created.scores, ranking: created.ranking }];
      this.state.events = [];
      this.state.overlays = [];
      this.state.steadyPreview = null;
      this.state.error = null;
    } catch (error) {
      this.fail(error);
      return;
    }
    this.renderAll();
  }

  // -------------------------------------------------------------- preferences

  setWeight(index: number, value: number): void {
    this.state.weights = renormalizeWeights(this.state.weights, index, value);
    // update in place so the dragged slider keeps pointer capture
    this.syncWeightEditor(index);
  }

  setThreshold(index: number, field: "q" | "p" | "v", value: number): void {
    this.state.thresholds[index][field] = value;
    this.renderEditor();
  }

  async applyPreferences(): Promise<void> {
    if (!this.state.sessionId || this.state.busy) return;
    this.state.busy = true;
    this.renderControls();
    try {
      await this.client.updateModel(this.state.sessionId, this.currentModel());
      // ask the service where this model leads; never rank locally
      const preview = await this.client.whatIf(this.state.sessionId, {
        horizon: DEFAULT_HORIZON,
      });
      const last = preview.trajectory[preview.trajectory.length - 1];
      this.state.steadyPreview = last ? last.ranking : null;
      this.state.error = null;
    } catch (error) {
      this.fail(error);
    } finally {
      this.state.busy = false;
    }
    this.renderAll();
  }

  // ------------------------------------------------------------------ advance

  async advance(count: number): Promise<void> {
    if (!this.state.sessionId || this.state.busy || count < 1) return;
    this.state.busy = true;
    this.renderControls();
    try {
      await this.client.advance(this.state.sessionId, count);
      const refreshed = await this.client.getState(this.state.sessionId);
      this.applyFullState(refreshed);
      this.state.error = null;
    } catch (error) {
      this.fail(error);
    } finally {
      this.state.busy = false;
    }
    this.renderAll();
  }

  toggleAutoAdvance(): void {
    if (this.autoTimer !== null) {
      this.stopAutoAdvance();
      return;
    }
    this.autoTimer = setInterval(() => {
      if (!this.state.busy) void this.advance(1);
    }, this.pollIntervalMs);
    this.query("auto-toggle").textContent = "Auto ■";
  }

  stopAutoAdvance(): void {
    if (this.autoTimer !== null) clearInterval(this.autoTimer);
    this.autoTimer = null;
    this.query("auto-toggle").textContent = "Auto ▶";
  }

  async refreshState(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      this.applyFullState(await this.client.getState(this.state.sessionId));
    } catch (error) {
      this.fail(error);
    }
    this.renderAll();
  }

  private applyFullState(full: FullStatePayload): void {
    this.state.history = full.history;
    this.state.events = full.events;
    this.state.ranking = full.ranking;
  }

  // ------------------------------------------------------------------ what-if

  async previewAlpha(alpha: number, horizon: number): Promise<void> {
    await this.preview({ alpha, horizon }, `α=${alpha}`);
  }

  async previewEditedModel(horizon: number): Promise<void> {
    const model = this.currentModel();
    await this.preview({ model, horizon }, "edited model", model);
  }

  private async preview(
    body: WhatIfRequestPayload,
    label: string,
    model?: ModelPayload,
  ): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const response = await this.client.whatIf(this.state.sessionId, body);
      this.state.overlays.push({
        label,
        trajectory: response.trajectory,
        events: response.events,
        model,
      });
      this.state.error = null;
    } catch (error) {
      this.state.overlays = [];
      this.fail(error);
    }
    this.renderAll();
  }

  /** Promote the model of the most recent model-preview to the live session. */
  async commitPreview(): Promise<void> {
    const candidate = [...this.state.overlays].reverse().find((o) => o.model);
    if (!candidate || !this.state.sessionId) return;
    this.state.weights = [...candidate.model!.weights];
    this.state.thresholds = candidate.model!.thresholds.map((t) => ({ ...t }));
    this.state.exponent = candidate.model!.exponent;
    await this.applyPreferences();
  }

  clearOverlays(): void {
    this.state.overlays = [];
    this.renderAll();
  }

  // ---------------------------------------------------------------- rendering

  private fail(error: unknown): void {
    this.state.error = error instanceof Error ? error.message : String(error);
    this.renderError();
  }

  private renderAll(): void {
    this.renderError();
    this.renderCriteria();
    this.renderEditor();
    this.renderRanking();
    this.renderChart();
    this.renderEvents();
    this.renderControls();
  }

  private renderError(): void {
    const banner = this.query("error-banner");
    banner.hidden = this.state.error === null;
    banner.textContent = this.state.error ?? "";
  }

  private renderCriteria(): void {
    const table = this.query<HTMLTableElement>("criteria-table");
    const criteria = this.state.criteria;
    if (!criteria) {
      table.innerHTML = "";
      return;
    }
    const head = `<tr><th>alternative</th>${criteria.criterion_labels
      .map((label) => `<th>${label}</th>`)
      .join("")}</tr>`;
    const body = criteria.alternative_ids
      .map((id, i) => {
        const cells = criteria.values[i].map((v) => `<td>${v}</td>`).join("");
        return `<tr data-alternative="${id}"><td>${id}</td>${cells}</tr>`;
      })
      .join("");
    table.innerHTML = head + body;
  }

  /** Refresh slider positions and value labels without rebuilding the rows. */
  private syncWeightEditor(skipSlider?: number): void {
    const editor = this.query("weight-editor");
    const sliders = editor.querySelectorAll<HTMLInputElement>('[data-role="weight-slider"]');
    const labels = editor.querySelectorAll<HTMLElement>('[data-role="weight-value"]');
    if (sliders.length !== this.state.weights.length) {
      this.renderEditor();
      return;
    }
    this.state.weights.forEach((weight, k) => {
      if (k !== skipSlider) sliders[k].value = String(weight);
      labels[k].textContent = weight.toFixed(3);
    });
    this.query("sum-badge").textContent = formatSumBadge(this.state.weights);
  }

  private renderEditor(): void {
    const editor = this.query("weight-editor");
    const labels = this.state.criteria?.criterion_labels
      ?? this.state.weights.map((_, k) => `w${k + 1}`);
    editor.innerHTML = "";
    this.state.weights.forEach((weight, k) => {
      const row = document.createElement("label");
      row.className = "weight-row";
      row.innerHTML = `
        <span class="weight-label">${labels[k]}</span>
        <input type="range" min="0" max="1" step="0.001" value="${weight}"
               data-role="weight-slider" data-index="${k}" />
        <span class="weight-value" data-role="weight-value">${weight.toFixed(3)}</span>
      `;
      const slider = row.querySelector("input") as HTMLInputElement;
      slider.addEventListener("input", () => this.setWeight(k, Number(slider.value)));
      editor.appendChild(row);
    });
    this.query("sum-badge").textContent = formatSumBadge(this.state.weights);

    const thresholdEditor = this.query("threshold-editor");
    thresholdEditor.innerHTML = "";
    this.state.thresholds.forEach((triple, k) => {
      const row = document.createElement("div");
      row.className = "threshold-row";
      row.innerHTML = `<span class="weight-label">${labels[k]}</span>` +
        (["q", "p", "v"] as const)
          .map((field) =>
            `<label>${field}<input type="number" step="0.01" min="0" value="${triple[field]}"
              data-role="threshold-${field}" data-index="${k}" /></label>`)
          .join("");
      (["q", "p", "v"] as const).forEach((field) => {
        const input = row.querySelector(`[data-role="threshold-${field}"]`) as HTMLInputElement;
        input.addEventListener("change", () => this.setThreshold(k, field, Number(input.value)));
      });
      thresholdEditor.appendChild(row);
    });
    this.query<HTMLInputElement>("alpha-input").value = String(this.state.alpha);
  }

  private renderRankingInto(table: HTMLTableElement, entries: RankingEntryPayload[]): void {
    if (entries.length === 0) {
      table.innerHTML = "";
      return;
    }
    table.innerHTML =
      "<tr><th>rank</th><th>alternative</th><th>score</th></tr>" +
      entries
        .map(
          (entry) =>
            `<tr data-alternative="${entry.id}"><td>${entry.rank}</td>` +
            `<td>${entry.id}</td><td>${entry.score.toFixed(8)}</td></tr>`,
        )
        .join("");
  }

  private renderRanking(): void {
    this.renderRankingInto(this.query<HTMLTableElement>("ranking"), this.state.ranking);
    const wrap = this.query("steady-preview-wrap");
    wrap.hidden = this.state.steadyPreview === null;
    if (this.state.steadyPreview) {
      this.renderRankingInto(
        this.query<HTMLTableElement>("steady-preview"),
        this.state.steadyPreview,
      );
    }
    const step = this.state.history.length > 0
      ? this.state.history[this.state.history.length - 1].step
      : null;
    this.query("step-indicator").textContent = step === null ? "" : `step ${step}`;
  }

  private renderChart(): void {
    const host = this.query("chart");
    host.innerHTML = "";
    const criteria = this.state.criteria;
    if (!criteria || this.state.history.length === 0) return;

    const series: ChartSeries[] = criteria.alternative_ids.map((id, index) => ({
      id,
      color: seriesColor(index),
      points: this.state.history.map((step) => ({ step: step.step, score: step.scores[id] })),
    }));
    for (const overlay of this.state.overlays) {
      criteria.alternative_ids.forEach((id, index) => {
        series.push({
          id: `${overlay.label}:${id}`,
          color: seriesColor(index),
          dashed: true,
          points: overlay.trajectory.map((step) => ({ step: step.step, score: step.scores[id] })),
        });
      });
    }
    const markers: ChartMarker[] = this.state.events.map((event) => ({
      time: event.crossing_time,
      label: `${event.upper_id} over ${event.lower_id}`,
    }));
    for (const overlay of this.state.overlays) {
      markers.push(
        ...overlay.events.map((event) => ({
          time: event.crossing_time,
          label: `${overlay.label}: ${event.upper_id} over ${event.lower_id}`,
        })),
      );
    }
    host.appendChild(buildChart(series, markers));
  }

  private renderEvents(): void {
    const list = this.query("events");
    list.innerHTML = this.state.events
      .map(
        (event) =>
          `<li>${event.upper_id} over ${event.lower_id} at t≈${event.crossing_time.toFixed(2)}` +
          ` (between steps ${event.step_before} and ${event.step_after})</li>`,
      )
      .join("");
  }

  private renderControls(): void {
    const busy = this.state.busy;
    this.query<HTMLButtonElement>("advance").disabled = busy || !this.state.sessionId;
    this.query<HTMLButtonElement>("apply-model").disabled = busy || !this.state.sessionId;
  }
}
