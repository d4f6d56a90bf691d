/** Payload shapes of the decision-service JSON API (the single source of truth;
 *  the UI never computes scores itself). */

export interface ThresholdPayload {
  q: number;
  p: number;
  v: number;
}

export interface ModelPayload {
  weights: number[];
  thresholds: ThresholdPayload[];
  exponent: number;
}

export interface CriteriaPayload {
  alternative_ids: string[];
  criterion_labels: string[];
  values: number[][];
}

export interface ScheduleEntryPayload {
  step: number;
  model?: ModelPayload;
  criteria?: CriteriaPayload;
}

export interface ScenarioPayload {
  criteria: CriteriaPayload;
  initial_model: ModelPayload;
  filter: { alpha: number } | { tau: number; dt: number };
  horizon: number;
  schedule: ScheduleEntryPayload[];
}

export interface RankingEntryPayload {
  id: string;
  score: number;
  rank: number;
}

export interface SessionStatePayload {
  session_id: string;
  step: number;
  scores: Record<string, number>;
  ranking: RankingEntryPayload[];
}

export interface StepStatePayload {
  step: number;
  scores: Record<string, number>;
  ranking: RankingEntryPayload[];
}

export interface RankEventPayload {
  upper_id: string;
  lower_id: string;
  step_before: number;
  step_after: number;
  crossing_time: number;
}

export interface FullStatePayload extends SessionStatePayload {
  history: StepStatePayload[];
  events: RankEventPayload[];
}

export interface AdvanceResponsePayload extends SessionStatePayload {
  new_events: RankEventPayload[];
}

export interface WhatIfRequestPayload {
  model?: ModelPayload;
  alpha?: number;
  horizon: number;
}

export interface WhatIfResponsePayload {
  trajectory: StepStatePayload[];
  events: RankEventPayload[];
}

/** Everything the UI needs from the service. */
export interface ServiceClient {
  createSession(scenario: ScenarioPayload): Promise<SessionStatePayload>;
  getState(sessionId: string): Promise<FullStatePayload>;
  advance(sessionId: string, count: number): Promise<AdvanceResponsePayload>;
  updateModel(sessionId: string, model: ModelPayload): Promise<{ acknowledged_at_step: number }>;
  whatIf(sessionId: string, request: WhatIfRequestPayload): Promise<WhatIfResponsePayload>;
}
