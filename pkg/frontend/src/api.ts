import type {
  AdvanceResponsePayload,
  FullStatePayload,
  ModelPayload,
  ScenarioPayload,
  ServiceClient,
  SessionStatePayload,
  WhatIfRequestPayload,
  WhatIfResponsePayload,
} from "./types";

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    let detail = `${response.status} ${response.statusText}`;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep the status line
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}

/** Fetch-based client for the decision service mounted under /api. */
export class HttpServiceClient implements ServiceClient {
  constructor(private readonly base: string = "") {}

  createSession(scenario: ScenarioPayload): Promise<SessionStatePayload> {
    return request(`${this.base}/api/sessions`, {
      method: "POST",
      body: JSON.stringify({ scenario }),
    });
  }

  getState(sessionId: string): Promise<FullStatePayload> {
    return request(`${this.base}/api/sessions/${sessionId}`);
  }

  advance(sessionId: string, count: number): Promise<AdvanceResponsePayload> {
    return request(`${this.base}/api/sessions/${sessionId}/step`, {
      method: "POST",
      body: JSON.stringify({ count }),
    });
  }

  updateModel(sessionId: string, model: ModelPayload): Promise<{ acknowledged_at_step: number }> {
    return request(`${this.base}/api/sessions/${sessionId}/model`, {
      method: "POST",
      body: JSON.stringify(model),
    });
  }

  whatIf(sessionId: string, body: WhatIfRequestPayload): Promise<WhatIfResponsePayload> {
    return request(`${this.base}/api/sessions/${sessionId}/whatif`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }
}
