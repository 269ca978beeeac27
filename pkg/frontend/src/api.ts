// Thin typed client for the decision service. The service is stateless, so
// every call carries the full criteria; raw response text is kept so exports
// are byte-identical to what the server sent.

import type {
  CriteriaConfig,
  RankParams,
  RankReport,
  SweepResponse,
  WeightsFailure,
  WeightsResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface ApiResult<T> {
  status: number;
  text: string;
  body: T;
}

export class ApiClient {
  constructor(private baseUrl = "", private fetchImpl: FetchLike = fetch.bind(globalThis)) {}

  private async post<T>(path: string, payload: unknown): Promise<ApiResult<T>> {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    const text = await resp.text();
    return { status: resp.status, text, body: JSON.parse(text) as T };
  }

  weights(criteria: CriteriaConfig, crThreshold = 0.1):
      Promise<ApiResult<WeightsResponse | WeightsFailure>> {
    return this.post("/api/weights", { criteria, cr_threshold: crThreshold });
  }

  rank(params: RankParams): Promise<ApiResult<RankReport>> {
    return this.post("/api/rank", rankBody(params));
  }

  sensitivity(params: RankParams, alphas: number[]): Promise<ApiResult<SweepResponse>> {
    return this.post("/api/sensitivity", { ...rankBody(params), alphas });
  }

  async catalog(): Promise<ApiResult<unknown>> {
    const resp = await this.fetchImpl(this.baseUrl + "/api/catalog");
    const text = await resp.text();
    return { status: resp.status, text, body: JSON.parse(text) };
  }
}

function rankBody(params: RankParams): Record<string, unknown> {
  const body: Record<string, unknown> = {
    criteria: params.criteria,
    required_services: params.requiredServices,
    alpha: params.alpha,
    threshold: params.threshold,
  };
  if (params.costCap !== null) body.cost_cap = params.costCap;
  if (params.timeCap !== null) body.time_cap = params.timeCap;
  return body;
}
