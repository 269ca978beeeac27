// What-if state: the single source of truth the widgets render from.
// Slider moves are debounced, and every request carries a sequence number so
// an out-of-order response can never clobber a newer one.

import type { ApiResult } from "./api.js";
import type {
  CriteriaConfig,
  RankParams,
  RankReport,
  StabilityInterval,
  SweepResponse,
  WeightsFailure,
  WeightsResponse,
} from "./types.js";

/** The slice of the HTTP client the controller needs; fakes implement this. */
export interface DecisionApi {
  weights(criteria: CriteriaConfig, crThreshold?: number):
    Promise<ApiResult<WeightsResponse | WeightsFailure>>;
  rank(params: RankParams): Promise<ApiResult<RankReport>>;
  sensitivity(params: RankParams, alphas: number[]): Promise<ApiResult<SweepResponse>>;
}

export interface CrBadge {
  state: "ok" | "warn" | "error";
  cr: number | null;
  hint: string | null;
}

export interface WhatIfSnapshot {
  alpha: number;
  threshold: number;
  requiredServices: string[];
  costCap: number | null;
  timeCap: number | null;
  report: RankReport | null;
  reportText: string | null;
  stability: StabilityInterval[] | null;
  crBadge: CrBadge | null;
  winnerFlipped: boolean;
  lastError: string | null;
}

export const RANK_DEBOUNCE_MS = 150;

export class WhatIfController {
  alpha = 0.5;
  threshold = 0.0;
  requiredServices: string[] = [];
  costCap: number | null = null;
  timeCap: number | null = null;
  criteria: CriteriaConfig;

  report: RankReport | null = null;
  reportText: string | null = null;
  stability: StabilityInterval[] | null = null;
  crBadge: CrBadge | null = null;
  winnerFlipped = false;
  lastError: string | null = null;

  private rankSeq = 0;
  private weightsSeq = 0;
  private rankTimer: ReturnType<typeof setTimeout> | null = null;
  private listeners: (() => void)[] = [];

  constructor(private api: DecisionApi, criteria: CriteriaConfig,
              private debounceMs: number = RANK_DEBOUNCE_MS) {
    this.criteria = criteria;
  }

  onChange(fn: () => void): void {
    this.listeners.push(fn);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  snapshot(): WhatIfSnapshot {
    return {
      alpha: this.alpha,
      threshold: this.threshold,
      requiredServices: [...this.requiredServices],
      costCap: this.costCap,
      timeCap: this.timeCap,
      report: this.report,
      reportText: this.reportText,
      stability: this.stability,
      crBadge: this.crBadge,
      winnerFlipped: this.winnerFlipped,
      lastError: this.lastError,
    };
  }

  /** Debounced slider handler; resolves once the final request settles. */
  moveAlpha(value: number): Promise<void> {
    if (value < 0 || value > 1) throw new Error(`alpha ${value} outside [0, 1]`);
    this.alpha = value;
    return new Promise((resolve) => {
      if (this.rankTimer !== null) clearTimeout(this.rankTimer);
      this.rankTimer = setTimeout(() => {
        this.rankTimer = null;
        void this.refreshRank().then(resolve);
      }, this.debounceMs);
    });
  }

  async refreshRank(): Promise<void> {
    const seq = ++this.rankSeq;
    try {
      const result = await this.api.rank({
        criteria: this.criteria,
        requiredServices: this.requiredServices,
        alpha: this.alpha,
        threshold: this.threshold,
        costCap: this.costCap,
        timeCap: this.timeCap,
      });
      if (seq !== this.rankSeq) return; // a newer request superseded this one
      if (result.status !== 200) {
        this.lastError = describeFailure(result.body as unknown as WeightsFailure);
        this.notify();
        return; // keep the last good report
      }
      const previousWinner = this.report?.winner ?? null;
      this.report = result.body;
      this.reportText = result.text;
      this.winnerFlipped = this.report.winner !== null
        && previousWinner !== null
        && this.report.winner !== previousWinner;
      this.lastError = null;
    } catch (err) {
      if (seq !== this.rankSeq) return;
      this.lastError = String(err);
    }
    this.notify();
  }

  async refreshStability(steps = 21): Promise<void> {
    const alphas = Array.from({ length: steps }, (_, i) => i / (steps - 1));
    const result = await this.api.sensitivity({
      criteria: this.criteria,
      requiredServices: this.requiredServices,
      alpha: this.alpha,
      threshold: this.threshold,
      costCap: this.costCap,
      timeCap: this.timeCap,
    }, alphas);
    if (result.status === 200) {
      this.stability = result.body.stability;
      this.lastError = null;
    } else {
      this.lastError = describeFailure(result.body as unknown as WeightsFailure);
    }
    this.notify();
  }

  /** Live CR refresh after a grid edit; 422 payloads fill the warn badge. */
  async refreshWeights(hint: string | null = null, crThreshold = 0.1): Promise<void> {
    const seq = ++this.weightsSeq;
    try {
      const result = await this.api.weights(this.criteria, crThreshold);
      if (seq !== this.weightsSeq) return;
      if (result.status === 200) {
        const ok = result.body as WeightsResponse;
        const worst = Math.max(
          0, ...Object.values(ok.consistency).map((c) => c.cr));
        this.crBadge = { state: "ok", cr: worst, hint: null };
      } else {
        const bad = result.body as WeightsFailure;
        const failed = bad.failed?.[0];
        const cr = failed && bad.consistency ? bad.consistency[failed].cr : null;
        this.crBadge = { state: cr === null ? "error" : "warn", cr, hint };
        this.lastError = cr === null ? bad.detail : null;
      }
    } catch (err) {
      if (seq !== this.weightsSeq) return;
      this.crBadge = { state: "error", cr: null, hint: null };
      this.lastError = String(err);
    }
    this.notify();
  }

  /** The downloadable report: exactly the bytes the server sent. */
  exportReport(): { filename: string; content: string } | null {
    if (this.reportText === null) return null;
    return { filename: "comporank-report.json", content: this.reportText };
  }
}

function describeFailure(body: WeightsFailure | { detail?: unknown }): string {
  if (typeof (body as WeightsFailure).detail === "string") {
    return (body as WeightsFailure).detail as string;
  }
  return JSON.stringify(body);
}
