// Wire types mirroring the service's JSON schemas.

export interface TreeNode {
  id: string;
  name?: string;
  children?: TreeNode[];
  weight?: number;
}

export interface CriteriaConfig {
  tree: TreeNode;
  matrices: Record<string, number[][]>;
}

export interface WeightsResponse {
  leaves: Record<string, number>;
  consistency: Record<string, { lambda_max: number; cr: number }>;
}

export interface WeightsFailure {
  error: string;
  detail: string;
  failed?: string[];
  consistency?: Record<string, { lambda_max: number; cr: number }>;
  row?: number;
  col?: number;
  node_id?: string;
}

export interface RankingEntry {
  rank: number;
  component_id: string;
  q_normalized: Record<string, number>;
  c_i: number;
  t_i: number;
  quality_term: number;
  penalty_term: number;
  score: number;
  selected: boolean;
}

export interface RankReport {
  winner: string | null;
  advisory: string | null;
  iterations: number;
  candidates_considered: Record<string, number>;
  rankings: RankingEntry[];
  rejected: { id: string; stage: string; reason: string }[];
  params: Record<string, unknown>;
}

export interface StabilityInterval {
  winner: string | null;
  alpha_start: number;
  alpha_end: number;
}

export interface SweepResponse {
  entries: { alpha: number; winner: string | null; report: RankReport }[];
  stability: StabilityInterval[];
}

export interface RankParams {
  criteria: CriteriaConfig;
  requiredServices: string[];
  alpha: number;
  threshold: number;
  costCap: number | null;
  timeCap: number | null;
}
