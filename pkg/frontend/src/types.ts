/** Payload shapes of the beamscope HTTP API. */

export interface TokenPayload {
  id: number;
  piece: string;
}

export interface TreeNodePayload {
  id: number;
  parent_id: number | null;
  token: TokenPayload | null;
  logprob: number;
  cum_logprob: number;
  depth: number;
  selected: boolean;
  pruned_at_step: number | null;
  completed: boolean;
  rank?: number | null;
}

export interface TreeDocument {
  schema_version: number;
  prompt: string;
  prompt_tokens: TokenPayload[];
  params: Record<string, unknown>;
  meta: Record<string, unknown>;
  nodes: TreeNodePayload[];
}

export interface SentimentEntry {
  score: number;
  label: 'negative' | 'neutral' | 'positive';
}

export interface GroupsPayload {
  method: 'embeddings' | 'piece';
  by_node: Record<string, number>;
}

export interface CollapsedNodePayload {
  id: number;
  piece: string | null;
  depth: number;
  cum_logprob: number;
  selected: boolean;
  keywords: string[];
}

export interface CollapsedEdgePayload {
  parent_id: number;
  child_id: number;
  hidden_count: number;
  probability: number;
  hidden_text: string;
}

export interface CollapsedViewPayload {
  nodes: CollapsedNodePayload[];
  edges: CollapsedEdgePayload[];
}

export interface TreeResponse {
  tree_id: string;
  tree: TreeDocument;
  sentiment?: Record<string, SentimentEntry>;
  groups?: GroupsPayload;
  collapsed?: CollapsedViewPayload;
}

export interface CoverageRow {
  rank: number;
  c: number;
  p: number | null;
}

export interface CoverageReportPayload {
  rows: CoverageRow[];
}

export interface ComparisonManifest {
  template: string;
  replacements: string[];
  resolved_prompts: string[];
  tree_ids: string[];
  divergence_depth: number;
}

export interface ComparisonResponse {
  comparison_id: string;
  manifest: ComparisonManifest;
}

export interface ComparisonCoveragePayload {
  reports: CoverageReportPayload[];
  partial_keywords: Record<string, number[]>;
  tree_ids: string[];
}

/** Per-tree view toggles; collapse references a wordlist name or null. */
export interface TreeToggles {
  ranks: boolean;
  sentiment: boolean;
  groups: boolean;
  collapseWordlist: string | null;
  includeStubs: boolean;
}

export const defaultToggles = (): TreeToggles => ({
  ranks: false,
  sentiment: false,
  groups: false,
  collapseWordlist: null,
  includeStubs: false,
});
