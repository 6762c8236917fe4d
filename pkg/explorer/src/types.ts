// Payload shapes of the snapshot API. The explorer never computes scores,
// trees, or clusters: every displayed number comes out of these payloads.

export interface UncertaintyTriple {
  E: number;
  H: number;
  T: number;
}

export interface NetworkNode {
  id: string;
  label: string;
  citations: number;
  cluster: number;
  betweenness: number;
  uncertainty: UncertaintyTriple;
}

export interface NetworkEdge {
  source: string;
  target: string;
  weight: number;
}

export interface NetworkPayload {
  nodes: NetworkNode[];
  edges: NetworkEdge[];
  slices: string[];
  labels: Record<string, string>;
  modularity: number;
  weighted_silhouette: number;
}

export interface ClusterSummary {
  index: number;
  label: string;
  size: number;
  silhouette: number;
  uncertainty: UncertaintyTriple;
}

export interface ClustersPayload {
  modularity: number;
  weighted_silhouette: number;
  clusters: ClusterSummary[];
}

export interface ClusterMember {
  id: string;
  label: string;
  citations: number;
  betweenness: number;
}

export interface ClusterDetailPayload extends ClusterSummary {
  members: ClusterMember[];
}

export interface TreeNode {
  phrase: string;
  frequency: number;
  children: TreeNode[];
}

export interface ConceptTreePayload {
  scope: string;
  root: TreeNode | null;
}

export interface HighlightSpan {
  kind: string; // E | H | T cue kinds, R for rhetorical
  start: number;
  end: number;
  cue: string;
}

export interface ContextRow {
  citing_id: string;
  cited_id: string;
  ordinal: number;
  text: string;
  date: string | null;
  scores: UncertaintyTriple;
  spans: HighlightSpan[];
  link: string | null;
}

export interface ContextsPayload {
  concept: string | null;
  contexts: ContextRow[];
}

export interface UncertaintyRow {
  citing_id: string;
  cited_id: string;
  ordinal: number;
  score: number;
  text: string;
  cue_spans: HighlightSpan[];
  rhetorical_spans: HighlightSpan[];
  link: string | null;
}

export interface UncertaintyPayload {
  kind: string;
  rows: UncertaintyRow[];
}

export interface SvaRow {
  id: string;
  M: number;
  "C-L": number;
  "C-D": number;
  Harmonic: number;
  Citations: number;
  NR: number;
  Title: string;
}

export interface SvaPayload {
  window: [string, string];
  columns: string[];
  rows: SvaRow[];
  skipped: [string, string][];
}

export interface MetaPayload {
  schema_version: number;
  corpus_digest: string;
  records: number;
  contexts: number;
  nodes: number;
  edges: number;
  clusters: number;
  slices: string[];
  params: Record<string, unknown>;
}
