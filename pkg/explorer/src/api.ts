import type {
  ClusterDetailPayload, ClustersPayload, ConceptTreePayload, ContextsPayload,
  MetaPayload, NetworkPayload, SvaPayload, UncertaintyPayload,
} from "./types.js";

export type TreeScope =
  | { kind: "cluster"; value: number }
  | { kind: "ref"; value: string }
  | { kind: "seed"; value: string };

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

/** Thin fetch wrapper; one method per endpoint, no client-side recomputation. */
export class ApiClient {
  constructor(private base: string = "") {}

  private async get<T>(path: string, params?: Record<string, string>): Promise<T> {
    const query = params && Object.keys(params).length
      ? "?" + new URLSearchParams(params).toString()
      : "";
    const response = await fetch(this.base + path + query);
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = await response.json();
        detail = body.detail ?? body.error ?? detail;
      } catch {
        // non-JSON error body
      }
      throw new ApiError(response.status, `${path}: ${detail}`);
    }
    return response.json() as Promise<T>;
  }

  meta(): Promise<MetaPayload> {
    return this.get("/meta");
  }

  network(): Promise<NetworkPayload> {
    return this.get("/network");
  }

  clusters(): Promise<ClustersPayload> {
    return this.get("/clusters");
  }

  clusterDetail(k: number): Promise<ClusterDetailPayload> {
    return this.get(`/clusters/${k}`);
  }

  conceptTree(scope: TreeScope): Promise<ConceptTreePayload> {
    return this.get("/concept-tree", { [scope.kind]: String(scope.value) });
  }

  contexts(concept: string, scope: TreeScope): Promise<ContextsPayload> {
    return this.get("/contexts", { concept, [scope.kind]: String(scope.value) });
  }

  contextsForRef(ref: string): Promise<ContextsPayload> {
    return this.get("/contexts", { ref });
  }

  uncertainty(kind: string, cues?: string, rhetorical?: string,
              top?: number): Promise<UncertaintyPayload> {
    const params: Record<string, string> = { kind };
    if (cues) params.cues = cues;
    if (rhetorical) params.rhetorical = rhetorical;
    if (top !== undefined) params.top = String(top);
    return this.get("/uncertainty", params);
  }

  sva(from?: string, to?: string, top?: number): Promise<SvaPayload> {
    const params: Record<string, string> = {};
    if (from) params.from = from;
    if (to) params.to = to;
    if (top !== undefined) params.top = String(top);
    return this.get("/sva", params);
  }
}
