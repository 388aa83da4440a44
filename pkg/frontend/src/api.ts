// Typed client for the assograph HTTP API. Graph builds are abortable so a
// view never has more than one rebuild in flight.

import {
  BuildRequest,
  BuildResponse,
  ClusterDetail,
  GraphView,
  PathResponse,
  UnitDocumentsResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const error = (body as { error?: { code?: string; message?: string } } | null)?.error;
    throw new ApiError(
      response.status,
      error?.code ?? "http_error",
      error?.message ?? `request failed with ${response.status}`,
    );
  }
  return body as T;
}

export class ApiClient {
  private pendingBuild: AbortController | null = null;

  constructor(public base: string) {}

  private url(path: string): string {
    return `${this.base.replace(/\/$/, "")}${path}`;
  }

  async uploadCorpus(records: string): Promise<{ id: string }> {
    const response = await fetch(this.url("/corpora"), {
      method: "POST",
      headers: { "Content-Type": "application/x-ndjson" },
      body: records,
    });
    return asJson(response);
  }

  async getView(graphId: string): Promise<GraphView> {
    return asJson(await fetch(this.url(`/graphs/${graphId}`)));
  }

  async getCluster(graphId: string, clusterId: string): Promise<ClusterDetail> {
    return asJson(await fetch(this.url(`/graphs/${graphId}/clusters/${clusterId}`)));
  }

  async getPath(graphId: string, from: string, to: string): Promise<PathResponse> {
    const query = new URLSearchParams({ from, to });
    return asJson(await fetch(this.url(`/graphs/${graphId}/paths?${query}`)));
  }

  async getUnitDocuments(corpusId: string, unitId: string): Promise<UnitDocumentsResponse> {
    return asJson(await fetch(this.url(`/corpora/${corpusId}/units/${unitId}/documents`)));
  }

  /** Issue a rebuild, cancelling any build already in flight for this view. */
  async buildGraph(corpusId: string, request: BuildRequest): Promise<BuildResponse> {
    this.pendingBuild?.abort();
    const controller = new AbortController();
    this.pendingBuild = controller;
    try {
      const response = await fetch(this.url(`/corpora/${corpusId}/graphs`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(request),
        signal: controller.signal,
      });
      return await asJson<BuildResponse>(response);
    } finally {
      if (this.pendingBuild === controller) this.pendingBuild = null;
    }
  }
}
