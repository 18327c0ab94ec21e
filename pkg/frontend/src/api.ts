/** Thin client for the /v1 JSON service. The fetch implementation is
 * injected so tests run against a stub transport.
 */

import type {
  AddCompoundResponse,
  AlignResponse,
  BinsResponse,
  DatasetInfo,
  DifferenceResponse,
  GroupedTableResponse,
  ProjectionPayload,
  SelectionPayload,
  SessionDocument,
  TableResponse,
} from "./types";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiError extends Error {
  readonly code: string;

  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

export interface TableQuery {
  filters?: string[];
  sort?: string;
  descending?: boolean;
  page?: number;
  pageSize?: number;
}

export interface GroupQuery {
  filters?: string[];
  representation: string;
  radius: number;
  feature: string;
}

export class ApiClient {
  private readonly base: string;

  private readonly fetchImpl: FetchLike;

  constructor(baseUrl: string, fetchImpl: FetchLike) {
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(
    path: string,
    init?: RequestInit,
  ): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    if (!response.ok) {
      let code = "http-error";
      let message = `${response.status}`;
      try {
        const body = (await response.json()) as {
          error?: { code?: string; message?: string };
        };
        code = body.error?.code ?? code;
        message = body.error?.message ?? message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(code, message, response.status);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  datasets(signal?: AbortSignal): Promise<DatasetInfo[]> {
    return this.request("/v1/datasets", { signal });
  }

  projection(
    dataset: string,
    tag: string,
    signal?: AbortSignal,
  ): Promise<ProjectionPayload> {
    return this.request(
      `/v1/datasets/${encodeURIComponent(dataset)}/projections/${encodeURIComponent(tag)}`,
      { signal },
    );
  }

  bins(
    dataset: string,
    representation: string,
    radius: number,
    feature: string | null,
    signal?: AbortSignal,
  ): Promise<BinsResponse> {
    const params = new URLSearchParams({
      representation,
      radius: String(radius),
    });
    if (feature !== null) params.set("feature", feature);
    return this.request(
      `/v1/datasets/${encodeURIComponent(dataset)}/bins?${params}`,
      { signal },
    );
  }

  difference(
    dataset: string,
    refRepr: string,
    otherRepr: string,
    radius: number,
    ids: Iterable<string>,
    signal?: AbortSignal,
  ): Promise<DifferenceResponse> {
    const params = new URLSearchParams({
      refRepr,
      otherRepr,
      radius: String(radius),
      ids: [...ids].join(","),
    });
    return this.request(
      `/v1/datasets/${encodeURIComponent(dataset)}/difference?${params}`,
      { signal },
    );
  }

  table(
    dataset: string,
    query: TableQuery = {},
    signal?: AbortSignal,
  ): Promise<TableResponse> {
    const params = new URLSearchParams();
    for (const filter of query.filters ?? []) params.append("filter", filter);
    if (query.sort !== undefined) params.set("sort", query.sort);
    if (query.descending) params.set("descending", "true");
    if (query.page !== undefined) params.set("page", String(query.page));
    if (query.pageSize !== undefined) params.set("page_size", String(query.pageSize));
    const encoded = params.toString();
    const suffix = encoded.length > 0 ? `?${encoded}` : "";
    return this.request(
      `/v1/datasets/${encodeURIComponent(dataset)}/table${suffix}`,
      { signal },
    );
  }

  tableGroups(
    dataset: string,
    query: GroupQuery,
    signal?: AbortSignal,
  ): Promise<GroupedTableResponse> {
    const params = new URLSearchParams({
      group_by: "hexagon",
      representation: query.representation,
      radius: String(query.radius),
      feature: query.feature,
    });
    for (const filter of query.filters ?? []) params.append("filter", filter);
    return this.request(
      `/v1/datasets/${encodeURIComponent(dataset)}/table?${params}`,
      { signal },
    );
  }

  align(
    dataset: string,
    ids: Iterable<string>,
    signal?: AbortSignal,
  ): Promise<AlignResponse> {
    return this.post(
      `/v1/datasets/${encodeURIComponent(dataset)}/align`,
      { ids: [...ids] },
      signal,
    );
  }

  async exportSdf(dataset: string, ids: Iterable<string>): Promise<string> {
    const params = new URLSearchParams({ ids: [...ids].join(",") });
    const response = await this.fetchImpl(
      `${this.base}/v1/datasets/${encodeURIComponent(dataset)}/export?${params}`,
    );
    if (!response.ok) {
      const body = (await response.json()) as {
        error?: { code?: string; message?: string };
      };
      throw new ApiError(
        body.error?.code ?? "http-error",
        body.error?.message ?? `${response.status}`,
        response.status,
      );
    }
    return response.text();
  }

  createSession(dataset: string): Promise<{ session_id: string; dataset: string }> {
    return this.post("/v1/sessions", { dataset });
  }

  getSession(sessionId: string): Promise<SessionDocument> {
    return this.request(`/v1/sessions/${encodeURIComponent(sessionId)}`);
  }

  importSession(
    document: Record<string, unknown>,
  ): Promise<{ session_id: string; dataset: string }> {
    return this.post("/v1/sessions/import", { document });
  }

  saveSelection(
    sessionId: string,
    name: string,
    ids: Iterable<string>,
    provenance: string,
  ): Promise<SelectionPayload> {
    return this.post(
      `/v1/sessions/${encodeURIComponent(sessionId)}/selections`,
      { name, ids: [...ids], provenance },
    );
  }

  lassoSelection(
    sessionId: string,
    name: string,
    polygon: [number, number][],
    representation: string,
  ): Promise<SelectionPayload> {
    return this.post(
      `/v1/sessions/${encodeURIComponent(sessionId)}/selections`,
      { name, polygon, representation, provenance: "lasso" },
    );
  }

  getSelection(sessionId: string, name: string): Promise<SelectionPayload> {
    return this.request(
      `/v1/sessions/${encodeURIComponent(sessionId)}/selections/${encodeURIComponent(name)}`,
    );
  }

  addCompound(
    sessionId: string,
    smiles: string,
    id?: string,
  ): Promise<AddCompoundResponse> {
    const body: { smiles: string; id?: string } = { smiles };
    if (id !== undefined) body.id = id;
    return this.post(
      `/v1/sessions/${encodeURIComponent(sessionId)}/compounds`,
      body,
    );
  }
}
