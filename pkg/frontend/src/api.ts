/** Typed client for the backend HTTP API with stale-response discarding. */

import type { ArtifactJson, DatasetSummary, LassoResponse, Point } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

async function errorMessage(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { error?: string };
    if (body && typeof body.error === "string") return body.error;
  } catch {
    // fall through to the generic message
  }
  return `request failed with status ${response.status}`;
}

export class ApiClient {
  private lassoToken = 0;

  constructor(
    private readonly baseUrl = "",
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!response.ok) throw new ApiError(response.status, await errorMessage(response));
    return (await response.json()) as T;
  }

  listDatasets(): Promise<DatasetSummary[]> {
    return this.getJson<DatasetSummary[]>("/api/datasets");
  }

  async getArtifact(id: string): Promise<ArtifactJson> {
    const artifact = await this.getJson<ArtifactJson>(`/api/datasets/${encodeURIComponent(id)}`);
    const major = Number(artifact.schema_version.split(".")[0]);
    if (major !== 1) {
      throw new ApiError(200, `unsupported artifact schema ${artifact.schema_version}`);
    }
    return artifact;
  }

  /**
   * Requests a lasso density patch; resolves to null when a newer lasso
   * request was issued before this one finished (last-request-wins).
   */
  async lasso(id: string, polygon: Point[]): Promise<LassoResponse | null> {
    const token = ++this.lassoToken;
    const response = await this.fetchFn(
      `${this.baseUrl}/api/datasets/${encodeURIComponent(id)}/lasso`,
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ polygon }),
      },
    );
    if (token !== this.lassoToken) return null;
    if (!response.ok) throw new ApiError(response.status, await errorMessage(response));
    return (await response.json()) as LassoResponse;
  }
}
