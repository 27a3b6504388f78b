// Thin client over the /v1 endpoints.  Everything the UI shows comes back
// through these calls; no state is derived locally.

import type {
  CertificateResponse,
  Fact,
  MovesResponse,
  SessionResponse,
  StepResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
    public blocking: Fact | null = null,
  ) {
    super(message);
  }
}

export interface ApiClient {
  createSession(preset: string): Promise<SessionResponse>;
  moves(id: string): Promise<MovesResponse>;
  step(id: string, kind: string, args: (number | string)[]): Promise<StepResponse>;
  undo(id: string): Promise<{ board: SessionResponse["board"] }>;
  certificate(
    id: string,
    scriptName?: string,
    compareWith?: string,
  ): Promise<CertificateResponse>;
}

async function parseError(resp: Response): Promise<ApiError> {
  let blocking: Fact | null = null;
  let message = `${resp.status}`;
  try {
    const doc = await resp.json();
    const detail = doc.detail;
    if (typeof detail === "string") message = detail;
    else if (detail) {
      message = detail.message ?? JSON.stringify(detail);
      blocking = detail.blocking ?? detail.pair ?? null;
    }
  } catch {
    // keep the bare status
  }
  return new ApiError(message, resp.status, blocking);
}

export class HttpApi implements ApiClient {
  constructor(private base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  createSession(preset: string): Promise<SessionResponse> {
    return this.request("/v1/sessions", {
      method: "POST",
      body: JSON.stringify({ preset }),
    });
  }

  moves(id: string): Promise<MovesResponse> {
    return this.request(`/v1/sessions/${id}/moves`);
  }

  step(id: string, kind: string, args: (number | string)[]): Promise<StepResponse> {
    return this.request(`/v1/sessions/${id}/steps`, {
      method: "POST",
      body: JSON.stringify({ kind, args }),
    });
  }

  undo(id: string): Promise<{ board: SessionResponse["board"] }> {
    return this.request(`/v1/sessions/${id}/undo`, { method: "POST" });
  }

  certificate(
    id: string,
    scriptName = "session",
    compareWith?: string,
  ): Promise<CertificateResponse> {
    const params = new URLSearchParams({ script_name: scriptName });
    if (compareWith) params.set("compare_with", compareWith);
    return this.request(`/v1/sessions/${id}/certificate?${params.toString()}`);
  }
}
