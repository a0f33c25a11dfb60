import type { Label, LabelPayload, NextPayload, SessionPayload, ThresholdRow } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin client over the audit service; all state of record lives server-side. */
export class AuditApi {
  private readonly fetchFn: FetchLike;

  constructor(fetchFn?: FetchLike, private readonly base: string = "") {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      let message = `${resp.status}`;
      try {
        const body = (await resp.json()) as { error?: string };
        if (body.error) message = body.error;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(resp.status, message);
    }
    return (await resp.json()) as T;
  }

  session(): Promise<SessionPayload> {
    return this.request<SessionPayload>("/api/session");
  }

  next(): Promise<NextPayload> {
    return this.request<NextPayload>("/api/next");
  }

  label(itemId: string, label: Label): Promise<LabelPayload> {
    return this.request<LabelPayload>("/api/label", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ item_id: itemId, label }),
    });
  }

  report(lambdas: number[]): Promise<ThresholdRow[]> {
    return this.request<ThresholdRow[]>(`/api/report?lambdas=${lambdas.join(",")}`);
  }
}
