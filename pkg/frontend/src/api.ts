/** Gateway client. The fetch function is injectable so tests can feed
 * recorded responses; the UI never computes physics on its own.
 */

import { bannerMessage } from "./model.js";
import type { ApiErrorBody } from "./types.js";

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export type ApiResult<T> =
  | { kind: "ok"; status: number; data: T }
  | { kind: "error"; status: number; code: string; message: string }
  | { kind: "aborted" };

export class Gateway {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  async post<T>(
    path: string,
    body: unknown,
    signal?: AbortSignal,
  ): Promise<ApiResult<T>> {
    return this.exchange<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal: signal ?? null,
    });
  }

  async get<T>(path: string, signal?: AbortSignal): Promise<ApiResult<T>> {
    return this.exchange<T>(path, { method: "GET", signal: signal ?? null });
  }

  private async exchange<T>(
    path: string,
    init: RequestInit,
  ): Promise<ApiResult<T>> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.base}/api/v1${path}`, init);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        return { kind: "aborted" };
      }
      return {
        kind: "error",
        status: 0,
        code: "network",
        message: `gateway unreachable: ${String(err)}`,
      };
    }
    if (response.ok) {
      return { kind: "ok", status: response.status, data: (await response.json()) as T };
    }
    let body: ApiErrorBody;
    try {
      body = (await response.json()) as ApiErrorBody;
    } catch {
      body = { error: `http-${response.status}` };
    }
    return {
      kind: "error",
      status: response.status,
      code: body.error,
      message: bannerMessage(response.status, body),
    };
  }
}

/** One in-flight request per panel; a new submission aborts the stale one,
 * so a late response can never overwrite a newer render. */
export class PanelRunner {
  private controller: AbortController | null = null;

  constructor(private readonly gateway: Gateway) {}

  async run<T>(path: string, body: unknown): Promise<ApiResult<T>> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const result = await this.gateway.post<T>(path, body, controller.signal);
    if (this.controller === controller) this.controller = null;
    return result;
  }
}
