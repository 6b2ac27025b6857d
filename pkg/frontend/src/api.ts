// Typed client for the solver service.  Everything the console knows about
// the cube comes through these six endpoints; no state is computed locally.

export interface SolveResponse {
  solution: string;
  program: string[];
  serial_hex: string;
  total_ms: number;
}

export interface ScrambleResponse {
  state: string;
  moves: string;
  seed: number;
  program?: string[];
  serial_hex?: string;
  total_ms?: number;
}

export interface SessionView {
  id: string;
  state: string;
  user_moves: string;
  solution: string;
  cursor: number;
  total_moves: number;
}

export type ScrambleMode = "virtual" | "real";
export type StepDirection = "next" | "prev";

/** A 4xx/5xx reply; `error` is the service's stable error name. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly error: string,
    readonly detail: string,
  ) {
    super(`${error}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** What the console needs from the service; `Client` is the real one. */
export interface ServiceClient {
  solve(state: string): Promise<SolveResponse>;
  scramble(mode: ScrambleMode, seed?: number): Promise<ScrambleResponse>;
  createSession(state: string): Promise<SessionView>;
  session(id: string): Promise<SessionView>;
  move(id: string, move: string): Promise<SessionView>;
  step(id: string, direction: StepDirection): Promise<SessionView>;
}

export class Client implements ServiceClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchFn(this.base + path, init);
    const payload = await response.json().catch(() => ({}));
    if (!response.ok) {
      const p = payload as { error?: string; detail?: string };
      throw new ApiError(response.status, p.error ?? "UnknownError", p.detail ?? "");
    }
    return payload as T;
  }

  solve(state: string): Promise<SolveResponse> {
    return this.request("POST", "/solve", { state });
  }

  scramble(mode: ScrambleMode, seed?: number): Promise<ScrambleResponse> {
    const body: Record<string, unknown> = { mode };
    if (seed !== undefined) body.seed = seed;
    return this.request("POST", "/scramble", body);
  }

  createSession(state: string): Promise<SessionView> {
    return this.request("POST", "/sessions", { state });
  }

  session(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  move(id: string, move: string): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/moves`, { move });
  }

  step(id: string, direction: StepDirection): Promise<SessionView> {
    return this.request("POST", `/sessions/${id}/step`, { direction });
  }
}
