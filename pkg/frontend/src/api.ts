/** Typed client for the lab HTTP service. */

export type Mover = "max" | "mini";

export interface EdgeMove {
  u: number;
  v: number;
  mover: Mover;
}

export interface GameStateView {
  id: string;
  n: number;
  family: string;
  first_mover: Mover;
  engine_seat: Mover | null;
  edges: EdgeMove[];
  edge_count: number;
  next_mover: Mover;
  saturated: boolean;
}

export interface MoveResult extends GameStateView {
  applied: EdgeMove | null;
}

export interface LegalityPreview {
  u: number;
  v: number;
  legal: boolean;
  witness: number[] | null;
}

export interface VertexRoles {
  id: number;
  roles: string[];
}

export interface BlockTags {
  vertices: number[];
  root: number | null;
  tags: string[];
}

export interface StructurePayload {
  h: number;
  k: number;
  vertices: VertexRoles[];
  blocks: BlockTags[];
}

export interface NewGameRequest {
  n: number;
  family: string;
  first_mover: Mover;
  engine?: { seat: Mover; strategy: string };
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`HTTP ${status}: ${JSON.stringify(detail)}`);
  }

  /** Witness cycle attached to an illegal-move rejection, if any. */
  get witness(): number[] | null {
    if (
      typeof this.detail === "object" &&
      this.detail !== null &&
      Array.isArray((this.detail as { witness?: unknown }).witness)
    ) {
      return (this.detail as { witness: number[] }).witness;
    }
    return null;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class LabClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await resp.json().catch(() => null);
    if (!resp.ok) {
      const detail =
        body && typeof body === "object" && "detail" in body
          ? (body as { detail: unknown }).detail
          : body;
      throw new ApiError(resp.status, detail);
    }
    return body as T;
  }

  private post<T>(path: string, payload?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: payload === undefined ? undefined : JSON.stringify(payload),
    });
  }

  createGame(req: NewGameRequest): Promise<GameStateView> {
    return this.post("/games", req);
  }

  getGame(id: string): Promise<GameStateView> {
    return this.request(`/games/${id}`);
  }

  move(id: string, u: number, v: number): Promise<MoveResult> {
    return this.post(`/games/${id}/moves`, { u, v });
  }

  engineMove(id: string): Promise<MoveResult> {
    return this.post(`/games/${id}/engine-move`);
  }

  preview(id: string, u: number, v: number): Promise<LegalityPreview> {
    return this.request(`/games/${id}/legal?u=${u}&v=${v}`);
  }

  structure(id: string, k: number): Promise<StructurePayload> {
    return this.request(`/games/${id}/structure?k=${k}`);
  }
}
