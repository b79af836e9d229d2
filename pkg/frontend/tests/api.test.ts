import { describe, expect, it } from "vitest";

import { ApiError, LabClient } from "../src/api.js";

interface Call {
  url: string;
  init?: RequestInit;
}

function mockFetch(
  responses: Array<{ status: number; body: unknown }>,
): { fetch: (url: string, init?: RequestInit) => Promise<Response>; calls: Call[] } {
  const calls: Call[] = [];
  const queue = [...responses];
  return {
    calls,
    fetch: (url, init) => {
      calls.push({ url, init });
      const next = queue.shift();
      if (!next) throw new Error("mock fetch exhausted");
      return Promise.resolve(
        new Response(JSON.stringify(next.body), {
          status: next.status,
          headers: { "content-type": "application/json" },
        }),
      );
    },
  };
}

describe("LabClient", () => {
  it("creates games with the full request body", async () => {
    const mock = mockFetch([{ status: 201, body: { id: "g1" } }]);
    const client = new LabClient("http://srv", mock.fetch);
    await client.createGame({
      n: 20,
      family: "odd-ge:5",
      first_mover: "max",
      engine: { seat: "max", strategy: "fantastic:k=5" },
    });
    expect(mock.calls[0].url).toBe("http://srv/games");
    expect(mock.calls[0].init?.method).toBe("POST");
    expect(JSON.parse(mock.calls[0].init?.body as string)).toEqual({
      n: 20,
      family: "odd-ge:5",
      first_mover: "max",
      engine: { seat: "max", strategy: "fantastic:k=5" },
    });
  });

  it("builds preview and structure query strings", async () => {
    const mock = mockFetch([
      { status: 200, body: { u: 0, v: 4, legal: true, witness: null } },
      { status: 200, body: { h: 0, k: 5, vertices: [], blocks: [] } },
    ]);
    const client = new LabClient("http://srv", mock.fetch);
    await client.preview("g1", 0, 4);
    await client.structure("g1", 5);
    expect(mock.calls[0].url).toBe("http://srv/games/g1/legal?u=0&v=4");
    expect(mock.calls[1].url).toBe("http://srv/games/g1/structure?k=5");
  });

  it("surfaces rejections as ApiError with the witness", async () => {
    const mock = mockFetch([
      {
        status: 409,
        body: { detail: { error: "closes a cycle", witness: [0, 1, 2, 3, 4] } },
      },
    ]);
    const client = new LabClient("http://srv", mock.fetch);
    const err = await client.move("g1", 0, 4).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(409);
    expect((err as ApiError).witness).toEqual([0, 1, 2, 3, 4]);
  });

  it("404 carries no witness", async () => {
    const mock = mockFetch([{ status: 404, body: { detail: "unknown game" } }]);
    const client = new LabClient("http://srv", mock.fetch);
    const err = await client.getGame("nope").catch((e: unknown) => e);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).witness).toBeNull();
  });
});
