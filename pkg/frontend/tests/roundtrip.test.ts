/** Full round trip against the real service: create a game with a
 * fantastic engine, play at least ten human moves with legality previews,
 * finish the game, and check the overlay mirrors the structure payload.
 * Every preview verdict must match the server's decision on the move. */

import { type ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, LabClient, type GameStateView } from "../src/api.js";
import { applyStructure, edgeSet, freshBoard } from "../src/board.js";

const PORT = 8731;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 100; attempt++) {
    try {
      const resp = await fetch(`${BASE}/games/probe`);
      if (resp.status === 404) return;
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    [
      "-c",
      "import uvicorn; from satgame.lab.service import create_app; " +
        `uvicorn.run(create_app(), host='127.0.0.1', port=${PORT}, log_level='warning')`,
    ],
    { stdio: "ignore" },
  );
  await waitForServer();
}, 30000);

afterAll(() => {
  server?.kill();
});

describe("playground round trip", () => {
  it("plays a full game with matching previews and overlay", async () => {
    const client = new LabClient(BASE);
    let state: GameStateView = await client.createGame({
      n: 14,
      family: "odd-ge:5",
      first_mover: "max",
      engine: { seat: "max", strategy: "fantastic:k=5" },
    });
    expect(state.edges).toEqual([]);

    let humanMoves = 0;
    let previews = 0;
    while (!state.saturated) {
      if (state.next_mover === "max") {
        state = await client.engineMove(state.id);
        continue;
      }
      const present = edgeSet(state.edges);
      let played = false;
      for (let u = 0; u < state.n && !played; u++) {
        for (let v = u + 1; v < state.n && !played; v++) {
          if (present.has(`${u}-${v}`)) continue;
          const preview = await client.preview(state.id, u, v);
          previews += 1;
          let accepted: boolean;
          try {
            state = await client.move(state.id, u, v);
            accepted = true;
          } catch (err) {
            if (!(err instanceof ApiError) || err.status !== 409) throw err;
            // the rejection must carry the same witness shape
            expect(err.witness).toEqual(preview.witness);
            accepted = false;
          }
          expect(accepted).toBe(preview.legal);
          if (accepted) {
            humanMoves += 1;
            played = true;
          }
        }
      }
      if (!played) {
        // no pair the human can legally add; the engine must finish
        state = await client.getGame(state.id);
        expect(state.saturated || state.next_mover === "max").toBe(true);
        if (!state.saturated && state.next_mover === "mini") break;
        if (!state.saturated) state = await client.engineMove(state.id);
      }
    }

    expect(state.saturated).toBe(true);
    expect(humanMoves).toBeGreaterThanOrEqual(10);
    expect(previews).toBeGreaterThanOrEqual(10);
    expect(state.edge_count).toBe(state.edges.length);
    // fantastic engine keeps the final count under (k-1)(n-1)/2 + 1
    expect(state.edge_count).toBeLessThanOrEqual((4 * 13) / 2 + 1);

    const payload = await client.structure(state.id, 5);
    const board = applyStructure(freshBoard(state), payload);
    expect(board.overlay?.size).toBe(state.n);
    for (const vertex of payload.vertices) {
      expect(board.overlay?.get(vertex.id)?.roles).toEqual(vertex.roles);
    }
    expect(payload.h).toBe(Math.min(state.edges[0].u, state.edges[0].v));
  }, 120000);

  it("rejects an invalid family inline", async () => {
    const client = new LabClient(BASE);
    const err = await client
      .createGame({ n: 6, family: "every-third", first_mover: "max" })
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(400);
  });

  it("honours the Mini-first toggle", async () => {
    const client = new LabClient(BASE);
    const state = await client.createGame({
      n: 6,
      family: "odd-ge:5",
      first_mover: "mini",
      engine: { seat: "max", strategy: "random:seed=3" },
    });
    expect(state.next_mover).toBe("mini");
    const moved = await client.move(state.id, 0, 1);
    expect(moved.applied).toEqual({ u: 0, v: 1, mover: "mini" });
  });
});
