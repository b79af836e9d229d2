/** View model for the board: mirrors the served state exactly and only
 * changes through accepted server responses. */

import type {
  EdgeMove,
  GameStateView,
  LegalityPreview,
  StructurePayload,
} from "./api.js";

export type SelectionState =
  | { kind: "empty" }
  | { kind: "one"; u: number }
  | { kind: "pair"; u: number; v: number };

export interface VertexBadges {
  roles: string[];
}

export interface BoardViewModel {
  state: GameStateView;
  selection: SelectionState;
  /** Preview verdict for the current pair selection, if fetched. */
  preview: LegalityPreview | null;
  /** Ordered witness walk to highlight, from the last preview/rejection. */
  witness: number[] | null;
  /** Overlay badges per vertex id; null while the overlay is off. */
  overlay: Map<number, VertexBadges> | null;
}

export function freshBoard(state: GameStateView): BoardViewModel {
  return {
    state,
    selection: { kind: "empty" },
    preview: null,
    witness: null,
    overlay: null,
  };
}

/** Accept a new server state; selection and stale previews reset. */
export function acceptState(
  board: BoardViewModel,
  state: GameStateView,
): BoardViewModel {
  return { ...board, state, selection: { kind: "empty" }, preview: null };
}

export function toggleVertex(board: BoardViewModel, v: number): BoardViewModel {
  const sel = board.selection;
  if (sel.kind === "one" && sel.u === v) {
    return { ...board, selection: { kind: "empty" }, preview: null };
  }
  if (sel.kind === "empty" || sel.kind === "pair") {
    return { ...board, selection: { kind: "one", u: v }, preview: null };
  }
  const [u, w] = sel.u < v ? [sel.u, v] : [v, sel.u];
  return { ...board, selection: { kind: "pair", u, v: w }, preview: null };
}

export function setPreview(
  board: BoardViewModel,
  preview: LegalityPreview,
): BoardViewModel {
  return { ...board, preview, witness: preview.legal ? null : preview.witness };
}

export function setWitness(
  board: BoardViewModel,
  witness: number[] | null,
): BoardViewModel {
  return { ...board, witness };
}

export function applyStructure(
  board: BoardViewModel,
  payload: StructurePayload | null,
): BoardViewModel {
  if (payload === null) {
    return { ...board, overlay: null };
  }
  const overlay = new Map<number, VertexBadges>();
  for (const vertex of payload.vertices) {
    overlay.set(vertex.id, { roles: [...vertex.roles] });
  }
  return { ...board, overlay };
}

export function edgeKey(u: number, v: number): string {
  return u < v ? `${u}-${v}` : `${v}-${u}`;
}

export function edgeSet(edges: EdgeMove[]): Set<string> {
  return new Set(edges.map((e) => edgeKey(e.u, e.v)));
}

/** Consecutive witness pairs (including the closing edge) for highlighting
 * the forbidden cycle as an ordered walk. */
export function witnessEdges(witness: number[]): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  for (let i = 0; i < witness.length; i++) {
    out.push([witness[i], witness[(i + 1) % witness.length]]);
  }
  return out;
}

/** The human may move only on their own turn on a live board. */
export function humanTurn(state: GameStateView): boolean {
  return !state.saturated && state.next_mover !== state.engine_seat;
}
