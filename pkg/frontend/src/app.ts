/** DOM wiring: new-game form, SVG board, legality preview, structure
 * overlay.  All mutation goes through server round trips. */

import { ApiError, LabClient, type GameStateView, type Mover } from "./api.js";
import {
  acceptState,
  applyStructure,
  edgeKey,
  freshBoard,
  humanTurn,
  setPreview,
  setWitness,
  toggleVertex,
  witnessEdges,
  type BoardViewModel,
} from "./board.js";
import { DEFAULT_LAYOUT, layoutGraph, type Point } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

interface AppState {
  client: LabClient;
  board: BoardViewModel | null;
  layoutSeed: number;
  overlayK: number | null;
  status: string;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

function sessionSeed(id: string): number {
  let hash = 2166136261;
  for (const ch of id) {
    hash = Math.imul(hash ^ ch.charCodeAt(0), 16777619);
  }
  return hash >>> 0;
}

export function boot(root: HTMLElement, baseUrl: string): void {
  const app: AppState = {
    client: new LabClient(baseUrl),
    board: null,
    layoutSeed: 1,
    overlayK: null,
    status: "no session",
  };

  const form = el("form", { class: "new-game" });
  const nInput = el("input", { type: "number", value: "20", min: "2" });
  const familyInput = el("input", { type: "text", value: "odd-ge:5" });
  const firstSelect = el("select");
  firstSelect.append(new Option("Max first", "max"), new Option("Mini first", "mini"));
  const engineSeat = el("select");
  engineSeat.append(new Option("engine plays Max", "max"), new Option("engine plays Mini", "mini"));
  const engineStrategy = el("input", { type: "text", value: "fantastic:k=5" });
  const startButton = el("button", { type: "submit" }, "New game");
  form.append(
    label("n", nInput),
    label("family", familyInput),
    label("first", firstSelect),
    label("engine seat", engineSeat),
    label("engine", engineStrategy),
    startButton,
  );

  const statusLine = el("p", { class: "status" });
  const overlayToggle = el("input", { type: "checkbox" });
  const overlayK = el("input", { type: "number", value: "5", min: "5" });
  const engineButton = el("button", { type: "button" }, "Engine move");
  const controls = el("div", { class: "controls" });
  controls.append(engineButton, label("overlay", overlayToggle), label("k", overlayK));

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(DEFAULT_LAYOUT.width));
  svg.setAttribute("height", String(DEFAULT_LAYOUT.height));
  svg.setAttribute("class", "board");

  root.append(form, statusLine, controls, svg);

  function label(text: string, node: HTMLElement): HTMLLabelElement {
    const wrap = el("label", {}, text + " ");
    wrap.append(node);
    return wrap;
  }

  function setStatus(text: string): void {
    app.status = text;
    statusLine.textContent = text;
  }

  async function refreshOverlay(): Promise<void> {
    if (app.board === null) return;
    if (!overlayToggle.checked) {
      app.board = applyStructure(app.board, null);
      return;
    }
    const k = Number(overlayK.value);
    try {
      const payload = await app.client.structure(app.board.state.id, k);
      app.board = applyStructure(app.board, payload);
    } catch (err) {
      setStatus(`structure: ${describe(err)}`);
    }
  }

  function describe(err: unknown): string {
    if (err instanceof ApiError) return JSON.stringify(err.detail);
    return String(err);
  }

  function gameLine(state: GameStateView): string {
    const turn = state.saturated
      ? "game over"
      : `${state.next_mover} to move`;
    return `${state.family} on ${state.n} vertices, ${state.edge_count} edges, ${turn}`;
  }

  async function onVertexClick(v: number): Promise<void> {
    if (app.board === null || !humanTurn(app.board.state)) return;
    app.board = toggleVertex(app.board, v);
    const sel = app.board.selection;
    if (sel.kind === "pair") {
      const { id } = app.board.state;
      try {
        const preview = await app.client.preview(id, sel.u, sel.v);
        app.board = setPreview(app.board, preview);
        if (preview.legal) {
          const result = await app.client.move(id, sel.u, sel.v);
          app.board = acceptState(app.board, result);
          setStatus(gameLine(result));
          await refreshOverlay();
        } else {
          setStatus(`illegal: closes a ${preview.witness?.length}-cycle`);
        }
      } catch (err) {
        if (err instanceof ApiError && err.witness) {
          app.board = setWitness(app.board, err.witness);
        }
        setStatus(describe(err));
      }
    }
    render();
  }

  async function onEngineMove(): Promise<void> {
    if (app.board === null) return;
    try {
      const result = await app.client.engineMove(app.board.state.id);
      app.board = acceptState(app.board, result);
      setStatus(gameLine(result));
      await refreshOverlay();
    } catch (err) {
      setStatus(describe(err));
    }
    render();
  }

  function render(): void {
    while (svg.firstChild) svg.removeChild(svg.firstChild);
    const board = app.board;
    if (board === null) return;
    const { state } = board;
    const pinned = state.edges.length
      ? Math.min(state.edges[0].u, state.edges[0].v)
      : 0;
    const points: Point[] = layoutGraph(
      state.n,
      state.edges.map((e) => [e.u, e.v]),
      pinned,
      { ...DEFAULT_LAYOUT, seed: app.layoutSeed },
    );

    const highlighted = new Set(
      board.witness ? witnessEdges(board.witness).map(([a, b]) => edgeKey(a, b)) : [],
    );
    for (const edge of state.edges) {
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(points[edge.u].x));
      line.setAttribute("y1", String(points[edge.u].y));
      line.setAttribute("x2", String(points[edge.v].x));
      line.setAttribute("y2", String(points[edge.v].y));
      const classes = ["edge", `by-${edge.mover}`];
      if (highlighted.has(edgeKey(edge.u, edge.v))) classes.push("witness");
      line.setAttribute("class", classes.join(" "));
      svg.appendChild(line);
    }

    const selected = new Set<number>();
    if (board.selection.kind === "one") selected.add(board.selection.u);
    if (board.selection.kind === "pair") {
      selected.add(board.selection.u);
      selected.add(board.selection.v);
    }
    for (let v = 0; v < state.n; v++) {
      const group = document.createElementNS(SVG_NS, "g");
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(points[v].x));
      circle.setAttribute("cy", String(points[v].y));
      circle.setAttribute("r", "12");
      const classes = ["vertex"];
      if (selected.has(v)) classes.push("selected");
      const badges = board.overlay?.get(v);
      if (badges) {
        for (const role of badges.roles) classes.push(`role-${role}`);
      }
      circle.setAttribute("class", classes.join(" "));
      circle.addEventListener("click", () => void onVertexClick(v));
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(points[v].x));
      text.setAttribute("y", String(points[v].y + 4));
      text.setAttribute("text-anchor", "middle");
      text.textContent = badges?.roles.includes("h") ? `${v}*` : String(v);
      group.append(circle, text);
      svg.appendChild(group);
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      try {
        const state = await app.client.createGame({
          n: Number(nInput.value),
          family: familyInput.value,
          first_mover: firstSelect.value as Mover,
          engine: {
            seat: engineSeat.value as Mover,
            strategy: engineStrategy.value,
          },
        });
        app.board = freshBoard(state);
        app.layoutSeed = sessionSeed(state.id);
        setStatus(gameLine(state));
      } catch (err) {
        setStatus(describe(err));
      }
      render();
    })();
  });

  engineButton.addEventListener("click", () => void onEngineMove());
  overlayToggle.addEventListener("change", () => {
    void refreshOverlay().then(render);
  });

  setStatus(app.status);
}
