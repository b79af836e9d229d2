/** Deterministic force-directed layout with the anchor pinned at center.
 *
 * Seeded per session so a given game always renders the same picture.
 */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations: number;
  seed: number;
}

export const DEFAULT_LAYOUT: Omit<LayoutOptions, "seed"> = {
  width: 640,
  height: 640,
  iterations: 120,
};

/** Small fast PRNG (mulberry32); good enough for layout jitter. */
export function seededRandom(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) | 0;
    let t = Math.imul(state ^ (state >>> 15), 1 | state);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layoutGraph(
  n: number,
  edges: Array<[number, number]>,
  pinned: number,
  options: LayoutOptions,
): Point[] {
  const { width, height, iterations, seed } = options;
  const rand = seededRandom(seed);
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 40;

  const points: Point[] = [];
  for (let v = 0; v < n; v++) {
    const angle = (2 * Math.PI * v) / Math.max(n, 1) + rand() * 0.3;
    const r = radius * (0.5 + 0.5 * rand());
    points.push({ x: cx + r * Math.cos(angle), y: cy + r * Math.sin(angle) });
  }
  points[pinned] = { x: cx, y: cy };

  const area = width * height;
  const ideal = Math.sqrt(area / Math.max(n, 1)) * 0.7;

  for (let step = 0; step < iterations; step++) {
    const cooling = 1 - step / iterations;
    const disp: Point[] = points.map(() => ({ x: 0, y: 0 }));

    for (let a = 0; a < n; a++) {
      for (let b = a + 1; b < n; b++) {
        let dx = points[a].x - points[b].x;
        let dy = points[a].y - points[b].y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          dx = rand() - 0.5;
          dy = rand() - 0.5;
          dist = Math.hypot(dx, dy);
        }
        const force = (ideal * ideal) / dist;
        disp[a].x += (dx / dist) * force;
        disp[a].y += (dy / dist) * force;
        disp[b].x -= (dx / dist) * force;
        disp[b].y -= (dy / dist) * force;
      }
    }

    for (const [a, b] of edges) {
      const dx = points[a].x - points[b].x;
      const dy = points[a].y - points[b].y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const force = (dist * dist) / ideal;
      disp[a].x -= (dx / dist) * force;
      disp[a].y -= (dy / dist) * force;
      disp[b].x += (dx / dist) * force;
      disp[b].y += (dy / dist) * force;
    }

    const maxStep = 24 * cooling;
    for (let v = 0; v < n; v++) {
      if (v === pinned) continue;
      const mag = Math.max(Math.hypot(disp[v].x, disp[v].y), 1e-6);
      const scale = Math.min(mag, maxStep) / mag;
      points[v].x += disp[v].x * scale;
      points[v].y += disp[v].y * scale;
      points[v].x = Math.min(width - 24, Math.max(24, points[v].x));
      points[v].y = Math.min(height - 24, Math.max(24, points[v].y));
    }
  }
  return points;
}
