import type { NetworkEdge, NetworkNode } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  clusterGravity?: number; // higher separates clusters (Fig-7-style view)
  seed?: number;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/**
 * Deterministic force-directed layout: seeded initial positions, spring
 * forces along edges, pairwise repulsion, and per-cluster gravity wells so
 * an elevated clusterGravity pulls each cluster apart from the others.
 */
export function forceLayout(nodes: NetworkNode[], edges: NetworkEdge[],
                            options: LayoutOptions): Map<string, Point> {
  const { width, height } = options;
  const iterations = options.iterations ?? 150;
  const gravity = options.clusterGravity ?? 0.05;
  const rand = mulberry32(options.seed ?? 42);

  const positions = new Map<string, Point>();
  for (const node of nodes) {
    positions.set(node.id, {
      x: width * (0.1 + 0.8 * rand()),
      y: height * (0.1 + 0.8 * rand()),
    });
  }
  if (nodes.length <= 1) return positions;

  // cluster anchor points arranged on a circle
  const clusters = [...new Set(nodes.map((n) => n.cluster))].sort((a, b) => a - b);
  const anchors = new Map<number, Point>();
  clusters.forEach((c, i) => {
    const angle = (2 * Math.PI * i) / clusters.length;
    anchors.set(c, {
      x: width / 2 + (width / 3.2) * Math.cos(angle),
      y: height / 2 + (height / 3.2) * Math.sin(angle),
    });
  });

  const ideal = Math.sqrt((width * height) / nodes.length) * 0.7;
  const byId = new Map(nodes.map((n) => [n.id, n]));

  for (let step = 0; step < iterations; step++) {
    const cooling = 1 - step / iterations;
    const shift = new Map<string, Point>(nodes.map((n) => [n.id, { x: 0, y: 0 }]));

    for (let i = 0; i < nodes.length; i++) {
      for (let j = i + 1; j < nodes.length; j++) {
        const a = positions.get(nodes[i].id)!;
        const b = positions.get(nodes[j].id)!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let dist = Math.hypot(dx, dy);
        if (dist < 1e-6) {
          dx = 0.01 * (i - j);
          dy = 0.01;
          dist = Math.hypot(dx, dy);
        }
        const force = (ideal * ideal) / dist / dist;
        shift.get(nodes[i].id)!.x += dx * force;
        shift.get(nodes[i].id)!.y += dy * force;
        shift.get(nodes[j].id)!.x -= dx * force;
        shift.get(nodes[j].id)!.y -= dy * force;
      }
    }

    for (const edge of edges) {
      const a = positions.get(edge.source);
      const b = positions.get(edge.target);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.max(Math.hypot(dx, dy), 1e-6);
      const pull = ((dist - ideal) / dist) * 0.06 * Math.min(edge.weight, 5);
      shift.get(edge.source)!.x += dx * pull;
      shift.get(edge.source)!.y += dy * pull;
      shift.get(edge.target)!.x -= dx * pull;
      shift.get(edge.target)!.y -= dy * pull;
    }

    for (const node of nodes) {
      const pos = positions.get(node.id)!;
      const anchor = anchors.get(byId.get(node.id)!.cluster)!;
      const delta = shift.get(node.id)!;
      delta.x += (anchor.x - pos.x) * gravity;
      delta.y += (anchor.y - pos.y) * gravity;
      const magnitude = Math.hypot(delta.x, delta.y);
      const cap = 12 * cooling + 0.5;
      const scale = magnitude > cap ? cap / magnitude : 1;
      pos.x = Math.min(width - 8, Math.max(8, pos.x + delta.x * scale));
      pos.y = Math.min(height - 8, Math.max(8, pos.y + delta.y * scale));
    }
  }
  return positions;
}
