/**
 * Layered DAG layout for the model view.
 *
 * Layers come from a Kahn-style topological sweep: a node's layer is one
 * past the deepest already-layered predecessor. Cycles are tolerated by
 * force-releasing the lexicographically smallest blocked node, so loops and
 * self-edges never wedge the layout.
 */

export interface LayoutInput {
  nodes: string[];
  edges: { from: string; to: string }[];
}

export interface NodePosition {
  x: number;
  y: number;
  layer: number;
}

export interface Layout {
  positions: Map<string, NodePosition>;
  width: number;
  height: number;
}

export const NODE_W = 200;
export const NODE_H = 72;
export const H_GAP = 48;
export const V_GAP = 64;

export function assignLayers(input: LayoutInput): Map<string, number> {
  const nodes = [...input.nodes].sort();
  const incoming = new Map<string, Set<string>>(nodes.map((n) => [n, new Set()]));
  const outgoing = new Map<string, Set<string>>(nodes.map((n) => [n, new Set()]));
  for (const { from, to } of input.edges) {
    if (from === to) continue; // self-loops draw on the node itself
    incoming.get(to)?.add(from);
    outgoing.get(from)?.add(to);
  }

  const layer = new Map<string, number>();
  const pending = new Set(nodes);
  while (pending.size > 0) {
    let ready = [...pending].filter((n) =>
      [...(incoming.get(n) ?? [])].every((p) => !pending.has(p)),
    );
    if (ready.length === 0) {
      // cycle: release the smallest blocked node deterministically
      ready = [[...pending].sort()[0]!];
    }
    for (const node of ready.sort()) {
      const preds = [...(incoming.get(node) ?? [])].filter((p) => layer.has(p));
      const depth = preds.length ? Math.max(...preds.map((p) => layer.get(p)!)) + 1 : 0;
      layer.set(node, depth);
      pending.delete(node);
    }
  }
  return layer;
}

export function layoutModel(input: LayoutInput): Layout {
  const layers = assignLayers(input);
  const byLayer = new Map<number, string[]>();
  for (const [node, depth] of layers) {
    const row = byLayer.get(depth) ?? [];
    row.push(node);
    byLayer.set(depth, row);
  }
  const depths = [...byLayer.keys()].sort((a, b) => a - b);
  const widest = Math.max(1, ...depths.map((d) => byLayer.get(d)!.length));
  const width = widest * (NODE_W + H_GAP) + H_GAP;

  const positions = new Map<string, NodePosition>();
  for (const depth of depths) {
    const row = byLayer.get(depth)!.sort();
    const rowWidth = row.length * (NODE_W + H_GAP) - H_GAP;
    const left = (width - rowWidth) / 2;
    row.forEach((node, i) => {
      positions.set(node, {
        x: left + i * (NODE_W + H_GAP),
        y: V_GAP + depth * (NODE_H + V_GAP),
        layer: depth,
      });
    });
  }
  const height = V_GAP + depths.length * (NODE_H + V_GAP);
  return { positions, width, height };
}
