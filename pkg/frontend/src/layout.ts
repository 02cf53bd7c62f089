/** Client-side layered DAG layout for one CFG unit.
 *
 * Back edges (loops) are identified by depth-first search, the remaining
 * acyclic edges are layered by longest path from the entry, and nodes are
 * placed left-to-right by layer. Coordinates are abstract grid units; the
 * renderer scales them. */

import type { CfgUnit } from "./protocol.js";

export interface LaidOutNode {
  label: number;
  text: string;
  layer: number; // x in left-to-right rendering
  row: number; // y within the layer
}

export interface LaidOutEdge {
  from: number;
  to: number;
  back: boolean;
}

export interface Layout {
  nodes: LaidOutNode[];
  edges: LaidOutEdge[];
  layers: number;
  rows: number;
}

export function layoutUnit(unit: CfgUnit): Layout {
  const labels = Object.keys(unit.blocks)
    .map(Number)
    .sort((a, b) => a - b);
  const succ = new Map<number, number[]>(labels.map((l) => [l, []]));
  for (const [a, b] of unit.edges) succ.get(a)?.push(b);
  for (const list of succ.values()) list.sort((a, b) => a - b);

  // DFS edge classification: an edge into a node still on the stack is a
  // back edge.
  const WHITE = 0, GRAY = 1, BLACK = 2;
  const color = new Map<number, number>(labels.map((l) => [l, WHITE]));
  const backEdges = new Set<string>();
  const key = (a: number, b: number) => `${a}->${b}`;

  const hasIncoming = new Set(unit.edges.map(([, b]) => b));
  const roots = labels.filter((l) => !hasIncoming.has(l));
  const dfsOrder = roots.length > 0 ? roots : labels.slice(0, 1);

  const visit = (start: number) => {
    const stack: [number, number][] = [[start, 0]];
    color.set(start, GRAY);
    while (stack.length > 0) {
      const top = stack[stack.length - 1]!;
      const [node, i] = top;
      const out = succ.get(node) ?? [];
      if (i >= out.length) {
        color.set(node, BLACK);
        stack.pop();
        continue;
      }
      top[1] = i + 1;
      const next = out[i]!;
      if (color.get(next) === GRAY) backEdges.add(key(node, next));
      else if (color.get(next) === WHITE) {
        color.set(next, GRAY);
        stack.push([next, 0]);
      }
    }
  };
  for (const root of dfsOrder) if (color.get(root) === WHITE) visit(root);
  for (const label of labels) if (color.get(label) === WHITE) visit(label);

  // Longest-path layering over the forward edges (topological order by
  // repeated relaxation; the forward subgraph is acyclic).
  const layer = new Map<number, number>(labels.map((l) => [l, 0]));
  const forward = unit.edges.filter(([a, b]) => !backEdges.has(key(a, b)));
  const indeg = new Map<number, number>(labels.map((l) => [l, 0]));
  for (const [, b] of forward) indeg.set(b, (indeg.get(b) ?? 0) + 1);
  const queue = labels.filter((l) => (indeg.get(l) ?? 0) === 0);
  const fsucc = new Map<number, number[]>(labels.map((l) => [l, []]));
  for (const [a, b] of forward) fsucc.get(a)?.push(b);
  while (queue.length > 0) {
    const node = queue.shift()!;
    for (const next of fsucc.get(node) ?? []) {
      layer.set(next, Math.max(layer.get(next) ?? 0, (layer.get(node) ?? 0) + 1));
      indeg.set(next, (indeg.get(next) ?? 1) - 1);
      if (indeg.get(next) === 0) queue.push(next);
    }
  }

  // Row assignment: stable by label within each layer.
  const byLayer = new Map<number, number[]>();
  for (const label of labels) {
    const l = layer.get(label) ?? 0;
    if (!byLayer.has(l)) byLayer.set(l, []);
    byLayer.get(l)!.push(label);
  }
  const row = new Map<number, number>();
  let rows = 1;
  for (const group of byLayer.values()) {
    group.sort((a, b) => a - b);
    group.forEach((label, i) => row.set(label, i));
    rows = Math.max(rows, group.length);
  }

  return {
    nodes: labels.map((label) => ({
      label,
      text: unit.blocks[String(label)] ?? "",
      layer: layer.get(label) ?? 0,
      row: row.get(label) ?? 0,
    })),
    edges: unit.edges.map(([from, to]) => ({
      from,
      to,
      back: backEdges.has(key(from, to)),
    })),
    layers: Math.max(0, ...[...byLayer.keys()]) + 1,
    rows,
  };
}
