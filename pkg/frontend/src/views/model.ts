/**
 * Model view: the directly-follows graph laid out in layers, activities as
 * boxes with an annotation badge per attached aggregation. Rendering
 * problems fall back to the raw JSON so the response is never lost.
 */

import type { DepModelDoc } from "../api.js";
import { annotationLine } from "../format.js";
import { layoutModel, NODE_H, NODE_W } from "../layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, name);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function nodeBox(
  name: string,
  frequency: number,
  annotations: string[],
  x: number,
  y: number,
  isStart: boolean,
  isEnd: boolean,
): SVGGElement {
  const height = NODE_H + annotations.length * 16;
  const group = svgEl("g", { class: "node", "data-activity": name });
  group.appendChild(
    svgEl("rect", {
      x: String(x),
      y: String(y),
      width: String(NODE_W),
      height: String(height),
      rx: "6",
      class: `activity${isStart ? " start" : ""}${isEnd ? " end" : ""}`,
    }),
  );
  const title = svgEl("text", { x: String(x + 8), y: String(y + 20), class: "name" });
  title.textContent = name;
  group.appendChild(title);
  const freq = svgEl("text", { x: String(x + 8), y: String(y + 38), class: "freq" });
  freq.textContent = `events: ${frequency}`;
  group.appendChild(freq);
  annotations.forEach((line, i) => {
    const badge = svgEl("text", {
      x: String(x + 8),
      y: String(y + 56 + i * 16),
      class: "badge",
    });
    badge.textContent = line;
    group.appendChild(badge);
  });
  return group;
}

export function renderModelView(container: HTMLElement, dep: DepModelDoc): void {
  try {
    renderGraph(container, dep);
  } catch (error) {
    // fall back to the raw payload rather than showing nothing
    container.replaceChildren();
    const note = document.createElement("div");
    note.className = "error";
    note.textContent = `graph rendering failed (${String(error)}); raw model below`;
    const raw = document.createElement("pre");
    raw.className = "raw-model";
    raw.textContent = JSON.stringify(dep, null, 2);
    container.append(note, raw);
  }
}

function renderGraph(container: HTMLElement, dep: DepModelDoc): void {
  const layout = layoutModel({
    nodes: dep.activities.map((a) => a.name),
    edges: dep.edges.map(({ from, to }) => ({ from, to })),
  });

  const annotationsByName = new Map(
    dep.activities.map((a) => [
      a.name,
      a.annotations.map((ann) => annotationLine(ann.attribute, ann.fn, ann.result)),
    ]),
  );
  const extra = Math.max(0, ...[...annotationsByName.values()].map((l) => l.length)) * 16;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${layout.width} ${layout.height + extra}`,
    width: String(layout.width),
    class: "model-svg",
  });

  const defs = svgEl("defs", {});
  const marker = svgEl("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z", class: "arrow-head" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  for (const edge of dep.edges) {
    const from = layout.positions.get(edge.from);
    const to = layout.positions.get(edge.to);
    if (!from || !to) throw new Error(`edge endpoint missing: ${edge.from} -> ${edge.to}`);
    const x1 = from.x + NODE_W / 2;
    const y1 = from.y + NODE_H;
    const x2 = to.x + NODE_W / 2;
    const y2 = to.y;
    const group = svgEl("g", { class: "edge", "data-edge": `${edge.from}->${edge.to}` });
    if (edge.from === edge.to) {
      const loop = svgEl("path", {
        d: `M ${from.x + NODE_W} ${from.y + 20} C ${from.x + NODE_W + 40} ${from.y + 10}, ${from.x + NODE_W + 40} ${from.y + NODE_H - 10}, ${from.x + NODE_W} ${from.y + NODE_H - 20}`,
        class: "edge-line",
        "marker-end": "url(#arrow)",
      });
      group.appendChild(loop);
    } else {
      group.appendChild(
        svgEl("line", {
          x1: String(x1),
          y1: String(y1),
          x2: String(x2),
          y2: String(y2),
          class: "edge-line",
          "marker-end": "url(#arrow)",
        }),
      );
    }
    const label = svgEl("text", {
      x: String((x1 + x2) / 2 + 6),
      y: String((y1 + y2) / 2),
      class: "edge-label",
    });
    label.textContent = String(edge.frequency);
    group.appendChild(label);
    svg.appendChild(group);
  }

  for (const activity of dep.activities) {
    const pos = layout.positions.get(activity.name);
    if (!pos) throw new Error(`activity missing from layout: ${activity.name}`);
    svg.appendChild(
      nodeBox(
        activity.name,
        activity.frequency,
        annotationsByName.get(activity.name) ?? [],
        pos.x,
        pos.y,
        activity.name in dep.starts,
        activity.name in dep.ends,
      ),
    );
  }

  container.replaceChildren(svg);
}
