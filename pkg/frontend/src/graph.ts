// SVG force-directed rendering of the similarity graph. Edge stroke width
// is proportional to the similarity weight; hovering a node shows its
// document info via an SVG <title>. Layout is a fixed-iteration
// Fruchterman-Reingold loop with a seeded PRNG, so identical payloads
// render identically.

import type { GraphPayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 640;

function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layoutGraph(
  payload: GraphPayload,
  iterations = 150,
  seed = 7,
): Map<string, { x: number; y: number }> {
  const rand = mulberry32(seed);
  const nodes = payload.nodes.map((n) => n.id);
  const pos = new Map(nodes.map((id) => [id, { x: rand() * 2 - 1, y: rand() * 2 - 1 }]));
  if (nodes.length <= 1) {
    for (const p of pos.values()) {
      p.x = 0;
      p.y = 0;
    }
    return pos;
  }
  const k = Math.sqrt(4 / nodes.length);
  let temperature = 0.25;
  for (let step = 0; step < iterations; step += 1) {
    const disp = new Map(nodes.map((id) => [id, { x: 0, y: 0 }]));
    for (let i = 0; i < nodes.length; i += 1) {
      for (let j = i + 1; j < nodes.length; j += 1) {
        const a = pos.get(nodes[i])!;
        const b = pos.get(nodes[j])!;
        const dx = a.x - b.x;
        const dy = a.y - b.y;
        const dist = Math.hypot(dx, dy) + 1e-9;
        const force = (k * k) / dist;
        const da = disp.get(nodes[i])!;
        const db = disp.get(nodes[j])!;
        da.x += (dx / dist) * force;
        da.y += (dy / dist) * force;
        db.x -= (dx / dist) * force;
        db.y -= (dy / dist) * force;
      }
    }
    for (const edge of payload.edges) {
      const a = pos.get(edge.a)!;
      const b = pos.get(edge.b)!;
      const dx = a.x - b.x;
      const dy = a.y - b.y;
      const dist = Math.hypot(dx, dy) + 1e-9;
      const force = (dist * dist) / k;
      const pull = force * edge.weight;
      const da = disp.get(edge.a)!;
      const db = disp.get(edge.b)!;
      da.x -= (dx / dist) * pull;
      da.y -= (dy / dist) * pull;
      db.x += (dx / dist) * pull;
      db.y += (dy / dist) * pull;
    }
    for (const id of nodes) {
      const d = disp.get(id)!;
      const length = Math.hypot(d.x, d.y) + 1e-9;
      const capped = Math.min(length, temperature);
      const p = pos.get(id)!;
      p.x += (d.x / length) * capped;
      p.y += (d.y / length) * capped;
    }
    temperature *= 0.97;
  }
  return pos;
}

const KIND_COLORS: Record<string, string> = {
  idea: "#3b6ea5",
  study: "#b4552d",
  project: "#4d8f4d",
};

export function edgeWidth(weight: number): number {
  return 1 + 4 * weight;
}

/** Render the payload into an SVG element; returns the element. */
export function renderGraph(container: HTMLElement, payload: GraphPayload): SVGSVGElement {
  container.replaceChildren();
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute("class", "novelty-graph");
  container.append(svg);
  if (payload.nodes.length === 0) {
    const empty = document.createElement("p");
    empty.className = "graph-empty";
    empty.textContent = "No similarity edges at this cutoff.";
    container.append(empty);
    return svg;
  }

  const pos = layoutGraph(payload);
  const scale = (value: number) => (value + 1.4) * (SIZE / 2.8);

  for (const edge of payload.edges) {
    const a = pos.get(edge.a)!;
    const b = pos.get(edge.b)!;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("class", "graph-edge");
    line.setAttribute("x1", String(scale(a.x)));
    line.setAttribute("y1", String(scale(a.y)));
    line.setAttribute("x2", String(scale(b.x)));
    line.setAttribute("y2", String(scale(b.y)));
    line.setAttribute("stroke", "#8a8a8a");
    line.setAttribute("stroke-width", String(edgeWidth(edge.weight)));
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${edge.a} - ${edge.b}: ${edge.weight.toFixed(3)}`;
    line.append(title);
    svg.append(line);
  }

  for (const node of payload.nodes) {
    const p = pos.get(node.id)!;
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "graph-node");
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(scale(p.x)));
    circle.setAttribute("cy", String(scale(p.y)));
    circle.setAttribute("r", "9");
    circle.setAttribute("fill", KIND_COLORS[node.kind] ?? "#666666");
    const title = document.createElementNS(SVG_NS, "title");
    // Hover info: id, kind, and label straight from the payload.
    title.textContent = `${node.id} (${node.kind})\n${node.label}`;
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(scale(p.x)));
    text.setAttribute("y", String(scale(p.y) - 12));
    text.setAttribute("class", "graph-label");
    text.textContent = node.label;
    group.append(circle, title, text);
    svg.append(group);
  }
  return svg;
}
