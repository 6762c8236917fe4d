import { forceLayout } from "../layout.js";
import { DIM_OPACITY, UNCERTAINTY_DISC_COLOR, clusterColor } from "../palette.js";
import type { ViewState } from "../state.js";
import type { NetworkPayload } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface NetworkRenderOptions {
  width?: number;
  height?: number;
  separated?: boolean;       // Fig-7-style cluster separation view
  showUncertaintyDiscs?: boolean;
  onNodeClick?: (id: string, cluster: number) => void;
}

/**
 * Render the co-citation network scene. Node size follows the payload's
 * citation counts, color follows cluster index; an optional red disc scales
 * with the node's epistemic aggregate. With an overlay cluster active,
 * everything outside the cluster is dimmed.
 */
export function renderNetwork(container: HTMLElement, payload: NetworkPayload,
                              state: ViewState,
                              options: NetworkRenderOptions = {}): void {
  container.replaceChildren();
  const doc = container.ownerDocument;

  if (payload.edges.length === 0) {
    const notice = doc.createElement("p");
    notice.className = "empty-state";
    notice.textContent = payload.nodes.length
      ? "No co-citation links in this snapshot; showing nodes only."
      : "The snapshot has no network to draw.";
    container.appendChild(notice);
    if (payload.nodes.length === 0) return;
  }

  const width = options.width ?? 900;
  const height = options.height ?? 600;
  const positions = forceLayout(payload.nodes, payload.edges, {
    width,
    height,
    clusterGravity: options.separated ? 0.22 : 0.05,
  });

  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "network-scene");

  const clusterCount = Object.keys(payload.labels).length;
  const overlay = state.overlayCluster;
  const maxCitations = Math.max(...payload.nodes.map((n) => n.citations), 1);
  const maxE = Math.max(...payload.nodes.map((n) => n.uncertainty.E), 0);

  const edgeGroup = doc.createElementNS(SVG_NS, "g");
  for (const edge of payload.edges) {
    const a = positions.get(edge.source)!;
    const b = positions.get(edge.target)!;
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", a.x.toFixed(1));
    line.setAttribute("y1", a.y.toFixed(1));
    line.setAttribute("x2", b.x.toFixed(1));
    line.setAttribute("y2", b.y.toFixed(1));
    line.setAttribute("stroke-width", String(Math.min(1 + edge.weight * 0.4, 5)));
    line.setAttribute("class", "edge");
    const sourceCluster = payload.nodes.find((n) => n.id === edge.source)!.cluster;
    const targetCluster = payload.nodes.find((n) => n.id === edge.target)!.cluster;
    if (overlay !== null && sourceCluster !== overlay && targetCluster !== overlay) {
      line.setAttribute("opacity", DIM_OPACITY);
      line.classList.add("dim");
    }
    edgeGroup.appendChild(line);
  }
  svg.appendChild(edgeGroup);

  const nodeGroup = doc.createElementNS(SVG_NS, "g");
  for (const node of payload.nodes) {
    const pos = positions.get(node.id)!;
    const group = doc.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "node");
    group.setAttribute("data-id", node.id);
    group.setAttribute("data-cluster", String(node.cluster));
    const dimmed = overlay !== null && node.cluster !== overlay;
    if (dimmed) {
      group.setAttribute("opacity", DIM_OPACITY);
      group.classList.add("dim");
    }

    if (options.showUncertaintyDiscs !== false && node.uncertainty.E > 0 && maxE > 0) {
      const disc = doc.createElementNS(SVG_NS, "circle");
      disc.setAttribute("cx", pos.x.toFixed(1));
      disc.setAttribute("cy", pos.y.toFixed(1));
      disc.setAttribute("r", (6 + 16 * (node.uncertainty.E / maxE)).toFixed(1));
      disc.setAttribute("fill", UNCERTAINTY_DISC_COLOR);
      disc.setAttribute("fill-opacity", "0.35");
      disc.setAttribute("class", "uncertainty-disc");
      group.appendChild(disc);
    }

    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", pos.x.toFixed(1));
    circle.setAttribute("cy", pos.y.toFixed(1));
    circle.setAttribute("r", (3 + 9 * Math.sqrt(node.citations / maxCitations)).toFixed(1));
    circle.setAttribute("fill", clusterColor(node.cluster, clusterCount, state.colorblindSafe));
    circle.setAttribute("class", "node-circle");
    group.appendChild(circle);

    const title = doc.createElementNS(SVG_NS, "title");
    title.textContent =
      `${node.label}\ncitations: ${node.citations}\n` +
      `betweenness: ${node.betweenness}\nE: ${node.uncertainty.E}`;
    group.appendChild(title);

    if (options.onNodeClick) {
      group.addEventListener("click", () => options.onNodeClick!(node.id, node.cluster));
    }
    nodeGroup.appendChild(group);
  }
  svg.appendChild(nodeGroup);
  container.appendChild(svg);

  const legend = doc.createElement("ul");
  legend.className = "legend";
  for (const [index, label] of Object.entries(payload.labels)) {
    const item = doc.createElement("li");
    const swatch = doc.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = clusterColor(
      Number(index), clusterCount, state.colorblindSafe);
    item.appendChild(swatch);
    item.appendChild(doc.createTextNode(`#${index} ${label}`));
    item.setAttribute("data-cluster", index);
    legend.appendChild(item);
  }
  container.appendChild(legend);

  const stats = doc.createElement("p");
  stats.className = "network-stats";
  stats.textContent = `modularity ${payload.modularity}` +
    ` · weighted silhouette ${payload.weighted_silhouette}`;
  container.appendChild(stats);
}
