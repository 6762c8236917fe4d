import { clusterColor } from "../palette.js";
import type { ClustersPayload } from "../types.js";

export interface ClusterCallbacks {
  onOverlay?: (index: number) => void;
  onSelect?: (index: number) => void;
}

/** Cluster summary cards (size, silhouette, uncertainty), with overlay toggles. */
export function renderClusterCards(container: HTMLElement, payload: ClustersPayload,
                                   colorblindSafe: boolean,
                                   callbacks: ClusterCallbacks = {}): void {
  container.replaceChildren();
  const doc = container.ownerDocument;

  const summary = doc.createElement("p");
  summary.className = "partition-summary";
  summary.textContent = `modularity ${payload.modularity}` +
    ` · weighted silhouette ${payload.weighted_silhouette}`;
  container.appendChild(summary);

  const grid = doc.createElement("div");
  grid.className = "cluster-grid";
  const total = payload.clusters.length;
  for (const cluster of payload.clusters) {
    const card = doc.createElement("div");
    card.className = "cluster-card";
    card.setAttribute("data-cluster", String(cluster.index));
    card.style.borderColor = clusterColor(cluster.index, total, colorblindSafe);

    const title = doc.createElement("h4");
    title.textContent = `#${cluster.index} ${cluster.label}`;
    card.appendChild(title);

    const facts = doc.createElement("dl");
    for (const [name, value] of [
      ["size", cluster.size],
      ["silhouette", cluster.silhouette],
      ["E", cluster.uncertainty.E],
      ["H", cluster.uncertainty.H],
      ["T", cluster.uncertainty.T],
    ] as [string, number][]) {
      const dt = doc.createElement("dt");
      dt.textContent = name;
      const dd = doc.createElement("dd");
      dd.textContent = String(value);
      facts.appendChild(dt);
      facts.appendChild(dd);
    }
    card.appendChild(facts);

    const overlayButton = doc.createElement("button");
    overlayButton.textContent = "overlay";
    overlayButton.addEventListener("click", () => callbacks.onOverlay?.(cluster.index));
    card.appendChild(overlayButton);

    const treeButton = doc.createElement("button");
    treeButton.textContent = "concepts";
    treeButton.addEventListener("click", () => callbacks.onSelect?.(cluster.index));
    card.appendChild(treeButton);

    grid.appendChild(card);
  }
  container.appendChild(grid);
}
