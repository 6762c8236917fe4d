import { renderHighlighted } from "../highlight.js";
import type { UncertaintyPayload, UncertaintyRow } from "../types.js";

export const BAR_MAX_WIDTH = 280;

/**
 * Bar width is an affine, order-preserving function of the payload score:
 * width = score / max(scores) * BAR_MAX_WIDTH. No other transformation.
 */
export function barWidth(score: number, maxScore: number): number {
  if (maxScore <= 0) return 0;
  return (score / maxScore) * BAR_MAX_WIDTH;
}

/** Ranked context list with score bars and kind-tagged highlight spans. */
export function renderUncertaintyList(container: HTMLElement,
                                      payload: UncertaintyPayload): void {
  container.replaceChildren();
  const doc = container.ownerDocument;
  const heading = doc.createElement("h3");
  heading.textContent = `Uncertainty (${payload.kind})`;
  container.appendChild(heading);

  const rows = payload.rows.filter((r) => r.score > 0);
  if (rows.length === 0) {
    const empty = doc.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No contexts match the filter.";
    container.appendChild(empty);
    return;
  }

  const maxScore = Math.max(...rows.map((r) => r.score));
  const list = doc.createElement("ol");
  list.className = "uncertainty-list";
  for (const row of rows) {
    list.appendChild(renderRow(doc, row, maxScore));
  }
  container.appendChild(list);
}

function renderRow(doc: Document, row: UncertaintyRow, maxScore: number): HTMLElement {
  const item = doc.createElement("li");
  item.className = "uncertainty-row";

  const header = doc.createElement("div");
  header.className = "row-header";

  const bar = doc.createElement("span");
  bar.className = "score-bar";
  bar.style.width = `${barWidth(row.score, maxScore)}px`;
  bar.setAttribute("data-score", String(row.score));
  header.appendChild(bar);

  const score = doc.createElement("span");
  score.className = "score-value";
  score.textContent = String(row.score);
  header.appendChild(score);

  const pair = doc.createElement("span");
  pair.className = "pair";
  if (row.link) {
    const link = doc.createElement("a");
    link.href = row.link;
    link.target = "_blank";
    link.rel = "noopener";
    link.textContent = row.citing_id;
    pair.appendChild(link);
  } else {
    pair.appendChild(doc.createTextNode(row.citing_id));
  }
  pair.appendChild(doc.createTextNode(` → ${row.cited_id}`));
  header.appendChild(pair);

  item.appendChild(header);
  item.appendChild(
    renderHighlighted(doc, row.text, [...row.cue_spans, ...row.rhetorical_spans]));
  return item;
}
