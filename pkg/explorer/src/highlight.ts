import type { HighlightSpan } from "./types.js";

export interface Segment {
  text: string;
  kinds: string[]; // empty = plain text
}

/**
 * Split a passage into segments by the payload's highlight spans. Spans of
 * different kinds may overlap (a cue inside a rhetorical stretch); each
 * segment carries every kind covering it so styles co-render.
 */
export function segmentText(text: string, spans: HighlightSpan[]): Segment[] {
  const bounds = new Set<number>([0, text.length]);
  for (const span of spans) {
    bounds.add(Math.max(0, span.start));
    bounds.add(Math.min(text.length, span.end));
  }
  const cuts = [...bounds].sort((a, b) => a - b);
  const segments: Segment[] = [];
  for (let i = 0; i + 1 < cuts.length; i++) {
    const [from, to] = [cuts[i], cuts[i + 1]];
    if (from >= to) continue;
    const kinds = spans
      .filter((s) => s.start <= from && to <= s.end)
      .map((s) => s.kind);
    segments.push({ text: text.slice(from, to), kinds: [...new Set(kinds)].sort() });
  }
  return segments;
}

/** Render a passage with <mark class="hl-K"> elements per highlight kind. */
export function renderHighlighted(doc: Document, text: string,
                                  spans: HighlightSpan[]): HTMLElement {
  const container = doc.createElement("span");
  container.className = "passage";
  for (const segment of segmentText(text, spans)) {
    if (segment.kinds.length === 0) {
      container.appendChild(doc.createTextNode(segment.text));
    } else {
      const mark = doc.createElement("mark");
      mark.className = segment.kinds.map((k) => `hl-${k}`).join(" ");
      mark.textContent = segment.text;
      container.appendChild(mark);
    }
  }
  return container;
}
