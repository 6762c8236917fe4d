import { beforeEach, describe, expect, it } from "vitest";

import { BAR_MAX_WIDTH, barWidth, renderUncertaintyList } from "../src/render/uncertainty.js";
import type { UncertaintyPayload } from "../src/types.js";
import { displayedNumbers, payloadFor, payloadTextFor } from "./helpers.js";

function container(): HTMLElement {
  const el = document.createElement("div");
  document.body.appendChild(el);
  return el;
}

describe("uncertainty view", () => {
  beforeEach(() => document.body.replaceChildren());

  it("rows appear in payload order (score descending)", () => {
    const payload = payloadFor("uncertainty-E") as UncertaintyPayload;
    const el = container();
    renderUncertaintyList(el, payload);
    const scores = [...el.querySelectorAll(".score-bar")]
      .map((b) => Number(b.getAttribute("data-score")));
    const expected = payload.rows.filter((r) => r.score > 0).map((r) => r.score);
    expect(scores).toEqual(expected);
    const sorted = [...scores].sort((a, b) => b - a);
    expect(scores).toEqual(sorted);
  });

  it("bar widths are an affine, order-preserving function of payload scores", () => {
    const payload = payloadFor("uncertainty-E") as UncertaintyPayload;
    const el = container();
    renderUncertaintyList(el, payload);
    const bars = [...el.querySelectorAll(".score-bar")];
    const widths = bars.map((b) => parseFloat((b as HTMLElement).style.width));
    const scores = bars.map((b) => Number(b.getAttribute("data-score")));
    const max = Math.max(...scores);
    widths.forEach((w, i) => {
      expect(w).toBeCloseTo((scores[i] / max) * BAR_MAX_WIDTH, 6);
    });
    for (let i = 0; i + 1 < widths.length; i++) {
      if (scores[i] > scores[i + 1]) expect(widths[i]).toBeGreaterThan(widths[i + 1]);
      if (scores[i] === scores[i + 1]) expect(widths[i]).toBe(widths[i + 1]);
    }
    expect(barWidth(0, 0)).toBe(0);
  });

  it("zero-score rows are excluded", () => {
    const payload = payloadFor("uncertainty-E") as UncertaintyPayload;
    const withZero: UncertaintyPayload = {
      kind: "E",
      rows: [...payload.rows,
             { ...payload.rows[0], score: 0, citing_id: "zzz" }],
    };
    const el = container();
    renderUncertaintyList(el, withZero);
    const texts = [...el.querySelectorAll(".pair")].map((p) => p.textContent);
    expect(texts.some((t) => t!.includes("zzz"))).toBe(false);
  });

  it("cue spans and rhetorical spans co-render with distinct styles", () => {
    const payload = payloadFor("uncertainty-E-conclude") as UncertaintyPayload;
    const el = container();
    renderUncertaintyList(el, payload);
    const row = el.querySelector(".uncertainty-row")!;
    expect(row.querySelector("mark.hl-E")).toBeTruthy();
    expect(row.querySelector("mark.hl-R")).toBeTruthy();
    // highlighted surfaces come from the payload's own span offsets
    const first = payload.rows[0];
    const cue = first.cue_spans[0];
    const surface = first.text.slice(cue.start, cue.end);
    expect(row.querySelector("mark.hl-E")!.textContent).toBe(surface);
  });

  it("empty result renders the empty state", () => {
    const el = container();
    renderUncertaintyList(el, { kind: "E", rows: [] });
    expect(el.querySelector(".empty-state")).toBeTruthy();
  });

  it("every displayed number appears verbatim in the API payload", () => {
    const payload = payloadFor("uncertainty-E-conclude") as UncertaintyPayload;
    const el = container();
    renderUncertaintyList(el, payload);
    const raw = payloadTextFor("uncertainty-E-conclude");
    for (const shown of displayedNumbers(el)) {
      expect(raw).toContain(shown);
    }
  });
});
