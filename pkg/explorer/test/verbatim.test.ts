// Cross-view invariant: the explorer computes nothing — every number it
// displays appears verbatim in an intercepted API payload.
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/main.js";
import { renderClusterCards } from "../src/render/clusters.js";
import { renderSvaTable } from "../src/render/sva.js";
import type { ClustersPayload, SvaPayload } from "../src/types.js";
import { displayedNumbers, installFetchMock, payloadFor, payloadTextFor } from "./helpers.js";

function container(): HTMLElement {
  const el = document.createElement("div");
  document.body.appendChild(el);
  return el;
}

describe("displayed numbers are payload numbers", () => {
  beforeEach(() => document.body.replaceChildren());
  afterEach(() => vi.unstubAllGlobals());

  it("sva table cells are verbatim payload values in the published column order", () => {
    const payload = payloadFor("sva") as SvaPayload;
    const el = container();
    renderSvaTable(el, payload, 10);
    const header = [...el.querySelectorAll("th")].map((th) => th.textContent);
    expect(header).toEqual(["MAG ID", "M", "C-L", "C-D", "Harmonic", "Citations", "NR", "Title"]);
    const firstRow = [...el.querySelectorAll("tbody tr")][0];
    const cells = [...firstRow.querySelectorAll("td")].map((td) => td.textContent);
    const top = payload.rows[0];
    expect(cells).toEqual([
      top.id, String(top.M), String(top["C-L"]), String(top["C-D"]),
      String(top.Harmonic), String(top.Citations), String(top.NR), top.Title,
    ]);
    const raw = payloadTextFor("sva");
    for (const shown of displayedNumbers(el)) {
      expect(raw).toContain(shown);
    }
  });

  it("cluster cards: silhouette and uncertainty values are verbatim", () => {
    const payload = payloadFor("clusters") as ClustersPayload;
    const el = container();
    renderClusterCards(el, payload, false);
    const raw = payloadTextFor("clusters");
    for (const shown of displayedNumbers(el)) {
      expect(raw).toContain(shown);
    }
    const firstCard = el.querySelector(".cluster-card")!;
    const dd = [...firstCard.querySelectorAll("dd")].map((d) => d.textContent);
    const c = payload.clusters[0];
    expect(dd).toEqual([String(c.size), String(c.silhouette),
                        String(c.uncertainty.E), String(c.uncertainty.H),
                        String(c.uncertainty.T)]);
  });

  it("full app render over intercepted fetch shows only payload numbers", async () => {
    const calls = installFetchMock();
    const app = new App(new ApiClient(""), container());
    app.dispatch({ type: "setSvaTop", top: 5 });
    app.dispatch({ type: "navigate", view: "sva" });
    await vi.waitFor(() => {
      expect(document.querySelector(".sva-table")).toBeTruthy();
    });
    expect(calls.some((c) => c.path === "/sva")).toBe(true);
    const raw = payloadTextFor("sva-top-5") + payloadTextFor("sva");
    const main = document.querySelector("main")! as HTMLElement;
    for (const shown of displayedNumbers(main)) {
      expect(raw).toContain(shown);
    }
  });
});
