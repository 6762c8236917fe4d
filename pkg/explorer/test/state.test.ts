import { describe, expect, it } from "vitest";

import { initialState, reduce, type Event } from "../src/state.js";

describe("view state reducer", () => {
  it("is pure: input state is never mutated", () => {
    const state = initialState();
    const frozen = JSON.stringify(state);
    reduce(state, { type: "navigate", view: "sva" });
    reduce(state, { type: "toggleOverlay", index: 2 });
    expect(JSON.stringify(state)).toBe(frozen);
  });

  it("navigates between views", () => {
    let state = initialState();
    state = reduce(state, { type: "navigate", view: "uncertainty" });
    expect(state.view).toBe("uncertainty");
  });

  it("toggles the cluster overlay on and off", () => {
    let state = initialState();
    state = reduce(state, { type: "toggleOverlay", index: 1 });
    expect(state.overlayCluster).toBe(1);
    state = reduce(state, { type: "toggleOverlay", index: 1 });
    expect(state.overlayCluster).toBeNull();
    state = reduce(state, { type: "toggleOverlay", index: 1 });
    state = reduce(state, { type: "toggleOverlay", index: 2 });
    expect(state.overlayCluster).toBe(2);
  });

  it("selecting a cluster retargets the tree scope", () => {
    let state = initialState();
    state = reduce(state, { type: "selectCluster", index: 3 });
    expect(state.treeScope).toEqual({ kind: "cluster", value: 3 });
  });

  it("setting a tree scope clears concept selection", () => {
    let state = initialState();
    state = reduce(state, { type: "selectConcept", phrase: "spike protein" });
    state = reduce(state, { type: "setTreeScope", scope: { kind: "ref", value: "9050" } });
    expect(state.selectedConcept).toBeNull();
    expect(state.treeScope).toEqual({ kind: "ref", value: "9050" });
  });

  it("same event sequence yields the same state (navigation is a pure function)", () => {
    const events: Event[] = [
      { type: "navigate", view: "clusters" },
      { type: "toggleOverlay", index: 0 },
      { type: "setFilters", filters: { rhetorical: "conclude" } },
      { type: "togglePalette" },
    ];
    const a = events.reduce(reduce, initialState());
    const b = events.reduce(reduce, initialState());
    expect(a).toEqual(b);
  });
});
