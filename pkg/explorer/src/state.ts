import type { TreeScope } from "./api.js";

export type ViewName = "network" | "clusters" | "concept-tree" | "uncertainty" | "sva";

export interface UncertaintyFilters {
  kind: string;
  cues: string;
  rhetorical: string;
}

export interface ViewState {
  view: ViewName;
  overlayCluster: number | null;   // dims everything outside this cluster
  selectedCluster: number | null;
  treeScope: TreeScope;
  selectedConcept: string | null;
  hoverConcept: string | null;
  filters: UncertaintyFilters;
  svaTop: number;
  colorblindSafe: boolean;
}

export type Event =
  | { type: "navigate"; view: ViewName }
  | { type: "selectCluster"; index: number | null }
  | { type: "toggleOverlay"; index: number }
  | { type: "setTreeScope"; scope: TreeScope }
  | { type: "hoverConcept"; phrase: string | null }
  | { type: "selectConcept"; phrase: string | null }
  | { type: "setFilters"; filters: Partial<UncertaintyFilters> }
  | { type: "setSvaTop"; top: number }
  | { type: "togglePalette" };

export function initialState(): ViewState {
  return {
    view: "network",
    overlayCluster: null,
    selectedCluster: null,
    treeScope: { kind: "cluster", value: 0 },
    selectedConcept: null,
    hoverConcept: null,
    filters: { kind: "E", cues: "", rhetorical: "" },
    svaTop: 20,
    colorblindSafe: false,
  };
}

/** Pure transition function: every navigation is (state, event) -> state. */
export function reduce(state: ViewState, event: Event): ViewState {
  switch (event.type) {
    case "navigate":
      return { ...state, view: event.view };
    case "selectCluster":
      return {
        ...state,
        selectedCluster: event.index,
        treeScope: event.index === null
          ? state.treeScope
          : { kind: "cluster", value: event.index },
      };
    case "toggleOverlay":
      return {
        ...state,
        overlayCluster: state.overlayCluster === event.index ? null : event.index,
      };
    case "setTreeScope":
      return { ...state, treeScope: event.scope, selectedConcept: null, hoverConcept: null };
    case "hoverConcept":
      return { ...state, hoverConcept: event.phrase };
    case "selectConcept":
      return { ...state, selectedConcept: event.phrase };
    case "setFilters":
      return { ...state, filters: { ...state.filters, ...event.filters } };
    case "setSvaTop":
      return { ...state, svaTop: event.top };
    case "togglePalette":
      return { ...state, colorblindSafe: !state.colorblindSafe };
  }
}
