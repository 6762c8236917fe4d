import { ApiClient } from "./api.js";
import { initialState, reduce, type Event, type ViewName, type ViewState } from "./state.js";
import { renderClusterCards } from "./render/clusters.js";
import { renderNetwork } from "./render/network.js";
import { renderSvaTable } from "./render/sva.js";
import { renderConceptTree, renderContextPanel } from "./render/tree.js";
import { renderUncertaintyList } from "./render/uncertainty.js";

const VIEWS: ViewName[] = ["network", "clusters", "concept-tree", "uncertainty", "sva"];

export class App {
  state: ViewState = initialState();
  private contextRequest = 0;

  constructor(private api: ApiClient, private root: HTMLElement) {}

  dispatch(event: Event): void {
    this.state = reduce(this.state, event);
    void this.render();
  }

  async render(): Promise<void> {
    const doc = this.root.ownerDocument;
    this.root.replaceChildren();

    const nav = doc.createElement("nav");
    for (const view of VIEWS) {
      const button = doc.createElement("button");
      button.textContent = view;
      button.className = this.state.view === view ? "active" : "";
      button.addEventListener("click", () => this.dispatch({ type: "navigate", view }));
      nav.appendChild(button);
    }
    const palette = doc.createElement("button");
    palette.className = "palette-toggle";
    palette.textContent = this.state.colorblindSafe ? "rainbow palette" : "safe palette";
    palette.addEventListener("click", () => this.dispatch({ type: "togglePalette" }));
    nav.appendChild(palette);
    this.root.appendChild(nav);

    const main = doc.createElement("main");
    this.root.appendChild(main);
    try {
      await this.renderView(main);
    } catch (error) {
      const banner = doc.createElement("p");
      banner.className = "error-banner";
      banner.textContent = String(error);
      main.replaceChildren(banner);
    }
  }

  private async renderView(main: HTMLElement): Promise<void> {
    const doc = main.ownerDocument;
    switch (this.state.view) {
      case "network": {
        const payload = await this.api.network();
        renderNetwork(main, payload, this.state, {
          onNodeClick: (_id, cluster) =>
            this.dispatch({ type: "toggleOverlay", index: cluster }),
        });
        break;
      }
      case "clusters": {
        const payload = await this.api.clusters();
        const cards = doc.createElement("div");
        renderClusterCards(cards, payload, this.state.colorblindSafe, {
          onOverlay: (index) => {
            this.dispatch({ type: "toggleOverlay", index });
            this.dispatch({ type: "navigate", view: "network" });
          },
          onSelect: (index) => {
            this.dispatch({ type: "setTreeScope", scope: { kind: "cluster", value: index } });
            this.dispatch({ type: "navigate", view: "concept-tree" });
          },
        });
        // separated arrangement of the same clusters below the cards
        const separated = doc.createElement("div");
        const network = await this.api.network();
        renderNetwork(separated, network, this.state, { separated: true, height: 420 });
        main.appendChild(cards);
        main.appendChild(separated);
        break;
      }
      case "concept-tree": {
        const tree = await this.api.conceptTree(this.state.treeScope);
        const wrap = doc.createElement("div");
        wrap.className = "tree-layout";
        const treePane = doc.createElement("div");
        const contextPane = doc.createElement("div");
        contextPane.className = "context-panel";
        renderConceptTree(treePane, tree, {
          onHover: (phrase) => void this.showContexts(contextPane, phrase),
          onSelect: (phrase) => void this.showContexts(contextPane, phrase),
        });
        wrap.appendChild(treePane);
        wrap.appendChild(contextPane);
        main.appendChild(wrap);
        if (tree.root) {
          await this.showContexts(contextPane, tree.root.phrase);
        }
        break;
      }
      case "uncertainty": {
        const { kind, cues, rhetorical } = this.state.filters;
        const payload = await this.api.uncertainty(
          kind, cues || undefined, rhetorical || undefined);
        renderUncertaintyList(main, payload);
        break;
      }
      case "sva": {
        const payload = await this.api.sva(undefined, undefined, this.state.svaTop);
        renderSvaTable(main, payload);
        break;
      }
    }
  }

  async showContexts(pane: HTMLElement, phrase: string): Promise<void> {
    // last hover wins; a failed lookup only affects the panel, never the tree
    const token = ++this.contextRequest;
    try {
      const payload = await this.api.contexts(phrase, this.state.treeScope);
      if (token !== this.contextRequest) return;
      renderContextPanel(pane, payload);
    } catch (error) {
      if (token !== this.contextRequest) return;
      const banner = pane.ownerDocument.createElement("p");
      banner.className = "error-banner";
      banner.textContent = String(error);
      pane.replaceChildren(banner);
    }
  }
}

export function mount(root: HTMLElement, baseUrl = ""): App {
  const app = new App(new ApiClient(baseUrl), root);
  void app.render();
  return app;
}

declare global {
  interface Window {
    litlensExplorer?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.litlensExplorer = mount(document.getElementById("app")!);
}
