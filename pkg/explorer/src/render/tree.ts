import { renderHighlighted } from "../highlight.js";
import type { ConceptTreePayload, ContextsPayload, TreeNode } from "../types.js";

export interface TreeCallbacks {
  onHover?: (phrase: string) => void;
  onSelect?: (phrase: string) => void;
}

/** Collapsible concept tree; hover and click hand the phrase to callbacks. */
export function renderConceptTree(container: HTMLElement,
                                  payload: ConceptTreePayload,
                                  callbacks: TreeCallbacks = {}): void {
  container.replaceChildren();
  const doc = container.ownerDocument;
  const heading = doc.createElement("h3");
  heading.textContent = `Concept tree (${payload.scope})`;
  container.appendChild(heading);

  if (!payload.root) {
    const empty = doc.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No concepts in this scope.";
    container.appendChild(empty);
    return;
  }

  const build = (node: TreeNode): HTMLElement => {
    const item = doc.createElement("li");
    item.className = "concept-node";
    item.setAttribute("data-phrase", node.phrase);

    const label = doc.createElement("span");
    label.className = "concept-label";
    label.textContent = `${node.phrase} (${node.frequency})`;
    label.addEventListener("mouseenter", () => callbacks.onHover?.(node.phrase));
    label.addEventListener("click", (event) => {
      event.stopPropagation();
      callbacks.onSelect?.(node.phrase);
    });
    item.appendChild(label);

    if (node.children.length) {
      const toggle = doc.createElement("button");
      toggle.className = "toggle";
      toggle.textContent = "−";
      const childList = doc.createElement("ul");
      childList.className = "concept-children";
      for (const child of node.children) {
        childList.appendChild(build(child));
      }
      toggle.addEventListener("click", (event) => {
        event.stopPropagation();
        const hidden = childList.classList.toggle("collapsed");
        toggle.textContent = hidden ? "+" : "−";
      });
      item.insertBefore(toggle, label);
      item.appendChild(childList);
    }
    return item;
  };

  const rootList = doc.createElement("ul");
  rootList.className = "concept-tree";
  rootList.appendChild(build(payload.root));
  container.appendChild(rootList);
}

/** Date-ordered context passages for the hovered/selected concept. */
export function renderContextPanel(container: HTMLElement,
                                   payload: ContextsPayload): void {
  container.replaceChildren();
  const doc = container.ownerDocument;
  const heading = doc.createElement("h3");
  heading.textContent = payload.concept
    ? `Citation contexts: ${payload.concept}`
    : "Citation contexts";
  container.appendChild(heading);

  if (payload.contexts.length === 0) {
    const empty = doc.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No contexts for this concept.";
    container.appendChild(empty);
    return;
  }

  const list = doc.createElement("ol");
  list.className = "context-list";
  for (const row of payload.contexts) {
    const item = doc.createElement("li");
    item.className = "context-row";

    const source = doc.createElement("div");
    source.className = "context-source";
    if (row.link) {
      const link = doc.createElement("a");
      link.href = row.link;
      link.target = "_blank";
      link.rel = "noopener";
      link.textContent = row.citing_id;
      source.appendChild(link);
    } else {
      source.appendChild(doc.createTextNode(row.citing_id));
    }
    if (row.date) {
      source.appendChild(doc.createTextNode(` · ${row.date}`));
    }
    item.appendChild(source);
    item.appendChild(renderHighlighted(doc, row.text, row.spans));
    list.appendChild(item);
  }
  container.appendChild(list);
}
