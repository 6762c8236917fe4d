import type { SvaPayload, SvaRow } from "../types.js";

/** The ranking table in the published column order; values verbatim. */
export function renderSvaTable(container: HTMLElement, payload: SvaPayload,
                               top?: number): void {
  container.replaceChildren();
  const doc = container.ownerDocument;
  const heading = doc.createElement("h3");
  heading.textContent =
    `Structural variation ${payload.window[0]} – ${payload.window[1]}`;
  container.appendChild(heading);

  const rows = top !== undefined ? payload.rows.slice(0, top) : payload.rows;
  if (rows.length === 0) {
    const empty = doc.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No articles in this window.";
    container.appendChild(empty);
    return;
  }

  const table = doc.createElement("table");
  table.className = "sva-table";
  const thead = doc.createElement("thead");
  const headRow = doc.createElement("tr");
  for (const column of ["MAG ID", ...payload.columns, "Title"]) {
    const th = doc.createElement("th");
    th.textContent = column;
    headRow.appendChild(th);
  }
  thead.appendChild(headRow);
  table.appendChild(thead);

  const tbody = doc.createElement("tbody");
  for (const row of rows) {
    const tr = doc.createElement("tr");
    const cells: (string | number)[] = [
      row.id,
      ...payload.columns.map((c) => row[c as keyof SvaRow] as number),
      row.Title,
    ];
    for (const value of cells) {
      const td = doc.createElement("td");
      td.textContent = String(value);
      tr.appendChild(td);
    }
    tbody.appendChild(tr);
  }
  table.appendChild(tbody);
  container.appendChild(table);

  if (payload.skipped.length) {
    const note = doc.createElement("p");
    note.className = "sva-skipped";
    note.textContent =
      `${payload.skipped.length} articles skipped (no usable baseline).`;
    container.appendChild(note);
  }
}
