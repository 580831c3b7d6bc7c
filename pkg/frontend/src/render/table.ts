/** Sortable data table with rows highlighted in sync with global selection. */

import type { ArtifactJson } from "../types.js";
import type { ViewState } from "../state.js";
import { axisName, tableRows, type TableSortColumn } from "../marks.js";

export interface TableCallbacks {
  onHover(id: number | null): void;
}

export class DataTable {
  private sortColumn: TableSortColumn | null = null;
  private descending = false;
  private artifact: ArtifactJson | null = null;
  private state: ViewState | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly callbacks: TableCallbacks,
  ) {}

  setArtifact(artifact: ArtifactJson): void {
    this.artifact = artifact;
    this.sortColumn = null;
    this.descending = false;
  }

  render(state: ViewState): void {
    if (!this.artifact) return;
    this.state = state;
    const artifact = this.artifact;
    const axes = artifact.meta.n_dec + artifact.meta.n_obj;
    const table = document.createElement("table");
    const head = document.createElement("thead");
    const headRow = document.createElement("tr");
    const columns: TableSortColumn[] = ["id", ...Array.from({ length: axes }, (_, i) => i)];
    for (const column of columns) {
      const th = document.createElement("th");
      const label = column === "id" ? "id" : axisName(artifact, column);
      const active = this.sortColumn === column;
      th.textContent = active ? `${label} ${this.descending ? "↓" : "↑"}` : label;
      th.addEventListener("click", () => this.onSort(column));
      headRow.append(th);
    }
    head.append(headRow);
    table.append(head);

    const body = document.createElement("tbody");
    for (const row of tableRows(artifact, state, this.sortColumn, this.descending)) {
      const tr = document.createElement("tr");
      if (row.hovered) tr.classList.add("row-hovered");
      if (row.selected) tr.classList.add("row-selected");
      if (row.stroked) tr.classList.add("row-stroked");
      const idCell = document.createElement("td");
      idCell.textContent = String(row.id);
      tr.append(idCell);
      for (const cell of row.cells) {
        const td = document.createElement("td");
        td.textContent = cell;
        tr.append(td);
      }
      tr.addEventListener("pointerenter", () => this.callbacks.onHover(row.id));
      tr.addEventListener("pointerleave", () => this.callbacks.onHover(null));
      body.append(tr);
    }
    table.append(body);
    this.container.replaceChildren(table);
  }

  private onSort(column: TableSortColumn): void {
    if (this.sortColumn === column) {
      this.descending = !this.descending;
    } else {
      this.sortColumn = column;
      this.descending = false;
    }
    if (this.state) this.render(this.state);
  }
}
