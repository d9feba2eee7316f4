// Selected items: the learner's comparison set, the side-by-side table with
// per-row extreme badges, and the basis toggle.

import { ApiError, ComparisonTableDoc } from "../api.js";
import type { App } from "../app.js";
import { clear, el } from "../dom.js";
import { messageFor } from "../errors.js";

export function renderSelectedView(app: App): HTMLElement {
  const session = app.session!;
  const selected = session.selected_product_ids;
  const view = el("section", { class: "view view-selected" }, el("h2", {}, "Selected items"));

  if (selected.length === 0) {
    view.append(
      el(
        "p",
        { class: "empty-state" },
        "Nothing selected yet. Choose “Select” on a product under All items to compare it here.",
      ),
    );
    return view; // no compare request for an empty set
  }

  const list = el("ul", { class: "selected-list" });
  for (const pid of selected) {
    const product = app.products.find((p) => p.id === pid);
    const row = el("li", { class: "selected-item" }, el("span", {}, product ? product.name : pid));
    if (session.phase !== "completed") {
      const recommend = el(
        "button",
        {
          class: "recommend",
          "data-product-id": pid,
          onclick: () => void app.setRecommendation(pid),
        },
        session.recommendation === pid ? "Recommended ✓" : "Recommend",
      ) as HTMLButtonElement;
      recommend.disabled = session.recommendation === pid;
      row.append(recommend);
    } else if (session.recommendation === pid) {
      row.append(el("span", { class: "recommend-done" }, "Recommended ✓"));
    }
    list.append(row);
  }
  view.append(list);

  const tableHost = el("div", { class: "compare-host" });
  const banner = el("div", { class: "inline-error", hidden: true });
  let basis = "per_serving";

  const toggle = el("div", { class: "basis-toggle" });
  const buildToggle = () => {
    clear(toggle);
    for (const [value, label] of [
      ["per_serving", "Per serving"],
      ["per_100", "Per 100 ml/g"],
    ] as [string, string][]) {
      const input = el("input", { type: "radio", name: "basis", value }) as HTMLInputElement;
      input.checked = value === basis;
      input.addEventListener("change", () => void load(value));
      toggle.append(el("label", { class: "choice" }, input, label));
    }
  };

  const load = async (nextBasis: string) => {
    banner.hidden = true;
    try {
      const table = await app.api.compare(app.requireSessionId(), selected, nextBasis);
      basis = nextBasis;
      renderTable(tableHost, table);
    } catch (err) {
      if (err instanceof ApiError) {
        banner.hidden = false;
        banner.textContent = messageFor(err.code, err.message);
      } else {
        throw err;
      }
    }
    buildToggle(); // revert the radios when the request was refused
  };

  buildToggle();
  view.append(el("h3", {}, "Compare"), toggle, banner, tableHost);
  void load(basis);
  return view;
}

function renderTable(host: HTMLElement, table: ComparisonTableDoc): void {
  clear(host);
  const grid = el("table", { class: "compare-table", "data-testid": "compare-table" });
  const head = el("tr", {}, el("th", {}, "Nutrient"), el("th", {}, "Unit"));
  for (const pid of table.product_ids) head.append(el("th", {}, pid));
  grid.append(head);
  for (const row of table.rows) {
    const tr = el("tr", {}, el("td", {}, row.key), el("td", {}, row.unit));
    row.values.forEach((value, i) => {
      const cell = el("td", { class: "compare-cell" });
      if (value === null) {
        cell.textContent = "—";
        cell.classList.add("absent");
      } else {
        cell.textContent = String(value);
        if (row.min_marks[i]) {
          cell.classList.add("min");
          cell.append(el("span", { class: "badge badge-min" }, "min"));
        }
        if (row.max_marks[i]) {
          cell.classList.add("max");
          cell.append(el("span", { class: "badge badge-max" }, "max"));
        }
      }
      tr.append(cell);
    });
    grid.append(tr);
  }
  host.append(grid);
}
