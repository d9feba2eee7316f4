// The tracking panel: every highlight the learner captured, visible in every
// view. Content mirrors the session document from the server; there is no
// client-only highlight state.

import type { App } from "./app.js";
import { clear, el } from "./dom.js";

export function renderSidebar(app: App): HTMLElement {
  const body = el("div", { class: "sidebar-body" });
  const aside = el(
    "aside",
    { class: "sidebar", "data-testid": "tracking-panel" },
    el(
      "div",
      { class: "sidebar-head" },
      el("h3", {}, "Tracking panel"),
      el(
        "button",
        {
          class: "sidebar-toggle",
          onclick: () => {
            app.state.highlightsPanelOpen = !app.state.highlightsPanelOpen;
            body.hidden = !app.state.highlightsPanelOpen;
          },
        },
        "Show / hide",
      ),
    ),
    body,
  );
  body.hidden = !app.state.highlightsPanelOpen;
  fillSidebar(app, body);
  return aside;
}

export function fillSidebar(app: App, body: HTMLElement): void {
  clear(body);
  const session = app.session;
  if (!session || session.highlights.length === 0) {
    body.append(el("p", { class: "sidebar-empty" }, "Highlight scenario text to collect it here."));
    return;
  }
  const completed = session.phase === "completed";
  const list = el("ul", { class: "sidebar-list" });
  session.highlights.forEach((h, index) => {
    const item = el("li", { class: "sidebar-item" }, el("span", {}, `“${h.extracted}”`));
    if (!completed) {
      item.append(
        el(
          "button",
          {
            class: "sidebar-remove",
            title: "Remove highlight",
            onclick: () => void app.removeHighlight(index),
          },
          "×",
        ),
      );
    }
    list.append(item);
  });
  body.append(list);
}
