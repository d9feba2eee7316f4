// Ask AI page: the session-level chat. It shares the one transcript per
// session with the chat box on each product page.

import type { App } from "../app.js";
import { ChatWidget } from "../chat.js";
import { el } from "../dom.js";

export function renderAskAiView(app: App): HTMLElement {
  const chat = new ChatWidget(app);
  void chat.load();
  return el(
    "section",
    { class: "view view-askai" },
    el("h2", {}, "Ask AI"),
    el(
      "p",
      { class: "hint" },
      "Ask about nutrition concepts or the scenario. Open a product page to ask about a specific item.",
    ),
    chat.root,
  );
}
