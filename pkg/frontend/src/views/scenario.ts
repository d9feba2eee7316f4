// Scenario page: the client narrative with selectable text. Selecting text
// posts a highlight; offsets are converted from UTF-16 selection offsets to
// the Unicode scalar indices the service stores.

import type { App } from "../app.js";
import { el } from "../dom.js";
import { toScalarOffset } from "../offsets.js";

export interface SpanOffsets {
  start: number;
  end: number;
}

export function selectionToOffsets(narrativeEl: HTMLElement, narrative: string): SpanOffsets | null {
  const selection = window.getSelection();
  if (!selection || selection.rangeCount === 0) return null;
  const range = selection.getRangeAt(0);
  if (range.collapsed) return null; // empty selection: no request
  const textNode = narrativeEl.firstChild;
  if (!textNode || range.startContainer !== textNode || range.endContainer !== textNode) {
    return null; // selection reaches outside the narrative
  }
  const start = toScalarOffset(narrative, range.startOffset);
  const end = toScalarOffset(narrative, range.endOffset);
  if (start >= end) return null;
  return { start, end };
}

export function renderScenarioView(app: App): HTMLElement {
  const scenario = app.scenario!;
  const narrativeEl = el("p", { class: "narrative", "data-testid": "narrative" }, scenario.narrative);
  narrativeEl.addEventListener("mouseup", () => {
    const span = selectionToOffsets(narrativeEl, scenario.narrative);
    if (span) void app.addHighlight(span.start, span.end);
  });

  const profile = el("dl", { class: "profile" });
  for (const entry of scenario.client_profile) {
    profile.append(el("dt", {}, entry.key), el("dd", {}, entry.value));
  }

  return el(
    "section",
    { class: "view view-scenario" },
    el("h2", {}, scenario.title),
    el("p", { class: "hint" }, "Select text in the scenario to capture it in your tracking panel."),
    narrativeEl,
    el("h3", {}, "Client profile"),
    profile,
  );
}
