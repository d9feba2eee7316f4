// Summary page: highlighted requirements beside the recommended product,
// the justification editor, finalize, and the post-completion survey.

import { ApiError } from "../api.js";
import type { App } from "../app.js";
import { el } from "../dom.js";
import { messageFor } from "../errors.js";

export async function renderSummaryView(app: App): Promise<HTMLElement> {
  const session = app.session!;
  if (!session.recommendation) {
    return el(
      "section",
      { class: "view view-summary" },
      el("h2", {}, "Summary"),
      el(
        "p",
        { class: "empty-state" },
        "No recommendation yet. Select items and pick a recommendation first.",
      ),
      el(
        "button",
        { onclick: () => void app.navigate("Selected items") },
        "Go to Selected items",
      ),
    );
  }

  const summary = await app.api.getSummary(session.id);
  const completed = session.phase === "completed";

  const highlights = el("ul", { class: "summary-highlights" });
  for (const h of summary.highlights) {
    highlights.append(el("li", {}, `“${h.extracted}”`));
  }
  if (summary.highlights.length === 0) {
    highlights.append(el("li", { class: "sidebar-empty" }, "No highlights captured."));
  }

  const product = summary.recommendation_product;
  const productCard = el(
    "div",
    { class: "summary-product" },
    el("h3", {}, "Recommended product"),
    el("p", { class: "item-name" }, product.name),
    el("p", { class: "item-category" }, product.category),
  );

  const error = el("div", { class: "inline-error", hidden: true });
  const showError = (err: unknown) => {
    error.hidden = false;
    error.textContent = err instanceof ApiError ? messageFor(err.code, err.message) : String(err);
  };

  const view = el(
    "section",
    { class: "view view-summary" },
    el("h2", {}, "Summary"),
    el(
      "div",
      { class: "summary-columns" },
      el("div", { class: "summary-left" }, el("h3", {}, "Highlighted requirements"), highlights),
      productCard,
    ),
    error,
  );

  if (!completed) {
    const textarea = el("textarea", {
      class: "justification",
      placeholder: "Explain how your recommendation meets the highlighted requirements.",
    }) as HTMLTextAreaElement;
    textarea.value = session.justification ?? "";

    const finalize = el("button", { class: "finalize" }, "Finalize") as HTMLButtonElement;
    const sync = () => {
      finalize.disabled = textarea.value.trim() === "";
    };
    textarea.addEventListener("input", sync);
    sync();

    finalize.addEventListener("click", () => {
      void (async () => {
        try {
          await app.api.submitJustification(session.id, textarea.value);
          await app.api.finalize(session.id);
          await app.refreshSession();
          await app.navigate("Summary");
        } catch (err) {
          showError(err);
        }
      })();
    });

    view.append(
      el("h3", {}, "Justification"),
      textarea,
      finalize,
    );
  } else {
    view.append(
      el("h3", {}, "Justification"),
      el("p", { class: "justification-final", "data-testid": "final-justification" },
        summary.justification ?? ""),
      el("p", { class: "done-note" }, "This session is finalized and read-only."),
      renderSurvey(app),
    );
  }
  return view;
}

function renderSurvey(app: App): HTMLElement {
  if (app.surveySubmitted) {
    return el("p", { class: "survey-done" }, "Thanks, your feedback was recorded.");
  }
  const scale = (name: string): HTMLSelectElement => {
    const select = el("select", { class: `survey-${name}` }) as HTMLSelectElement;
    for (let value = 1; value <= 10; value += 1) {
      select.append(el("option", { value: String(value) }, String(value)));
    }
    select.value = "8";
    return select;
  };
  const usefulness = scale("usefulness");
  const ease = scale("ease");
  const feedback = el("textarea", {
    class: "survey-feedback",
    placeholder: "What worked well? What should improve?",
  }) as HTMLTextAreaElement;
  const error = el("div", { class: "inline-error", hidden: true });

  const submit = el("button", { class: "survey-submit" }, "Send feedback") as HTMLButtonElement;
  submit.addEventListener("click", () => {
    void (async () => {
      try {
        await app.api.submitSurvey(
          app.session!.user_ref,
          Number(usefulness.value),
          Number(ease.value),
          feedback.value.trim() || undefined,
        );
        app.surveySubmitted = true;
        await app.navigate("Summary");
      } catch (err) {
        error.hidden = false;
        error.textContent = err instanceof ApiError ? messageFor(err.code, err.message) : String(err);
      }
    })();
  });

  return el(
    "section",
    { class: "survey" },
    el("h3", {}, "Quick survey"),
    el(
      "label",
      { class: "survey-row" },
      "How valuable was this for building nutrition know-how? (1–10)",
      usefulness,
    ),
    el("label", { class: "survey-row" }, "How easy was the platform to use? (1–10)", ease),
    feedback,
    error,
    submit,
  );
}
