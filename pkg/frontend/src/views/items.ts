// All items: the scenario's product options, and the product detail page
// with the suitability assessment, initial decision, and chat box.

import type { ProductDoc } from "../api.js";
import type { App } from "../app.js";
import { ChatWidget } from "../chat.js";
import { el } from "../dom.js";
import { DECISION_OPTIONS, RATING_OPTIONS, submitEnabled, AssessmentFormState } from "../state.js";

export function renderItemsView(app: App): HTMLElement {
  if (app.state.focusedProductId) {
    const product = app.products.find((p) => p.id === app.state.focusedProductId);
    if (product) return renderProductDetail(app, product);
  }
  const grid = el("div", { class: "item-grid" });
  for (const product of app.products) {
    const assessment = app.session?.assessments[product.id];
    grid.append(
      el(
        "button",
        {
          class: "item-card",
          "data-product-id": product.id,
          onclick: () => void app.focusProduct(product.id),
        },
        el("span", { class: "item-name" }, product.name),
        el("span", { class: "item-category" }, product.category),
        assessment
          ? el("span", { class: "item-state" }, assessment.decision === "select" ? "Selected" : "Assessed")
          : null,
      ),
    );
  }
  return el("section", { class: "view view-items" }, el("h2", {}, "All items"), grid);
}

function renderProductDetail(app: App, product: ProductDoc): HTMLElement {
  const back = el(
    "button",
    { class: "back", onclick: () => void app.focusProduct(null) },
    "← All items",
  );

  const images = el("div", { class: "images", title: "Click to enlarge the pictures for product details" });
  for (const ref of product.image_refs) {
    const img = el("img", { src: ref, alt: product.name, class: "product-image" });
    img.addEventListener("click", () => img.classList.toggle("enlarged"));
    images.append(img);
  }

  const nutrition = el("table", { class: "nutrition" });
  nutrition.append(
    el("tr", {}, el("th", {}, "Nutrient"), el("th", {}, "Amount"), el("th", {}, "% DV")),
  );
  for (const entry of product.nutrition) {
    nutrition.append(
      el(
        "tr",
        {},
        el("td", {}, entry.key),
        el("td", {}, `${entry.amount} ${entry.unit}`),
        el("td", {}, entry.percent_dv !== undefined ? `${entry.percent_dv}%` : ""),
      ),
    );
  }

  const claims = el("ul", { class: "claims" });
  for (const claim of product.claims) claims.append(el("li", {}, claim));

  const serving = product.serving;
  const servingText = `${serving.amount} ${serving.unit}${serving.description ? ` (${serving.description})` : ""}`;

  const chat = new ChatWidget(app, product.id);
  void chat.load();

  return el(
    "section",
    { class: "view view-product" },
    back,
    el("h2", {}, product.name),
    images,
    el("h3", {}, "Nutritional facts"),
    nutrition,
    el("h3", {}, "About this item"),
    claims,
    el("h3", {}, "Ingredients"),
    el("p", { class: "ingredients" }, product.ingredients.join(", ")),
    el("h3", {}, "Product details"),
    el("p", {}, `Category: ${product.category}. Serving: ${servingText}.`),
    renderAssessmentForm(app, product),
    chat.root,
  );
}

export function renderAssessmentForm(app: App, product: ProductDoc): HTMLElement {
  const current = app.session?.assessments[product.id];
  const completed = app.session?.phase === "completed";
  const form: AssessmentFormState = { rating: null, decision: null, submitting: false };

  const submit = el("button", { class: "assess-submit" }, "Submit assessment") as HTMLButtonElement;
  submit.disabled = true;
  const sync = () => {
    submit.disabled = completed || !submitEnabled(form);
  };

  const group = (
    name: string,
    options: [string, string][],
    onPick: (value: string) => void,
  ): HTMLElement => {
    const wrap = el("div", { class: `choices choices-${name}` });
    for (const [value, label] of options) {
      const input = el("input", {
        type: "radio",
        name: `${name}-${product.id}`,
        value,
      }) as HTMLInputElement;
      input.disabled = !!completed;
      input.addEventListener("change", () => {
        onPick(value);
        sync();
      });
      wrap.append(el("label", { class: "choice" }, input, label));
    }
    return wrap;
  };

  submit.addEventListener("click", () => {
    if (!submitEnabled(form) || completed) return;
    form.submitting = true;
    sync();
    void app
      .recordAssessment(product.id, form.rating!, form.decision!)
      .finally(() => {
        form.submitting = false;
        sync();
      });
  });

  const currentLine = current
    ? el(
        "p",
        { class: "assess-current" },
        `Current assessment: ${labelFor(RATING_OPTIONS, current.rating)} / ${labelFor(DECISION_OPTIONS, current.decision)}`,
      )
    : null;

  return el(
    "section",
    { class: "assessment" },
    el("h3", {}, "Assessment"),
    el("p", { class: "hint" }, "Assess the suitability of the product for the given scenario."),
    group("rating", RATING_OPTIONS, (v) => (form.rating = v)),
    el("h3", {}, "Initial Decision"),
    el("p", { class: "hint" }, "Make an initial decision on whether to consider this product or not."),
    group("decision", DECISION_OPTIONS, (v) => (form.decision = v)),
    submit,
    currentLine,
  );
}

function labelFor(options: [string, string][], value: string): string {
  const found = options.find(([v]) => v === value);
  return found ? found[1] : value;
}
