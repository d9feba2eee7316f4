// Single-page shell: five-entry left navigation, the active view, and the
// tracking panel that stays on screen in every view.

import { ApiClient, ApiError, ProductDoc, ScenarioDoc, SessionDoc } from "./api.js";
import { clear, el } from "./dom.js";
import { messageFor } from "./errors.js";
import { NAV_ENTRIES, NavEntry, ViewState } from "./state.js";
import { renderSidebar } from "./sidebar.js";
import { renderAskAiView } from "./views/askai.js";
import { renderItemsView } from "./views/items.js";
import { renderScenarioView } from "./views/scenario.js";
import { renderSelectedView } from "./views/selected.js";
import { renderSummaryView } from "./views/summary.js";

const FOOTER_TEXT =
  "Healthy Choice - A Computer-simulated Environment for Making Healthier Food Choices";

export class App {
  state: ViewState = {
    activeNav: "Scenario",
    sessionId: null,
    focusedProductId: null,
    highlightsPanelOpen: true,
  };
  session: SessionDoc | null = null;
  scenario: ScenarioDoc | null = null;
  products: ProductDoc[] = [];
  surveySubmitted = false;

  private busy = false;
  private banner: HTMLElement;
  private main: HTMLElement;
  private shell: HTMLElement;

  constructor(root: HTMLElement, readonly api: ApiClient) {
    this.banner = el("div", { class: "banner", hidden: true });
    this.main = el("main", { class: "main" });
    this.shell = el("div", { class: "app" });
    root.append(this.shell);
  }

  requireSessionId(): string {
    if (!this.state.sessionId) throw new Error("no active session");
    return this.state.sessionId;
  }

  // --- lifecycle -------------------------------------------------------

  async start(): Promise<void> {
    const { scenarios } = await this.api.getScenarios();
    this.renderStartScreen(scenarios);
  }

  async startSession(userRef: string, scenarioId: string): Promise<void> {
    this.session = await this.api.createSession(userRef, scenarioId);
    this.state.sessionId = this.session.id;
    this.state.focusedProductId = null;
    this.surveySubmitted = false;
    this.scenario = await this.api.getScenario(scenarioId);
    const { products } = await this.api.getProducts();
    const eligible = new Set(this.scenario.eligible_product_ids);
    this.products = products.filter((p) => eligible.has(p.id));
    await this.navigate("Scenario");
  }

  async refreshSession(): Promise<void> {
    this.session = await this.api.getSession(this.requireSessionId());
  }

  async navigate(nav: NavEntry): Promise<void> {
    this.state.activeNav = nav;
    this.state.focusedProductId = null; // nav clicks always leave the detail page
    await this.render();
  }

  async focusProduct(productId: string | null): Promise<void> {
    this.state.focusedProductId = productId;
    this.state.activeNav = "All items";
    if (productId) {
      // telemetry: the service records the product view against the session
      await this.api.getProduct(productId, this.requireSessionId());
    }
    await this.render();
  }

  // --- mutations (at most one in flight) --------------------------------

  private async mutate(fn: () => Promise<unknown>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.hideBanner();
    try {
      await fn();
      await this.refreshSession();
      await this.render();
    } catch (err) {
      if (err instanceof ApiError) {
        this.showBanner(messageFor(err.code, err.message));
        await this.render();
      } else {
        throw err;
      }
    } finally {
      this.busy = false;
    }
  }

  addHighlight(start: number, end: number): Promise<void> {
    return this.mutate(() => this.api.addHighlight(this.requireSessionId(), start, end));
  }

  removeHighlight(index: number): Promise<void> {
    return this.mutate(() => this.api.removeHighlight(this.requireSessionId(), index));
  }

  recordAssessment(productId: string, rating: string, decision: string): Promise<void> {
    return this.mutate(() =>
      this.api.recordAssessment(this.requireSessionId(), productId, rating, decision),
    );
  }

  setRecommendation(productId: string): Promise<void> {
    return this.mutate(() => this.api.setRecommendation(this.requireSessionId(), productId));
  }

  // --- rendering ---------------------------------------------------------

  private renderStartScreen(scenarios: ScenarioDoc[]): void {
    clear(this.shell);
    const userRef = el("input", {
      class: "user-ref",
      type: "text",
      value: "learner-001",
    }) as HTMLInputElement;
    const list = el("div", { class: "scenario-list" });
    scenarios.forEach((scenario, index) => {
      list.append(
        el(
          "div",
          { class: "scenario-card" },
          el("h3", {}, scenario.title),
          el("p", { class: "item-category" }, `Difficulty ${scenario.difficulty} / 5`),
          el(
            "button",
            {
              class: "scenario-start",
              "data-scenario-id": scenario.id,
              onclick: () => void this.startSession(userRef.value || "learner-001", scenario.id),
            },
            index === 0 ? "Start practice" : "Start scenario",
          ),
        ),
      );
    });
    this.shell.append(
      el("h1", {}, "Healthy Choice"),
      el("p", { class: "hint" }, "You are the health advisor. Pick a scenario to begin."),
      el("label", { class: "survey-row" }, "Participant reference", userRef),
      list,
      el("footer", { class: "footer" }, FOOTER_TEXT),
    );
  }

  async render(): Promise<void> {
    if (!this.session) return;
    clear(this.shell);

    const nav = el("nav", { class: "nav" });
    for (const entry of NAV_ENTRIES) {
      const button = el(
        "button",
        {
          class: entry === this.state.activeNav ? "nav-entry active" : "nav-entry",
          "data-nav": entry,
          onclick: () => void this.navigate(entry),
        },
        entry,
      );
      nav.append(button);
    }

    clear(this.main);
    this.main.append(this.banner);
    switch (this.state.activeNav) {
      case "Scenario":
        this.main.append(renderScenarioView(this));
        break;
      case "All items":
        this.main.append(renderItemsView(this));
        break;
      case "Selected items":
        this.main.append(renderSelectedView(this));
        break;
      case "Ask AI":
        this.main.append(renderAskAiView(this));
        break;
      case "Summary":
        this.main.append(await renderSummaryView(this));
        break;
    }

    this.shell.append(
      el("header", { class: "header" }, el("h1", {}, "Healthy Choice")),
      el("div", { class: "layout" }, nav, this.main, renderSidebar(this)),
      el("footer", { class: "footer" }, FOOTER_TEXT),
    );
  }

  private showBanner(message: string): void {
    this.banner.hidden = false;
    this.banner.textContent = message;
  }

  private hideBanner(): void {
    this.banner.hidden = true;
    this.banner.textContent = "";
  }
}
