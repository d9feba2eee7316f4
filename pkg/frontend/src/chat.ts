// Chat box shared by the product page and the Ask AI page. One transcript
// per session: a product page only adds a focus for context assembly.

import { ApiError } from "./api.js";
import type { App } from "./app.js";
import { clear, el } from "./dom.js";
import { messageFor } from "./errors.js";

export class ChatWidget {
  readonly root: HTMLElement;
  private log: HTMLElement;
  private input: HTMLInputElement;
  private askButton: HTMLButtonElement;
  private error: HTMLElement;
  private pending = false;

  constructor(
    private app: App,
    private focusProductId?: string,
  ) {
    this.log = el("div", { class: "chat-log" });
    this.input = el("input", {
      class: "chat-input",
      type: "text",
      placeholder: "Please enter a question",
    });
    this.askButton = el("button", { class: "chat-ask", onclick: () => void this.ask() }, "Ask");
    const clearButton = el(
      "button",
      { class: "chat-clear", onclick: () => void this.clearRecords() },
      "Clear records",
    );
    this.error = el("div", { class: "inline-error", hidden: true });
    this.root = el(
      "section",
      { class: "chat" },
      el("h3", {}, "Ask AI"),
      this.log,
      this.error,
      el("div", { class: "chat-controls" }, this.input, this.askButton, clearButton),
    );
  }

  async load(): Promise<void> {
    const transcript = await this.app.api.getChat(this.app.requireSessionId());
    this.renderExchanges(transcript.exchanges.map((e) => [e.question, e.answer]));
  }

  private renderExchanges(pairs: [string, string][]): void {
    clear(this.log);
    for (const [question, answer] of pairs) {
      this.log.append(
        el("div", { class: "chat-q" }, question),
        el("div", { class: "chat-a" }, answer),
      );
    }
  }

  private async ask(): Promise<void> {
    const question = this.input.value;
    if (!question.trim() || this.pending) return;
    this.pending = true;
    this.askButton.disabled = true; // one in-flight ask per session
    this.error.hidden = true;
    try {
      await this.app.api.ask(this.app.requireSessionId(), question, this.focusProductId);
      this.input.value = "";
      await this.load();
    } catch (err) {
      this.showError(err);
    } finally {
      this.pending = false;
      this.askButton.disabled = false;
    }
  }

  private async clearRecords(): Promise<void> {
    try {
      await this.app.api.clearChat(this.app.requireSessionId());
      this.renderExchanges([]);
    } catch (err) {
      this.showError(err);
    }
  }

  private showError(err: unknown): void {
    this.error.hidden = false;
    this.error.textContent =
      err instanceof ApiError ? messageFor(err.code, err.message) : String(err);
  }
}
