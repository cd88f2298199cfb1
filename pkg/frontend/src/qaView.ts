// QA console: question box, predefined questions, snippet prompts, and the
// answer panel. The top answer is highlighted inside its passage using the
// API's character offsets; low-confidence answers stay out of the DOM until
// the user explicitly clicks the reveal control.

import { ApiClient, RequestGate } from "./api.js";
import type { AnswerSpan, PassagePayload, QAResult } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function isSpan(value: unknown): value is AnswerSpan {
  const s = value as AnswerSpan;
  return (
    !!s &&
    typeof s.text === "string" &&
    typeof s.passage_id === "string" &&
    typeof s.doc_id === "string" &&
    Number.isInteger(s.char_start) &&
    Number.isInteger(s.char_end) &&
    typeof s.score === "number"
  );
}

function validateResult(payload: unknown): QAResult {
  const p = payload as QAResult;
  if (
    !p ||
    typeof p.question !== "string" ||
    !Array.isArray(p.primary_answers) ||
    !Array.isArray(p.low_confidence_answers) ||
    typeof p.no_answer !== "boolean" ||
    !p.primary_answers.every(isSpan) ||
    !p.low_confidence_answers.every(isSpan)
  ) {
    throw new Error("malformed QA payload");
  }
  return p;
}

export class QaView {
  readonly root: HTMLElement;
  private gate = new RequestGate();
  private questionInput!: HTMLInputElement;
  private resultBox!: HTMLElement;

  constructor(
    root: HTMLElement,
    private api: ApiClient,
  ) {
    this.root = root;
    this.build();
  }

  private build(): void {
    this.root.replaceChildren();
    const form = el("div", "qa-form");
    this.questionInput = el("input", "qa-question");
    this.questionInput.placeholder = "Ask about the report collection...";
    const askButton = el("button", "qa-ask", "Ask");
    askButton.addEventListener("click", () => void this.ask());
    this.questionInput.addEventListener("keydown", (event) => {
      if (event.key === "Enter") void this.ask();
    });
    form.append(this.questionInput, askButton);

    const prompts = el("div", "qa-prompts");
    const predefined = el("div", "qa-predefined");
    predefined.append(el("h3", undefined, "Predefined questions"));
    const list = el("ul", "qa-predefined-list");
    predefined.append(list);
    void this.api.predefinedQuestions().then((payload) => {
      for (const question of payload.questions) {
        const item = el("li");
        const link = el("a", "qa-predefined-item", question);
        link.href = "#";
        link.addEventListener("click", (event) => {
          event.preventDefault();
          this.questionInput.value = question;
          void this.ask();
        });
        item.append(link);
        list.append(item);
      }
    }).catch(() => undefined);

    const snippetButton = el("button", "qa-snippet-button", "Show me a random snippet");
    const snippetBox = el("div", "qa-snippets");
    snippetButton.addEventListener("click", () => {
      void this.api.snippets(1).then((payload) => {
        snippetBox.replaceChildren();
        for (const snippet of payload.snippets) {
          const card = el("blockquote", "qa-snippet", snippet.text);
          card.title = snippet.passage_id;
          snippetBox.append(card);
        }
      });
    });
    prompts.append(predefined, snippetButton, snippetBox);

    this.resultBox = el("div", "qa-result");
    this.root.append(form, prompts, this.resultBox);
  }

  async ask(): Promise<void> {
    const question = this.questionInput.value.trim();
    if (!question) return;
    const ticket = this.gate.next();
    this.resultBox.replaceChildren(el("p", "qa-loading", "Searching..."));
    try {
      const result = await this.api.ask(question);
      const passages = await this.fetchPassages(result);
      if (!this.gate.isCurrent(ticket)) return; // overtaken by a newer ask
      this.renderResult(result, passages);
    } catch (err) {
      if (!this.gate.isCurrent(ticket)) return;
      this.renderError(String((err as Error).message ?? err));
    }
  }

  private async fetchPassages(result: QAResult): Promise<Map<string, PassagePayload>> {
    const ids = new Set<string>();
    for (const span of [...result.primary_answers, ...result.low_confidence_answers]) {
      ids.add(span.passage_id);
    }
    const out = new Map<string, PassagePayload>();
    await Promise.all(
      [...ids].map(async (pid) => {
        out.set(pid, await this.api.passage(pid));
      }),
    );
    return out;
  }

  renderError(message: string): void {
    this.resultBox.replaceChildren(el("div", "error-banner", message));
  }

  /** Render a QA payload; on malformed input show the error banner only. */
  renderResult(payload: unknown, passages: Map<string, PassagePayload>): void {
    let result: QAResult;
    let fragment: DocumentFragment;
    try {
      result = validateResult(payload);
      fragment = this.buildResult(result, passages);
    } catch (err) {
      this.renderError(String((err as Error).message ?? err));
      return;
    }
    this.resultBox.replaceChildren(fragment);
  }

  private buildResult(
    result: QAResult,
    passages: Map<string, PassagePayload>,
  ): DocumentFragment {
    const fragment = document.createDocumentFragment();

    if (result.no_answer) {
      fragment.append(el("p", "qa-no-answer", "No answer was found for this question."));
      return fragment;
    }

    const [top, ...others] = result.primary_answers;
    if (top) {
      fragment.append(this.buildAnswerCard(top, passages, "qa-top-answer"));
      if (others.length) {
        const details = el("details", "qa-other-answers");
        details.append(el("summary", undefined, "Other possible answers"));
        for (const span of others) {
          details.append(this.buildAnswerCard(span, passages, "qa-other-answer"));
        }
        fragment.append(details);
      }
    }

    const low = result.low_confidence_answers;
    if (low.length) {
      const box = el("div", "qa-low-confidence");
      const note = top
        ? `${low.length} low-confidence answer(s) below the ${result.threshold} threshold.`
        : `Only low-confidence answers were found (score below ${result.threshold}).`;
      box.append(el("p", "qa-low-warning", note));
      const reveal = el("button", "qa-reveal", "Show low-confidence answers");
      // The list enters the DOM only on an explicit user click.
      reveal.addEventListener("click", () => {
        reveal.remove();
        for (const span of low) {
          box.append(this.buildAnswerCard(span, passages, "qa-low-answer"));
        }
      });
      box.append(reveal);
      fragment.append(box);
    }
    return fragment;
  }

  private buildAnswerCard(
    span: AnswerSpan,
    passages: Map<string, PassagePayload>,
    className: string,
  ): HTMLElement {
    const card = el("div", `qa-answer ${className}`);
    const header = el("div", "qa-answer-header");
    header.append(
      el("span", "qa-answer-text", span.text),
      el("span", "qa-answer-score", span.score.toFixed(2)),
    );
    const link = el("a", "qa-doc-link", span.doc_id);
    link.href = `/documents/${encodeURIComponent(span.doc_id)}`;
    header.append(link);
    card.append(header);

    const passage = passages.get(span.passage_id);
    if (passage) {
      card.append(buildHighlightedPassage(passage, span));
    }
    return card;
  }
}

/**
 * The highlight is sliced strictly from the API's passage text and offsets;
 * the marked text is byte-for-byte passage.text[char_start..char_end).
 */
export function buildHighlightedPassage(
  passage: PassagePayload,
  span: AnswerSpan,
): HTMLElement {
  const box = document.createElement("p");
  box.className = "qa-passage";
  box.dataset.passageId = passage.passage_id;
  const before = document.createTextNode(passage.text.slice(0, span.char_start));
  const mark = document.createElement("mark");
  mark.className = "qa-highlight";
  mark.textContent = passage.text.slice(span.char_start, span.char_end);
  const after = document.createTextNode(passage.text.slice(span.char_end));
  box.append(before, mark, after);
  return box;
}
