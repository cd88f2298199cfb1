// Quiz curation: pick a document and sections, review the generated
// candidates with their answers and source passages, toggle a selection,
// finalize, and download the rendered quiz. Finalizing with nothing
// selected is rejected inline without touching the network.

import { ApiClient, ApiError } from "./api.js";
import type { PassagePayload, QuizCandidate } from "./types.js";

export type Downloader = (filename: string, text: string) => void;

function browserDownload(filename: string, text: string): void {
  const blob = new Blob([text], { type: "text/markdown" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = filename;
  anchor.click();
  URL.revokeObjectURL(url);
}

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

export class QuizView {
  readonly root: HTMLElement;
  private docSelect!: HTMLSelectElement;
  private sectionInput!: HTMLInputElement;
  private candidateBox!: HTMLElement;
  private statusBox!: HTMLElement;
  private sessionId: string | null = null;
  private candidates: QuizCandidate[] = [];
  private download: Downloader;

  constructor(
    root: HTMLElement,
    private api: ApiClient,
    opts: { download?: Downloader } = {},
  ) {
    this.root = root;
    this.download = opts.download ?? browserDownload;
    this.build();
  }

  private build(): void {
    this.root.replaceChildren();
    const pickers = el("div", "quiz-pickers");
    this.docSelect = el("select", "quiz-doc-select");
    this.sectionInput = el("input", "quiz-sections");
    this.sectionInput.placeholder = "Section prefixes (comma-separated, optional)";
    const loadButton = el("button", "quiz-load", "Generate candidates");
    loadButton.addEventListener("click", () => void this.createSession());
    pickers.append(this.docSelect, this.sectionInput, loadButton);

    this.statusBox = el("div", "quiz-status");
    this.candidateBox = el("div", "quiz-candidates");
    this.root.append(pickers, this.statusBox, this.candidateBox);

    void this.api
      .documents()
      .then((payload) => {
        for (const doc of payload.documents) {
          if (doc.source !== "report") continue;
          const option = el("option", undefined, `${doc.id} - ${doc.title}`);
          option.value = doc.id;
          this.docSelect.append(option);
        }
      })
      .catch(() => undefined);
  }

  private setStatus(message: string, kind: "info" | "error" = "info"): void {
    this.statusBox.replaceChildren(
      el("p", kind === "error" ? "error-banner" : "quiz-info", message),
    );
  }

  async createSession(docId?: string, sections?: string[]): Promise<void> {
    const chosenDoc = docId ?? this.docSelect.value;
    if (!chosenDoc) {
      this.setStatus("Pick a document first.", "error");
      return;
    }
    const sectionPaths =
      sections ??
      this.sectionInput.value
        .split(",")
        .map((s) => s.trim())
        .filter(Boolean);
    this.setStatus("Generating candidates...");
    try {
      const created = await this.api.quizCreate(chosenDoc, sectionPaths);
      this.sessionId = created.session_id;
      this.candidates = created.candidates;
      const validated = this.candidates.filter((c) => c.status === "validated");
      this.setStatus(
        `Session ${created.session_id}: ${validated.length} of ` +
          `${this.candidates.length} candidates passed validation.`,
      );
      await this.renderCandidates();
    } catch (err) {
      this.setStatus(String((err as Error).message ?? err), "error");
    }
  }

  private async renderCandidates(): Promise<void> {
    this.candidateBox.replaceChildren();
    const passageCache = new Map<string, PassagePayload>();
    const list = el("div", "quiz-candidate-list");
    for (const candidate of this.candidates) {
      if (candidate.status !== "validated") continue;
      const row = el("div", "quiz-candidate");
      const checkbox = el("input", "quiz-candidate-check");
      checkbox.type = "checkbox";
      checkbox.value = candidate.id;
      const label = el("label");
      label.append(
        checkbox,
        el("span", "quiz-candidate-question", ` ${candidate.question}`),
      );
      const answer = el("div", "quiz-candidate-answer", `Answer: ${candidate.answer}`);
      const details = el("details", "quiz-candidate-passage");
      details.append(el("summary", undefined, `Passage ${candidate.passage_id}`));
      const passageText = el("blockquote");
      details.addEventListener("toggle", () => {
        if (!details.open || passageText.textContent) return;
        const cached = passageCache.get(candidate.passage_id);
        if (cached) {
          passageText.textContent = cached.text;
          return;
        }
        void this.api.passage(candidate.passage_id).then((payload) => {
          passageCache.set(candidate.passage_id, payload);
          passageText.textContent = payload.text;
        });
      });
      details.append(passageText);
      row.append(label, answer, details);
      list.append(row);
    }
    const finalize = el("button", "quiz-finalize", "Finalize and download");
    finalize.addEventListener("click", () => void this.finalize());
    this.candidateBox.append(list, finalize);
  }

  selectedIds(): string[] {
    return [...this.candidateBox.querySelectorAll<HTMLInputElement>(".quiz-candidate-check")]
      .filter((box) => box.checked)
      .map((box) => box.value);
  }

  async finalize(): Promise<void> {
    const chosen = this.selectedIds();
    if (!this.sessionId) {
      this.setStatus("Generate candidates first.", "error");
      return;
    }
    if (chosen.length === 0) {
      // Inline validation: no request leaves the page.
      this.setStatus("Select at least one question before finalizing.", "error");
      return;
    }
    try {
      await this.api.quizSelect(this.sessionId, chosen);
      const finalized = await this.api.quizFinalize(this.sessionId);
      this.download(`quiz-${finalized.session_id}.md`, finalized.rendered);
      this.setStatus(
        `Quiz with ${finalized.quiz.trainee_section.length} questions downloaded.`,
      );
    } catch (err) {
      if (err instanceof ApiError && err.status === 400) {
        this.offerRestart(err.message);
        return;
      }
      this.setStatus(String((err as Error).message ?? err), "error");
    }
  }

  private offerRestart(message: string): void {
    this.statusBox.replaceChildren();
    const banner = el("div", "error-banner");
    banner.append(el("span", undefined, `${message} - `));
    const restart = el("button", "quiz-restart", "Restart session");
    restart.addEventListener("click", () => void this.createSession());
    banner.append(restart);
    this.statusBox.append(banner);
  }
}
