// QA console tests: low-confidence gating, highlight fidelity against the
// gateway goldens, malformed-payload handling, and stale-response discard.

import { beforeEach, describe, expect, it } from "vitest";

import { QaView, buildHighlightedPassage } from "../src/qaView.js";
import type { PassagePayload, QAResult } from "../src/types.js";
import { FixtureTransport, fixtureJson, fixtureText, flushMicrotasks } from "./helpers.js";

function passageMap(): Map<string, PassagePayload> {
  const raw = fixtureJson<Record<string, PassagePayload>>("passages.json");
  return new Map(Object.entries(raw));
}

function mountView(transport = new FixtureTransport()): QaView {
  const root = document.createElement("div");
  document.body.append(root);
  return new QaView(root, transport.client());
}

beforeEach(() => {
  document.body.replaceChildren();
});

describe("low-confidence gating", () => {
  it("renders low-confidence answers only after an explicit click event", () => {
    const view = mountView();
    const payload = fixtureJson<QAResult>("qa_low_confidence.json");
    expect(payload.primary_answers).toHaveLength(0);
    expect(payload.low_confidence_answers.length).toBeGreaterThan(0);

    view.renderResult(payload, passageMap());

    // Nothing from the low-confidence list may be in the DOM yet.
    expect(document.querySelectorAll(".qa-low-answer")).toHaveLength(0);
    const texts = payload.low_confidence_answers.map((s) => s.text);
    for (const text of texts) {
      expect(document.body.textContent).not.toContain(text);
    }
    const warning = document.querySelector(".qa-low-warning");
    expect(warning?.textContent).toContain("low-confidence");

    const reveal = document.querySelector<HTMLButtonElement>(".qa-reveal");
    expect(reveal).not.toBeNull();
    reveal!.dispatchEvent(new MouseEvent("click", { bubbles: true }));

    const cards = document.querySelectorAll(".qa-low-answer");
    expect(cards).toHaveLength(payload.low_confidence_answers.length);
    expect(document.body.textContent).toContain(texts[0]);
  });

  it("keeps the reveal behind a click even when primary answers exist", () => {
    const view = mountView();
    const payload = fixtureJson<QAResult>("qa_primary.json");
    expect(payload.low_confidence_answers.length).toBeGreaterThan(0);
    view.renderResult(payload, passageMap());
    expect(document.querySelectorAll(".qa-low-answer")).toHaveLength(0);
    document
      .querySelector<HTMLButtonElement>(".qa-reveal")!
      .dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(document.querySelectorAll(".qa-low-answer")).toHaveLength(
      payload.low_confidence_answers.length,
    );
  });
});

describe("highlight fidelity", () => {
  const goldens = ["qa_primary.json", "qa_low_confidence.json"];

  it("marks exactly passage.text[char_start..char_end] for every golden span", () => {
    const passages = passageMap();
    for (const name of goldens) {
      const payload = fixtureJson<QAResult>(name);
      const spans = [...payload.primary_answers, ...payload.low_confidence_answers];
      expect(spans.length).toBeGreaterThan(0);
      for (const span of spans) {
        const passage = passages.get(span.passage_id);
        expect(passage, `missing passage fixture ${span.passage_id}`).toBeDefined();
        const node = buildHighlightedPassage(passage!, span);
        const mark = node.querySelector("mark.qa-highlight");
        expect(mark).not.toBeNull();
        expect(mark!.textContent).toBe(
          passage!.text.slice(span.char_start, span.char_end),
        );
        // Reassembling the DOM text reproduces the passage exactly.
        expect(node.textContent).toBe(passage!.text);
      }
    }
  });

  it("shows the top answer highlighted with score and document link", () => {
    const view = mountView();
    const payload = fixtureJson<QAResult>("qa_primary.json");
    view.renderResult(payload, passageMap());
    const top = document.querySelector(".qa-top-answer");
    expect(top).not.toBeNull();
    const first = payload.primary_answers[0];
    expect(top!.querySelector(".qa-answer-text")!.textContent).toBe(first.text);
    expect(top!.querySelector(".qa-answer-score")!.textContent).toBe(
      first.score.toFixed(2),
    );
    expect(top!.querySelector(".qa-doc-link")!.getAttribute("href")).toContain(
      first.doc_id,
    );
    expect(top!.querySelector("mark.qa-highlight")).not.toBeNull();
  });
});

describe("degenerate payloads", () => {
  it("shows the no-answer message", () => {
    const view = mountView();
    view.renderResult(fixtureJson<QAResult>("qa_no_answer.json"), new Map());
    expect(document.querySelector(".qa-no-answer")).not.toBeNull();
  });

  it("malformed payload produces an error banner and no partial render", () => {
    const view = mountView();
    view.renderResult({ question: 1, primary_answers: "nope" }, new Map());
    expect(document.querySelector(".error-banner")).not.toBeNull();
    expect(document.querySelector(".qa-answer")).toBeNull();
    expect(document.querySelector(".qa-low-confidence")).toBeNull();
  });
});

describe("ask flow", () => {
  it("runs the full ask path: fetch result, fetch passages, render", async () => {
    const transport = new FixtureTransport();
    transport.set("POST", "/ask", fixtureText("qa_primary.json"));
    const view = mountView(transport);
    const input = document.querySelector<HTMLInputElement>(".qa-question")!;
    input.value = "Which launcher will ATHENA use?";
    await view.ask();
    await flushMicrotasks();
    const payload = fixtureJson<QAResult>("qa_primary.json");
    const top = document.querySelector(".qa-top-answer .qa-answer-text");
    expect(top?.textContent).toBe(payload.primary_answers[0].text);
    // Passage fetches happened for each referenced passage id.
    const passageCalls = transport.requests.filter((r) =>
      r.path.startsWith("/passages/"),
    );
    expect(passageCalls.length).toBeGreaterThan(0);
  });
});

describe("request sequencing", () => {
  it("discards a stale response that resolves after a newer one", async () => {
    const transport = new FixtureTransport();
    let releaseFirst!: () => void;
    const slowBody = fixtureJson<QAResult>("qa_low_confidence.json");
    const fastBody = fixtureJson<QAResult>("qa_no_answer.json");
    const baseFetch = transport.fetch;
    let call = 0;
    transport.fetch = (input, init) => {
      if (input === "/ask") {
        call += 1;
        if (call === 1) {
          return new Promise((resolve) => {
            releaseFirst = () =>
              resolve(
                new Response(JSON.stringify(slowBody), {
                  status: 200,
                  headers: { "content-type": "application/json" },
                }),
              );
          });
        }
        return Promise.resolve(
          new Response(JSON.stringify(fastBody), {
            status: 200,
            headers: { "content-type": "application/json" },
          }),
        );
      }
      return baseFetch(input, init);
    };
    const view = mountView(transport);
    const input = document.querySelector<HTMLInputElement>(".qa-question")!;
    input.value = "first question";
    const first = view.ask();
    input.value = "second question";
    const second = view.ask();
    await second;
    releaseFirst();
    await first;
    await flushMicrotasks();
    // The newer (no-answer) result must win; the stale one is dropped.
    expect(document.querySelector(".qa-no-answer")).not.toBeNull();
    expect(document.querySelector(".qa-low-confidence")).toBeNull();
  });
});
