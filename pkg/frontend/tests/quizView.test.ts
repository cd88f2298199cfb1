// Quiz curation flow: selection payloads, inline validation, session
// restart, and the scripted end-to-end run against the gateway goldens.

import { beforeEach, describe, expect, it } from "vitest";

import { QuizView } from "../src/quizView.js";
import type { QuizCreateResponse } from "../src/types.js";
import { FixtureTransport, fixtureJson, fixtureText, flushMicrotasks } from "./helpers.js";

const CREATE = fixtureJson<QuizCreateResponse>("quiz_create.json");
const SID = CREATE.session_id;
const GOLDEN_IDS = fixtureJson<{ candidate_ids: string[] }>(
  "quiz_golden_selection.json",
).candidate_ids;

function transportWithSession(): FixtureTransport {
  const transport = new FixtureTransport();
  transport.set("POST", "/quiz/sessions", fixtureText("quiz_create.json"), 201);
  transport.set(
    "POST",
    `/quiz/sessions/${SID}/selection`,
    fixtureText("quiz_selection.json"),
  );
  transport.set(
    "POST",
    `/quiz/sessions/${SID}/finalize`,
    fixtureText("quiz_finalize.json"),
  );
  return transport;
}

interface Mounted {
  view: QuizView;
  transport: FixtureTransport;
  downloads: { filename: string; text: string }[];
}

function mountView(transport = transportWithSession()): Mounted {
  const root = document.createElement("div");
  document.body.append(root);
  const downloads: { filename: string; text: string }[] = [];
  const view = new QuizView(root, transport.client(), {
    download: (filename, text) => downloads.push({ filename, text }),
  });
  return { view, transport, downloads };
}

function checkboxes(): HTMLInputElement[] {
  return [...document.querySelectorAll<HTMLInputElement>(".quiz-candidate-check")];
}

beforeEach(() => {
  document.body.replaceChildren();
});

describe("candidate review", () => {
  it("lists only validated candidates with answers", async () => {
    const { view } = mountView();
    await view.createSession("report-quality", []);
    const validated = CREATE.candidates.filter((c) => c.status === "validated");
    expect(checkboxes()).toHaveLength(validated.length);
    expect(document.querySelectorAll(".quiz-candidate-answer").length).toBe(
      validated.length,
    );
  });

  it("finalize request body contains exactly the toggled candidate ids", async () => {
    const { view, transport } = mountView();
    await view.createSession("report-quality", []);
    const boxes = checkboxes();
    const chosen = [boxes[0], boxes[2], boxes[4]];
    for (const box of chosen) box.click();
    await view.finalize();
    const selectionCalls = transport.requestsTo(`/quiz/sessions/${SID}/selection`);
    expect(selectionCalls).toHaveLength(1);
    expect(selectionCalls[0].body).toEqual({
      candidate_ids: chosen.map((box) => box.value),
    });
  });

  it("finalize with zero selected shows inline validation and sends nothing", async () => {
    const { view, transport } = mountView();
    await view.createSession("report-quality", []);
    const requestsBefore = transport.requests.length;
    await view.finalize();
    expect(document.querySelector(".error-banner")?.textContent).toContain(
      "Select at least one question",
    );
    expect(transport.requests.length).toBe(requestsBefore);
  });

  it("a 400 on a stale session offers a restart", async () => {
    const { view, transport } = mountView();
    await view.createSession("report-quality", []);
    transport.setJson(
      "POST",
      `/quiz/sessions/${SID}/selection`,
      { error: `session ${SID} already finalized` },
      400,
    );
    checkboxes()[0].click();
    await view.finalize();
    const banner = document.querySelector(".error-banner");
    expect(banner?.textContent).toContain("already finalized");
    expect(banner?.querySelector(".quiz-restart")).not.toBeNull();
  });
});

describe("end-to-end curation", () => {
  it("downloads a quiz byte-equal to the gateway golden", async () => {
    const { view, transport, downloads } = mountView();
    await view.createSession("report-quality", []);

    // Toggle exactly the golden candidate set through the UI.
    for (const box of checkboxes()) {
      if (GOLDEN_IDS.includes(box.value)) box.click();
    }
    expect(view.selectedIds()).toEqual(GOLDEN_IDS);

    await view.finalize();
    await flushMicrotasks();

    expect(downloads).toHaveLength(1);
    const golden = fixtureText("quiz_rendered_golden.md");
    expect(downloads[0].text).toBe(golden);
    expect(downloads[0].filename).toBe(`quiz-${SID}.md`);

    const selection = transport.requestsTo(`/quiz/sessions/${SID}/selection`);
    expect(selection[0].body).toEqual({ candidate_ids: GOLDEN_IDS });
    expect(transport.requestsTo(`/quiz/sessions/${SID}/finalize`)).toHaveLength(1);
  });
});
