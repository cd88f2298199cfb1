// Single-page shell: three tabs backed entirely by the gateway API.

import { ApiClient } from "./api.js";
import { NoveltyView } from "./noveltyView.js";
import { QaView } from "./qaView.js";
import { QuizView } from "./quizView.js";

const TABS = [
  { id: "qa", label: "Ask the reports" },
  { id: "quiz", label: "Quiz curation" },
  { id: "novelty", label: "Novelty explorer" },
] as const;

export function mountApp(root: HTMLElement, api = new ApiClient("")): void {
  root.replaceChildren();
  const nav = document.createElement("nav");
  nav.className = "tab-bar";
  const panes = new Map<string, HTMLElement>();

  for (const tab of TABS) {
    const button = document.createElement("button");
    button.className = "tab-button";
    button.dataset.tab = tab.id;
    button.textContent = tab.label;
    button.addEventListener("click", () => activate(tab.id));
    nav.append(button);

    const pane = document.createElement("section");
    pane.className = "tab-pane";
    pane.dataset.pane = tab.id;
    pane.hidden = true;
    panes.set(tab.id, pane);
  }

  root.append(nav, ...panes.values());

  const qa = new QaView(panes.get("qa")!, api);
  const quiz = new QuizView(panes.get("quiz")!, api);
  const novelty = new NoveltyView(panes.get("novelty")!, api);
  void qa;
  void quiz;

  let noveltyLoaded = false;
  function activate(tabId: string): void {
    for (const [id, pane] of panes) pane.hidden = id !== tabId;
    for (const button of nav.querySelectorAll<HTMLButtonElement>(".tab-button")) {
      button.classList.toggle("active", button.dataset.tab === tabId);
    }
    if (tabId === "novelty" && !noveltyLoaded) {
      noveltyLoaded = true;
      void novelty.loadGraph();
      void novelty.loadClusters();
    }
  }

  activate("qa");
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mountApp(document.getElementById("app")!);
}
