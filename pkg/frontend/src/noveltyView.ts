// Novelty explorer: idea picker, score badge, similar-document lists with
// shared-concept chips, the force-layout similarity graph, and the cluster
// table. Every displayed number comes from an API field.

import { ApiClient, RequestGate } from "./api.js";
import { renderGraph } from "./graph.js";
import type { ClustersPayload, GraphPayload, NoveltyResult, SimilarDocument } from "./types.js";

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

export class NoveltyView {
  readonly root: HTMLElement;
  private gate = new RequestGate();
  private ideaSelect!: HTMLSelectElement;
  private scoreBox!: HTMLElement;
  private graphBox!: HTMLElement;
  private clusterBox!: HTMLElement;

  constructor(
    root: HTMLElement,
    private api: ApiClient,
  ) {
    this.root = root;
    this.build();
  }

  private build(): void {
    this.root.replaceChildren();
    const pickers = el("div", "novelty-pickers");
    this.ideaSelect = el("select", "novelty-idea-select");
    const scoreButton = el("button", "novelty-score-button", "Score idea");
    scoreButton.addEventListener("click", () => void this.score());
    pickers.append(this.ideaSelect, scoreButton);

    this.scoreBox = el("div", "novelty-score-box");
    this.graphBox = el("div", "novelty-graph-box");
    this.clusterBox = el("div", "novelty-cluster-box");
    this.root.append(pickers, this.scoreBox, this.graphBox, this.clusterBox);

    void this.api
      .documents()
      .then((payload) => {
        for (const doc of payload.documents) {
          if (doc.source !== "idea") continue;
          const option = el("option", undefined, `${doc.id} - ${doc.title}`);
          option.value = doc.id;
          this.ideaSelect.append(option);
        }
      })
      .catch(() => undefined);
  }

  async score(ideaId?: string): Promise<void> {
    const chosen = ideaId ?? this.ideaSelect.value;
    if (!chosen) return;
    const ticket = this.gate.next();
    try {
      const result = await this.api.novelty(chosen);
      if (!this.gate.isCurrent(ticket)) return;
      this.renderScore(result);
    } catch (err) {
      if (!this.gate.isCurrent(ticket)) return;
      this.scoreBox.replaceChildren(
        el("div", "error-banner", String((err as Error).message ?? err)),
      );
    }
  }

  renderScore(result: NoveltyResult): void {
    this.scoreBox.replaceChildren();
    const header = el("div", "novelty-header");
    const badge = el("span", "novelty-badge", result.noveltyScore.toFixed(1));
    header.append(
      el("span", "novelty-idea-id", result.idea_id),
      badge,
      el("span", "novelty-badge-caption", "novelty score (0-100; higher = more novel)"),
    );
    this.scoreBox.append(header);
    this.scoreBox.append(
      this.similarList("Similar ideas", result.similarIdeas),
      this.similarList("Similar studies and projects", result.similarProjects),
    );
  }

  private similarList(heading: string, entries: SimilarDocument[]): HTMLElement {
    const box = el("div", "novelty-similar");
    box.append(el("h3", undefined, heading));
    if (!entries.length) {
      box.append(el("p", "novelty-similar-empty", "None found."));
      return box;
    }
    const list = el("ul", "novelty-similar-list");
    for (const entry of entries) {
      const item = el("li", "novelty-similar-item");
      item.append(
        el("span", "novelty-similar-doc", entry.doc_id),
        el("span", "novelty-similar-sim", entry.sim.toFixed(3)),
      );
      const chips = el("span", "novelty-chips");
      for (const concept of entry.shared_concepts) {
        chips.append(el("span", "novelty-chip", concept));
      }
      item.append(chips);
      list.append(item);
    }
    box.append(list);
    return box;
  }

  async loadGraph(minSim?: number): Promise<void> {
    const payload = await this.api.graph(minSim);
    this.renderGraphPayload(payload);
  }

  renderGraphPayload(payload: GraphPayload): void {
    renderGraph(this.graphBox, payload);
  }

  async loadClusters(): Promise<void> {
    const payload = await this.api.clusters();
    this.renderClusters(payload);
  }

  renderClusters(payload: ClustersPayload): void {
    this.clusterBox.replaceChildren();
    const table = el("table", "novelty-clusters");
    const head = el("tr");
    head.append(el("th", undefined, "Ideas"), el("th", undefined, "Top concepts in cluster"));
    table.append(head);
    for (const row of payload.clusters) {
      const tr = el("tr", "novelty-cluster-row");
      tr.append(
        el("td", "novelty-cluster-size", String(row.size)),
        el("td", "novelty-cluster-topics", row.top_concepts.map(([c]) => c).join(", ")),
      );
      table.append(tr);
    }
    this.clusterBox.append(table);
    this.clusterBox.append(
      el("p", "novelty-modularity", `Partition modularity: ${payload.modularity.toFixed(3)}`),
    );
  }
}
