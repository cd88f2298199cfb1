// Typed client over the gateway HTTP API. Every view goes through this
// module; the UI never computes scores or spans itself.

import type {
  ClustersPayload,
  DocumentList,
  GraphPayload,
  NoveltyResult,
  PassagePayload,
  PredefinedQuestions,
  QAResult,
  QuizCreateResponse,
  QuizFinalizeResponse,
  SnippetsPayload,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

/**
 * Monotonic sequence gate: in-flight responses that were overtaken by a
 * newer request are discarded by the views.
 */
export class RequestGate {
  private seq = 0;

  next(): number {
    this.seq += 1;
    return this.seq;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.seq;
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    const body = await resp.text();
    if (!resp.ok) {
      let message = `HTTP ${resp.status}`;
      try {
        const parsed = JSON.parse(body);
        if (parsed && typeof parsed.error === "string") message = parsed.error;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(resp.status, message);
    }
    return JSON.parse(body) as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  ask(question: string, opts: { k?: number; scope?: string; threshold?: number } = {}): Promise<QAResult> {
    return this.post<QAResult>("/ask", { question, ...opts });
  }

  passage(passageId: string): Promise<PassagePayload> {
    return this.request<PassagePayload>(`/passages/${encodeURIComponent(passageId)}`);
  }

  documents(): Promise<DocumentList> {
    return this.request<DocumentList>("/documents");
  }

  snippets(n: number, seed?: number): Promise<SnippetsPayload> {
    const params = new URLSearchParams({ n: String(n) });
    if (seed !== undefined) params.set("seed", String(seed));
    return this.request<SnippetsPayload>(`/passages/snippets?${params}`);
  }

  predefinedQuestions(): Promise<PredefinedQuestions> {
    return this.request<PredefinedQuestions>("/questions/predefined");
  }

  quizCreate(docId: string, sectionPaths: string[] = []): Promise<QuizCreateResponse> {
    return this.post<QuizCreateResponse>("/quiz/sessions", {
      doc_id: docId,
      section_paths: sectionPaths,
    });
  }

  quizSelect(sessionId: string, candidateIds: string[]): Promise<{ session_id: string; selection: string[] }> {
    return this.post(`/quiz/sessions/${encodeURIComponent(sessionId)}/selection`, {
      candidate_ids: candidateIds,
    });
  }

  quizFinalize(sessionId: string): Promise<QuizFinalizeResponse> {
    return this.post<QuizFinalizeResponse>(
      `/quiz/sessions/${encodeURIComponent(sessionId)}/finalize`,
      {},
    );
  }

  novelty(ideaId: string): Promise<NoveltyResult> {
    return this.request<NoveltyResult>(`/novelty/${encodeURIComponent(ideaId)}`);
  }

  graph(minSim?: number): Promise<GraphPayload> {
    const query = minSim === undefined ? "" : `?min_sim=${minSim}`;
    return this.request<GraphPayload>(`/graph${query}`);
  }

  clusters(seed?: number): Promise<ClustersPayload> {
    const query = seed === undefined ? "" : `?seed=${seed}`;
    return this.request<ClustersPayload>(`/clusters${query}`);
  }

  feedback(feature: string, payload: Record<string, unknown>): Promise<unknown> {
    return this.post("/feedback", { feature, payload });
  }
}
