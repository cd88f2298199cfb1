// Payload shapes mirroring the gateway's JSON bodies.

export interface AnswerSpan {
  text: string;
  passage_id: string;
  doc_id: string;
  char_start: number;
  char_end: number;
  score: number;
}

export interface QAResult {
  question: string;
  primary_answers: AnswerSpan[];
  low_confidence_answers: AnswerSpan[];
  no_answer: boolean;
  threshold: number;
}

export interface PassagePayload {
  passage_id: string;
  doc_id: string;
  section_path: string[];
  text: string;
}

export interface DocumentSummary {
  id: string;
  source: string;
  title: string;
  date: string | null;
}

export interface DocumentList {
  documents: DocumentSummary[];
}

export interface Snippet {
  passage_id: string;
  doc_id: string;
  text: string;
}

export interface SnippetsPayload {
  snippets: Snippet[];
  seed: number | null;
}

export interface PredefinedQuestions {
  questions: string[];
}

export interface QuizCandidate {
  id: string;
  question: string;
  answer: string;
  passage_id: string;
  strategy: string;
  status: string;
  validation_score: number;
  seed_type: string;
}

export interface QuizCreateResponse {
  session_id: string;
  candidates: QuizCandidate[];
}

export interface QuizFinalizeResponse {
  session_id: string;
  quiz: {
    title: string;
    trainee_section: string[];
    trainer_section: { question: string; answer: string; passage_id: string; passage: string }[];
  };
  rendered: string;
}

export interface SimilarDocument {
  doc_id: string;
  sim: number;
  shared_concepts: string[];
}

export interface NoveltyResult {
  idea_id: string;
  noveltyCalculated: boolean;
  noveltyScore: number;
  similarIdeas: SimilarDocument[];
  similarProjects: SimilarDocument[];
}

export interface GraphNode {
  id: string;
  kind: string;
  label: string;
}

export interface GraphEdge {
  a: string;
  b: string;
  weight: number;
}

export interface GraphPayload {
  nodes: GraphNode[];
  edges: GraphEdge[];
  min_sim: number;
}

export interface ClusterRow {
  community: number;
  size: number;
  top_concepts: [string, number][];
}

export interface ClustersPayload {
  clusters: ClusterRow[];
  modularity: number;
  seed: number;
}
