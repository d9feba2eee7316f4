// Typed client for the service's JSON API. Every request the UI makes goes
// through this module, so the allowed-route table below is authoritative for
// the traffic-interception test.

export interface HighlightDoc {
  start: number;
  end: number;
  extracted: string;
}

export interface AssessmentDoc {
  product_id: string;
  rating: string;
  decision: string;
  at: string;
}

export interface SessionDoc {
  id: string;
  user_ref: string;
  scenario_id: string;
  phase: string;
  highlights: HighlightDoc[];
  assessments: Record<string, AssessmentDoc>;
  selected_product_ids: string[];
  recommendation: string | null;
  justification: string | null;
  created_at: string;
  finalized_at: string | null;
}

export interface ScenarioDoc {
  id: string;
  title: string;
  narrative: string;
  client_profile: { key: string; value: string }[];
  eligible_product_ids: string[];
  difficulty: number;
}

export interface NutrientDoc {
  key: string;
  amount: number;
  unit: string;
  percent_dv?: number;
}

export interface ProductDoc {
  id: string;
  name: string;
  category: string;
  serving: { amount: number; unit: string; description?: string };
  nutrition: NutrientDoc[];
  ingredients: string[];
  claims: string[];
  image_refs: string[];
}

export interface ComparisonRowDoc {
  key: string;
  unit: string;
  values: (number | null)[];
  min_marks: boolean[];
  max_marks: boolean[];
}

export interface ComparisonTableDoc {
  product_ids: string[];
  basis: string;
  rows: ComparisonRowDoc[];
}

export interface ExchangeDoc {
  question: string;
  answer: string;
  provider_id: string;
  at: string;
  context_digest: string;
}

export interface TranscriptDoc {
  session_id: string;
  exchanges: ExchangeDoc[];
}

export interface SummaryDoc {
  highlights: HighlightDoc[];
  recommendation_product: ProductDoc;
  justification: string | null;
}

export class ApiError extends Error {
  constructor(
    public code: string,
    public status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

// Method + path pattern for every route the UI is allowed to call.
export const ALLOWED_ROUTES: [string, RegExp][] = [
  ["GET", /^\/api\/scenarios$/],
  ["GET", /^\/api\/scenarios\/[^/]+$/],
  ["GET", /^\/api\/products(\?.*)?$/],
  ["GET", /^\/api\/products\/[^/]+(\?.*)?$/],
  ["POST", /^\/api\/sessions$/],
  ["GET", /^\/api\/sessions\/[^/]+$/],
  ["POST", /^\/api\/sessions\/[^/]+\/highlights$/],
  ["DELETE", /^\/api\/sessions\/[^/]+\/highlights\/\d+$/],
  ["POST", /^\/api\/sessions\/[^/]+\/assessments$/],
  ["GET", /^\/api\/sessions\/[^/]+\/selected$/],
  ["POST", /^\/api\/sessions\/[^/]+\/compare$/],
  ["POST", /^\/api\/sessions\/[^/]+\/ask$/],
  ["GET", /^\/api\/sessions\/[^/]+\/chat$/],
  ["DELETE", /^\/api\/sessions\/[^/]+\/chat$/],
  ["POST", /^\/api\/sessions\/[^/]+\/recommendation$/],
  ["POST", /^\/api\/sessions\/[^/]+\/justification$/],
  ["POST", /^\/api\/sessions\/[^/]+\/finalize$/],
  ["GET", /^\/api\/sessions\/[^/]+\/summary$/],
  ["POST", /^\/api\/surveys$/],
  ["GET", /^\/healthz$/],
];

export function isAllowedRoute(method: string, path: string): boolean {
  return ALLOWED_ROUTES.some(([m, re]) => m === method && re.test(path));
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private baseUrl = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    const text = await response.text();
    const doc = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new ApiError(doc.code ?? "http_error", response.status, doc.message ?? text);
    }
    return doc as T;
  }

  getScenarios(): Promise<{ scenarios: ScenarioDoc[] }> {
    return this.request("GET", "/api/scenarios");
  }

  getScenario(id: string): Promise<ScenarioDoc> {
    return this.request("GET", `/api/scenarios/${id}`);
  }

  getProducts(category?: string, q?: string): Promise<{ products: ProductDoc[] }> {
    const params = new URLSearchParams();
    if (category) params.set("category", category);
    if (q) params.set("q", q);
    const suffix = params.toString() ? `?${params}` : "";
    return this.request("GET", `/api/products${suffix}`);
  }

  getProduct(id: string, sessionId?: string): Promise<ProductDoc> {
    const suffix = sessionId ? `?session_id=${encodeURIComponent(sessionId)}` : "";
    return this.request("GET", `/api/products/${id}${suffix}`);
  }

  createSession(userRef: string, scenarioId: string): Promise<SessionDoc> {
    return this.request("POST", "/api/sessions", { user_ref: userRef, scenario_id: scenarioId });
  }

  getSession(id: string): Promise<SessionDoc> {
    return this.request("GET", `/api/sessions/${id}`);
  }

  addHighlight(sessionId: string, start: number, end: number): Promise<SessionDoc> {
    return this.request("POST", `/api/sessions/${sessionId}/highlights`, { start, end });
  }

  removeHighlight(sessionId: string, index: number): Promise<SessionDoc> {
    return this.request("DELETE", `/api/sessions/${sessionId}/highlights/${index}`);
  }

  recordAssessment(
    sessionId: string,
    productId: string,
    rating: string,
    decision: string,
  ): Promise<SessionDoc> {
    return this.request("POST", `/api/sessions/${sessionId}/assessments`, {
      product_id: productId,
      rating,
      decision,
    });
  }

  getSelected(sessionId: string): Promise<{ product_ids: string[] }> {
    return this.request("GET", `/api/sessions/${sessionId}/selected`);
  }

  compare(sessionId: string, productIds: string[], basis: string): Promise<ComparisonTableDoc> {
    return this.request("POST", `/api/sessions/${sessionId}/compare`, {
      product_ids: productIds,
      basis,
    });
  }

  ask(sessionId: string, question: string, focusProductId?: string): Promise<ExchangeDoc> {
    return this.request("POST", `/api/sessions/${sessionId}/ask`, {
      question,
      focus_product_id: focusProductId ?? null,
    });
  }

  getChat(sessionId: string): Promise<TranscriptDoc> {
    return this.request("GET", `/api/sessions/${sessionId}/chat`);
  }

  clearChat(sessionId: string): Promise<TranscriptDoc> {
    return this.request("DELETE", `/api/sessions/${sessionId}/chat`);
  }

  setRecommendation(sessionId: string, productId: string): Promise<SessionDoc> {
    return this.request("POST", `/api/sessions/${sessionId}/recommendation`, {
      product_id: productId,
    });
  }

  submitJustification(sessionId: string, text: string): Promise<SessionDoc> {
    return this.request("POST", `/api/sessions/${sessionId}/justification`, { text });
  }

  finalize(sessionId: string): Promise<SessionDoc> {
    return this.request("POST", `/api/sessions/${sessionId}/finalize`);
  }

  getSummary(sessionId: string): Promise<SummaryDoc> {
    return this.request("GET", `/api/sessions/${sessionId}/summary`);
  }

  submitSurvey(
    participantRef: string,
    usefulness: number,
    ease: number,
    feedback?: string,
  ): Promise<{ status: string }> {
    return this.request("POST", "/api/surveys", {
      participant_ref: participantRef,
      usefulness,
      ease,
      feedback: feedback ?? null,
    });
  }

  healthz(): Promise<{ status: string }> {
    return this.request("GET", "/healthz");
  }
}
