import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, isAllowedRoute } from "../src/api.js";

interface Recorded {
  method: string;
  path: string;
  body?: unknown;
}

function recordingClient(status = 200, payload: unknown = {}) {
  const calls: Recorded[] = [];
  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    calls.push({
      method: init?.method ?? "GET",
      path: input,
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { calls, api: new ApiClient("", fetchFn) };
}

describe("api client", () => {
  it("issues only requests from the service routing table", async () => {
    const { calls, api } = recordingClient();
    await api.getScenarios();
    await api.getScenario("s1");
    await api.getProducts("sports drink", "berry");
    await api.getProduct("p1", "sess");
    await api.createSession("u", "s1");
    await api.getSession("sess");
    await api.addHighlight("sess", 1, 4);
    await api.removeHighlight("sess", 0);
    await api.recordAssessment("sess", "p1", "appropriate", "select");
    await api.getSelected("sess");
    await api.compare("sess", ["p1"], "per_100");
    await api.ask("sess", "why?", "p1");
    await api.getChat("sess");
    await api.clearChat("sess");
    await api.setRecommendation("sess", "p1");
    await api.submitJustification("sess", "because");
    await api.finalize("sess");
    await api.getSummary("sess");
    await api.submitSurvey("u", 8, 9, "good");
    await api.healthz();

    expect(calls.length).toBe(20);
    for (const call of calls) {
      expect(isAllowedRoute(call.method, call.path), `${call.method} ${call.path}`).toBe(true);
    }
  });

  it("sends the documented body shapes", async () => {
    const { calls, api } = recordingClient();
    await api.recordAssessment("sess", "p1", "highly_appropriate", "not_select");
    expect(calls[0].body).toEqual({
      product_id: "p1",
      rating: "highly_appropriate",
      decision: "not_select",
    });
    await api.compare("sess", ["a", "b"], "per_serving");
    expect(calls[1].body).toEqual({ product_ids: ["a", "b"], basis: "per_serving" });
    await api.submitSurvey("u", 7, 6);
    expect(calls[2].body).toEqual({ participant_ref: "u", usefulness: 7, ease: 6, feedback: null });
  });

  it("raises ApiError with the machine code from the body", async () => {
    const { api } = recordingClient(409, { code: "missing_justification", message: "nope" });
    await expect(api.finalize("sess")).rejects.toMatchObject({
      name: "ApiError",
      code: "missing_justification",
      status: 409,
    });
  });

  it("rejects off-table routes in the checker itself", () => {
    expect(isAllowedRoute("GET", "/api/admin/analytics")).toBe(false);
    expect(isAllowedRoute("POST", "/api/sessions/x/unknown")).toBe(false);
    expect(isAllowedRoute("PATCH", "/api/sessions/x")).toBe(false);
  });

  it("ApiError carries a readable message", () => {
    const err = new ApiError("empty_question", 400, "question must not be blank");
    expect(err.message).toContain("blank");
  });
});
