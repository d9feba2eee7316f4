export type NavEntry = "Scenario" | "All items" | "Selected items" | "Ask AI" | "Summary";

export const NAV_ENTRIES: NavEntry[] = [
  "Scenario",
  "All items",
  "Selected items",
  "Ask AI",
  "Summary",
];

export interface ViewState {
  activeNav: NavEntry;
  sessionId: string | null;
  focusedProductId: string | null;
  highlightsPanelOpen: boolean;
}

// Figure-style assessment wording shown to the learner, keyed by wire value.
export const RATING_OPTIONS: [string, string][] = [
  ["not_appropriate", "Not Appropriate"],
  ["appropriate", "Appropriate"],
  ["highly_appropriate", "Highly Appropriate"],
  ["not_sure", "Not Sure"],
];

export const DECISION_OPTIONS: [string, string][] = [
  ["select", "Select"],
  ["not_select", "Not Select"],
];

export interface AssessmentFormState {
  rating: string | null;
  decision: string | null;
  submitting: boolean;
}

export function submitEnabled(form: AssessmentFormState): boolean {
  return form.rating !== null && form.decision !== null && !form.submitting;
}
