// Human-readable rendering for every error code the service can return.
// A test parses the service's mapping table and fails if a code is missing
// here, so keep this in sync when the backend grows a new error.

export const ERROR_MESSAGES: Record<string, string> = {
  parse_error: "That document could not be read.",
  duplicate_product_id: "Two products share the same id.",
  empty_catalog: "The product catalog is empty.",
  invalid_nutrient: "A nutrition entry is invalid.",
  unknown_product: "That product does not exist.",
  unknown_product_reference: "A scenario points at a product that is not in the catalog.",
  duplicate_scenario_id: "Two scenarios share the same id.",
  empty_span: "Select some text before highlighting.",
  out_of_bounds: "That selection falls outside the scenario text.",
  inverted_span: "That selection is inverted.",
  unknown_scenario: "That scenario does not exist.",
  unknown_session: "Your session could not be found. Start a new one.",
  session_completed: "This session is finalized and can no longer be changed.",
  duplicate_highlight: "You already highlighted exactly that passage.",
  index_out_of_range: "That highlight no longer exists.",
  ineligible_product: "That product is not part of this scenario.",
  not_in_selected_set: "Select the product before recommending it.",
  blank_justification: "Write a justification before submitting.",
  missing_recommendation: "Pick a recommendation first.",
  missing_justification: "Write your justification before finalizing.",
  empty_product_list: "Select at least one product to compare.",
  mixed_serving_units: "These products use different serving units, so per-100 comparison is unavailable.",
  empty_question: "Type a question before asking.",
  busy_asking: "Please wait for the current answer to arrive.",
  provider_unavailable: "The AI assistant is unreachable right now. Try again shortly.",
  provider_rejected: "The AI assistant could not answer that request.",
  storage_failure: "The server could not save your change.",
  empty_distribution: "No survey responses have been recorded yet.",
  rating_out_of_range: "Ratings must be between 1 and 10.",
  config_error: "The service is misconfigured.",
  bad_request: "The request was malformed.",
  not_found: "That page or resource does not exist.",
  http_error: "Something went wrong talking to the server.",
};

export function messageFor(code: string, fallback?: string): string {
  return ERROR_MESSAGES[code] ?? fallback ?? "Something went wrong.";
}
