"""Domain errors raised across the service.

Every error the HTTP layer can surface derives from HealthyChoiceError so the
service module can map exception types to stable API codes in one table.
"""


class HealthyChoiceError(Exception):
    """Base class for all domain errors in this package."""


# --- catalog ---------------------------------------------------------------

class ParseError(HealthyChoiceError):
    """Malformed catalog or scenario document."""


class DuplicateProductId(HealthyChoiceError):
    pass


class EmptyCatalog(HealthyChoiceError):
    pass


class InvalidNutrient(HealthyChoiceError):
    """Nutrient entry with an unknown unit, negative amount, or repeated key."""


class UnknownProduct(HealthyChoiceError):
    pass


# --- scenario ---------------------------------------------------------------

class UnknownProductReference(HealthyChoiceError):
    """Scenario names a product id that is not in the active catalog."""


class DuplicateScenarioId(HealthyChoiceError):
    pass


class EmptySpan(HealthyChoiceError):
    pass


class OutOfBounds(HealthyChoiceError):
    pass


class InvertedSpan(HealthyChoiceError):
    pass


# --- session ----------------------------------------------------------------

class UnknownScenario(HealthyChoiceError):
    pass


class UnknownSession(HealthyChoiceError):
    pass


class SessionCompleted(HealthyChoiceError):
    """Mutation attempted on a finalized session."""


class DuplicateHighlight(HealthyChoiceError):
    pass


class IndexOutOfRange(HealthyChoiceError):
    pass


class IneligibleProduct(HealthyChoiceError):
    """Product is not in the scenario's eligible set."""


class NotInSelectedSet(HealthyChoiceError):
    """Recommendation target is not currently selected."""


class BlankJustification(HealthyChoiceError):
    pass


class MissingRecommendation(HealthyChoiceError):
    pass


class MissingJustification(HealthyChoiceError):
    pass


# --- compare ----------------------------------------------------------------

class EmptyProductList(HealthyChoiceError):
    pass


class MixedServingUnits(HealthyChoiceError):
    """Per-100 normalization requested over a mix of ml and g servings."""


# --- assistant --------------------------------------------------------------

class EmptyQuestion(HealthyChoiceError):
    pass


class BusyAsking(HealthyChoiceError):
    """A second ask arrived while one is already in flight for the session."""


class ProviderUnavailable(HealthyChoiceError):
    """Provider unreachable after the configured retries."""


class ProviderRejected(HealthyChoiceError):
    """Provider answered with a non-retryable error."""


# --- analytics --------------------------------------------------------------

class StorageFailure(HealthyChoiceError):
    pass


class EmptyDistribution(HealthyChoiceError):
    pass


class RatingOutOfRange(HealthyChoiceError):
    pass


# --- service ----------------------------------------------------------------

class ConfigError(HealthyChoiceError):
    pass


class BadRequest(HealthyChoiceError):
    """Request body missing required fields or carrying wrong types."""
