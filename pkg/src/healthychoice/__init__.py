"""Scenario-based nutrition-literacy simulation service.

Learners act as health advisors: they read a client scenario, highlight its
requirements, assess and select real-world products, consult an AI assistant,
compare candidates side by side, and submit a justified recommendation. The
package also ships the survey analytics used to evaluate the platform.
"""

from .catalog import Basis, ProductCatalog, load_catalog
from .scenario import ScenarioSet, load_scenarios
from .session import InitialDecision, Phase, SessionManager, SuitabilityRating
from .service import ServiceConfig, create_app

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "InitialDecision",
    "Phase",
    "ProductCatalog",
    "ScenarioSet",
    "ServiceConfig",
    "SessionManager",
    "SuitabilityRating",
    "create_app",
    "load_catalog",
    "load_scenarios",
    "__version__",
]
