__version__ = "1.0.0"

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    CounterexampleFound,
    DetmorphError,
    Inconclusive,
    InputError,
    LimitExceeded,
    NotApplicable,
)
from .quiver_rep import Quiver, QuiverCategory, Representation, linear_quiver
from .ar_theory import ARTheory
from .tube_cat import TubeCategory
from .determined import Engine
from .instance import Instance, load_instance

__all__ = [
    "Limits", "DEFAULT_LIMITS",
    "DetmorphError", "InputError", "NotApplicable", "LimitExceeded", "Inconclusive",
    "CounterexampleFound",
    "Quiver", "QuiverCategory", "Representation", "linear_quiver",
    "ARTheory", "TubeCategory", "Engine",
    "Instance", "load_instance",
    "__version__",
]
