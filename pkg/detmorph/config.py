from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Any, Dict

import numpy as np


@dataclass(frozen=True)
class Limits:
    """Search caps shared by every category instance.

    All exhaustive enumerations compare p**dim against one of these before starting,
    and raise `LimitExceeded` rather than run away.
    """

    enumeration_limit: int = 4096
    endomorphism_threshold: int = 65536
    iso_threshold: int = 4096
    decompose_bound: int = 40
    indecomposable_search_limit: int = 65536
    pool_limit: int = 12
    random_attempts: int = 64
    seed: int = 0

    def with_overrides(self, **values: Any) -> "Limits":
        clean = {k: v for k, v in values.items() if v is not None}
        return replace(self, **clean)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def to_json(self) -> Dict[str, int]:
        return asdict(self)


DEFAULT_LIMITS = Limits()
