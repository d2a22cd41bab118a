"""Size caps. These are configuration, not constants: pass a ``Limits`` to override."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .errors import UsageError


def _env_max_order() -> int:
    raw = os.environ.get("PG_MAX_ORDER")
    if raw is None or not raw.strip():
        return 10000
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"PG_MAX_ORDER must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError(f"PG_MAX_ORDER must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Limits:
    max_order: int = field(default_factory=_env_max_order)
    max_perm_degree: int = 7
    max_elem_abelian_order: int = 4096
    exhaustive_assoc_order: int = 512
    clique_vertex_cap: int = 5000
    mcd_set_cap: int = 10**6


def default_limits() -> Limits:
    # re-read the environment on each call so PG_MAX_ORDER set at runtime applies
    return Limits()
