"""Default size ceilings, overridable from the environment."""
from __future__ import annotations

import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"environment variable {name} must be positive")
    return value


def element_limit() -> int:
    """Maximum group order for element sweeps (spectrum, semiregular statistics)."""
    return _env_int("SEMIREG_ELEMENT_LIMIT", 10**7)


def subgroup_cap() -> int:
    """Maximum group order for subgroup-class enumeration."""
    return _env_int("SEMIREG_SUBGROUP_CAP", 2000)


def table_cap() -> int:
    """Maximum group order for which a full multiplication table is built."""
    return _env_int("SEMIREG_TABLE_CAP", 6000)


def vertex_ceiling() -> int:
    """Maximum vertex count for automorphism and isomorphism searches."""
    return _env_int("SEMIREG_MAX_VERTICES", 3000)
