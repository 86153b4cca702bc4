"""Budget defaults and their environment-variable overrides.

Every potentially expensive routine takes an optional budget argument;
when the argument is None the value is read from the environment, falling
back to the defaults below.  Budgets exist to make non-termination
impossible, not to be tuned per call site.
"""
from __future__ import annotations

import os

DEFAULT_FAMILY_BUDGET = 10_000       # max orthoclosed sets enumerated
DEFAULT_CLIQUE_BUDGET = 100_000      # max perp-sets enumerated
DEFAULT_NODE_BUDGET = 10_000_000     # max nodes in a Sasaki map search
DEFAULT_AUTOMORPHISM_BOUND = 10      # max |X| for the transitivity search
DEFAULT_LATTICE_CAP = 64             # max lattice size accepted


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def family_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int("ORTHOKIT_FAMILY_BUDGET", DEFAULT_FAMILY_BUDGET)


def clique_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int("ORTHOKIT_CLIQUE_BUDGET", DEFAULT_CLIQUE_BUDGET)


def node_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int("ORTHOKIT_NODE_BUDGET", DEFAULT_NODE_BUDGET)


def automorphism_bound(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int("ORTHOKIT_AUTOMORPHISM_BOUND", DEFAULT_AUTOMORPHISM_BOUND)


def lattice_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    return _env_int("ORTHOKIT_LATTICE_CAP", DEFAULT_LATTICE_CAP)


def snapshot() -> dict[str, int]:
    """Resolved budget values, for inclusion in report headers."""
    return {
        "family": family_budget(),
        "clique": clique_budget(),
        "nodes": node_budget(),
        "automorphism": automorphism_bound(),
        "lattice_cap": lattice_cap(),
    }
