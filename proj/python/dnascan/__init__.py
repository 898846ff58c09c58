"""Exact multi-pattern DNA search with a deterministic scenario generator.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports its public names.
"""

from ._core import (
    Pattern,
    ProtocolError,
    Rng,
    Scenario,
    ScenarioParams,
    SearchReport,
    build_scenario,
    find_first,
    search_distributed,
    search_parallel,
    search_sequential,
)

__version__ = "0.1.0"

__all__ = [
    "Pattern",
    "ProtocolError",
    "Rng",
    "Scenario",
    "ScenarioParams",
    "SearchReport",
    "build_scenario",
    "find_first",
    "search_distributed",
    "search_parallel",
    "search_sequential",
    "__version__",
]
