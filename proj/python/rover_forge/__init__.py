"""Self-similar groups, almost automorphisms and finiteness certificates."""

from ._core import (
    Automaton,
    CapExceeded,
    DomainError,
    Error,
    ParseDomainError,
    ParseError,
    affine_state,
    finiteness_profile,
    matching_connectivity,
    pipeline,
    reduced_homology,
    smith_normal_form,
)

__all__ = [
    "Automaton",
    "CapExceeded",
    "DomainError",
    "Error",
    "ParseDomainError",
    "ParseError",
    "affine_state",
    "finiteness_profile",
    "matching_connectivity",
    "pipeline",
    "reduced_homology",
    "smith_normal_form",
]
