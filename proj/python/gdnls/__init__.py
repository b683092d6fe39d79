"""Generalized derivative NLS: solitary waves, variational levels, certificates, time integration."""

from ._core import (
    Error,
    Params,
    certify,
    classify,
    estimate_level,
    invariants,
    nodes,
    profile,
    reference_level,
    simulate,
    stability_function,
    stability_root,
    validate,
)

__all__ = [
    "Error",
    "Params",
    "certify",
    "classify",
    "estimate_level",
    "invariants",
    "nodes",
    "profile",
    "reference_level",
    "simulate",
    "stability_function",
    "stability_root",
    "validate",
]
