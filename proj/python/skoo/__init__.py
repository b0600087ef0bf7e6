"""SKOO ontology toolkit: Turtle I/O, subsumption reasoning, instance
validation and visual-model export."""

import json

from ._core import (
    Ontology,
    SkooError,
    alignment_axioms,
    default_rules,
    external_fragment,
    is_subclass_of,
    merged_schema,
    parse_diagnostics,
    parse_turtle,
    serialize_turtle,
    skoo_ontology,
    visualize,
)
from . import _core

__all__ = [
    "Ontology",
    "SkooError",
    "alignment_axioms",
    "check_consistency",
    "default_rules",
    "external_fragment",
    "is_subclass_of",
    "merged_schema",
    "parse_diagnostics",
    "parse_turtle",
    "serialize_turtle",
    "skoo_ontology",
    "validate",
    "visualize",
]


def check_consistency(ontology):
    """Consistency report as a dict (same layout as `skoo check`)."""
    return json.loads(_core._check_consistency(ontology))


def validate(graph):
    """Instance-graph validation report as a dict (same layout as `skoo validate`)."""
    return json.loads(_core._validate(graph))
