"""Torsion-class lattices and their cosilting data for representation-finite quiver algebras."""

from .errors import CompletenessError, InputError, ResourceError, TheoremViolation
from .quiver import Algebra, Morphism, Representation, load_algebra, type_a_document

__all__ = [
    "Algebra",
    "CompletenessError",
    "InputError",
    "Morphism",
    "Representation",
    "ResourceError",
    "TheoremViolation",
    "load_algebra",
    "type_a_document",
]

__version__ = "0.1.0"
