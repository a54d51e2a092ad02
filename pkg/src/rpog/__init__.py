"""Right-preordered groups: finite and symbolic objects, their models,
normal subobjects, Schreier points and internal categories."""

from .finite import FiniteGroup, FiniteRpoGroup, RpoMorphism
from .verdict import (GuardError, PreconditionError, RpogError, StructuralError, SymbolicDomainError,
                      Verdict)

__version__ = "0.1.0"

__all__ = ["FiniteGroup", "FiniteRpoGroup", "RpoMorphism", "Verdict", "RpogError", "StructuralError",
           "PreconditionError", "GuardError", "SymbolicDomainError", "__version__"]
