"""Exact computation of delta-derivations of simple Jordan algebras and superalgebras."""
from __future__ import annotations

from .algebra import Element, Superalgebra, build_superalgebra, direct_sum, find_unit, plus_construction
from .derivations import (classify_solution, delta_derivations, pencil_exceptional, verify_map)
from .exactnum import QQ, field_descriptor
from .identities import check_identities
from .zoo import build, catalog

__all__ = [
    "QQ",
    "Element",
    "Superalgebra",
    "build",
    "build_superalgebra",
    "catalog",
    "check_identities",
    "classify_solution",
    "delta_derivations",
    "direct_sum",
    "field_descriptor",
    "find_unit",
    "pencil_exceptional",
    "plus_construction",
    "verify_map",
]
