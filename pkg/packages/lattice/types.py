from __future__ import annotations

from typing import Tuple

from packages.exact.fields import FieldElement

# Values on the V basis, in the complexified field.
Functional = Tuple[FieldElement, ...]

__all__ = ["Functional"]
