"""Labels for the three orbit-type strata of the reduced phase space.

The reduced phase space is a copy of the complex plane with two distinguished
singular points at Z = +2 and Z = -2 (the images of +identity and -identity
under Z = z + 1/z); everything else is the open dense top stratum.
"""

import enum


class Stratum(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"
    TOP = "top"

    @property
    def sign(self) -> int:
        """+1 for the PLUS vertex, -1 for the MINUS vertex."""
        if self is Stratum.PLUS:
            return 1
        if self is Stratum.MINUS:
            return -1
        raise ValueError("the top stratum has no vertex sign")
