"""Exact arithmetic on free 2-step and 3-step nilpotent groups."""

from .free2 import (
    Malcev2, PolySeq2, Reduced2, commutator2, heisenberg_orbit_phase, inverse2,
    iterated_derivative, mul2, nilchar2, nilchar2_closed_form, pairs, power2, reduce2,
)
from .free3 import (
    BASIS, F312_closed, F312_orbit, F312_orbit_many, Malcev3, Reduced3, bracket_cubic_phase,
    commutator3, coordinate_312, inverse3, mul3, orbit3, power3, power3_closed_coords, reduce3,
)

__all__ = [
    "BASIS", "F312_closed", "F312_orbit", "F312_orbit_many", "Malcev2", "Malcev3", "PolySeq2",
    "Reduced2", "Reduced3", "bracket_cubic_phase", "commutator2", "commutator3",
    "coordinate_312", "heisenberg_orbit_phase", "inverse2", "inverse3", "iterated_derivative",
    "mul2", "mul3", "nilchar2", "nilchar2_closed_form", "orbit3", "pairs", "power2", "power3",
    "power3_closed_coords", "reduce2", "reduce3",
]
