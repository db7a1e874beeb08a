"""Exact stability checks on smooth projective toric varieties."""
__version__ = "0.1.0"

from .errors import ToricStabError
from .toric_core import Fan, OrbitClosure, build_fan, builtin, load_fan, orbit_closures
from .chow import ChowClass, as_class, chow_ring, degree, is_ample, parse_class
from .charges import (ChernCharacter, chern_character, complex_power_integral, douglas_charge,
                      phase_data, phase_leq, tilt_charge)
from .stability import (bmsz_conditions, bstab_implies_dhym, dhym_positivity, find_parameters,
                        genericity_check, heart_membership, wall_scan)
from .blowup_fibration import (adiabatic_equivalence, blowup_classes, exceptional_threshold,
                               fibration_angles, fibration_context, point_blowup,
                               proper_transform_reduction, schmidt_relation_audit)
from .unstable_blp3 import instability_window, phi_min_sup, quotient_class, ratio_at

__all__ = [n for n in dir() if not n.startswith("_")]
