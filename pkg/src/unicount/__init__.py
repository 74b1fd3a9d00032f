"""Universal counting of lattice points in lattice polytopes, in exact arithmetic."""
from .errors import (BudgetExceeded, DegenerateError, InputError, InvariantError,
                     NotUniversallyEqual, UnicountError)
from .geometry import (Polygon2, PolytopeN, SupportFace, area2, canonical_translate,
                       convex_hull_2d, lattice_length, minkowski_sum, primitive, reflect,
                       support_face, volume)
from .lattice import (Superlattice, SweepReport, count_points, count_points_brute, dilation,
                      enumerate_superlattices, hermite_normal_form, sweep)
from .ehrhart import (EhrhartPoly, ehrhart_poly, necessary_condition, pick_count, rvol_facet,
                      theorem1_check, width, width_boundary_formula)
from .universal import (DecompWitness, EdgeProfile, decompose, edge_profile,
                        equal_universal_2d, synth)
from .equidecomp import EquidecompCert, Motion, verify_equidecomposition

__version__ = "0.1.0"
