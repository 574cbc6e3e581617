"""Tate cohomology of G-lattices and Tamagawa numbers of norm-condition tori."""

from .cohomology import DEGREES, h1_via_transfer, les_h1, restriction_map, tate
from .errors import CrossCheckError, InputError, NormTorusError, ResourceLimitError
from .groups import CentralDatum, Group, Subgroup, build_group, subgroup_closure
from .lattice import GLattice, LatticeMap, cokernel_lattice, permutation_lattice, trivial_lattice
from .localglobal import LocalFamily, TamagawaReport, batch_survey, sha, tamagawa
from .torus import TorusDatum, build_character_lattice, build_etale_lattice, parse_datum

__version__ = "0.1.0"

__all__ = [
    "DEGREES", "tate", "restriction_map", "h1_via_transfer", "les_h1",
    "NormTorusError", "InputError", "ResourceLimitError", "CrossCheckError",
    "Group", "Subgroup", "CentralDatum", "build_group", "subgroup_closure",
    "GLattice", "LatticeMap", "cokernel_lattice", "permutation_lattice", "trivial_lattice",
    "TorusDatum", "build_character_lattice", "build_etale_lattice", "parse_datum",
    "LocalFamily", "TamagawaReport", "sha", "tamagawa", "batch_survey",
]
