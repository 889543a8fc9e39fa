"""Supersingular isogeny graphs with level structure, their Ihara zeta functions,
and an exact comparison with Hasse-Weil zeta functions of modular curves."""

from .exact import IntMatrix, IntPolynomial, RationalFunction, bass_determinant, charpoly, poly_exact_div
from .elliptic import (EllipticCurve, SubgroupKernel, curve_from_j, cyclic_subgroups, is_supersingular,
                       supersingular_j_invariants, velu)
from .graph import LevelGraph, brandt_matrix, build_graph, build_vertices, ihara_zeta
from .modsym import cuspidal_space, genus, hecke_charpoly
from .verify import hasse_weil, q_new_factor, run_verification

__version__ = "0.1.0"
