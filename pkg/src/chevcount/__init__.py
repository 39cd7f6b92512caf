"""Exact computations in Chevalley groups over finite fields.

Root systems, structure constants, unipotent normal forms, parabolic coset
representatives, and evaluation of the permutation character of a parabolic
subgroup on unipotent elements by counting solutions of polynomial systems
over F_q.
"""

__version__ = "0.1.0"

from .rootsys import build_root_system, enumerate_j_reduced, weyl_group_order  # noqa: F401
