"""Homology and cohomologically trivial automorphisms of surfaces (C × E)/G."""

from ._backend import BACKEND
from .elliptic import EllipticGroup, EllipticGroupSpec, GElement, preset
from .invariants import (AutZReport, PseudoEllipticDatum, aut_z_report, h1_orb, h1_S,
                         h1C_coinvariants, pseudo_elliptic_exception, pseudo_elliptic_h1,
                         trivial_action_subgroup)
from .linalg import (AbelianInvariants, IntMatrix, abelian_invariants, hermite_normal_form,
                     smith_normal_form)
from .monodromy import (EllipticBranchDatum, MonodromyDatum, classify, datum_from_strings,
                        preset_branch, simplify, validate)

__version__ = "0.1.0"
