"""
Exact computations with cyclic L-infinity algebras of dimension 3: structure
checks, homotopy transfer to cohomology, superpotentials, Milnor numbers and
Euler characteristics of Milnor fibres, Behrend-function identities for
pairs of objects, and motivic Milnor fibres in a free Grothendieck ring.
"""

from .graded_core import GradedVectorSpace, koszul_sign, shuffles, wedge_sign
from .linf import (
    CyclicPairing, LInfinityMorphism, LInfinityStructure, MultilinearOperation, change_basis,
    check_coderivation, check_cyclic, check_jacobi, check_morphism, check_structure,
    coderivation_square, cohomology_split, jacobi_residual,
)
from .milnor import (
    Inconclusive, NonIsolated, behrend_value, blowup_formula_check, chi_germ_at,
    chi_milnor_fiber, milnor_data, milnor_number, quasihomogeneous_mu, thom_sebastiani_check,
)
from .motivic import (
    MotivicClass, ResolutionDatum, VarietyGenerator, euler_specialize, motivic_milnor_fiber,
    motivic_ts_check,
)
from .joyce_song import (
    BlockPotential, ExtProfile, behrend_of_object, check_formula1, check_formula2, euler_form,
    stable_pair_behrend,
)
from .potential import FormalPowerSeries, direct_sum, parse_polynomial, superpotential, verify_split
from .report import Report
from .transfer import standard_homotopy, transfer, verify_transfer

__all__ = [
    "GradedVectorSpace", "koszul_sign", "shuffles", "wedge_sign", "CyclicPairing",
    "LInfinityMorphism", "LInfinityStructure", "MultilinearOperation", "change_basis",
    "check_coderivation", "check_cyclic", "check_jacobi", "check_morphism", "check_structure",
    "coderivation_square", "cohomology_split", "jacobi_residual", "Inconclusive",
    "NonIsolated", "behrend_value", "blowup_formula_check", "chi_germ_at", "chi_milnor_fiber",
    "milnor_data", "milnor_number", "quasihomogeneous_mu", "thom_sebastiani_check",
    "MotivicClass", "ResolutionDatum", "VarietyGenerator", "euler_specialize",
    "motivic_milnor_fiber", "motivic_ts_check", "BlockPotential", "ExtProfile",
    "behrend_of_object", "check_formula1", "check_formula2", "euler_form",
    "stable_pair_behrend", "FormalPowerSeries", "direct_sum", "parse_polynomial",
    "superpotential", "verify_split", "Report", "standard_homotopy", "transfer",
    "verify_transfer",
]

__version__ = "0.1.0"
