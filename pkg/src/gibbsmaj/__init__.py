"""Majorization relations and Gibbs-preserving dynamics.

Subpackages by topic:

* :mod:`gibbsmaj.linalg` -- dense complex linear-algebra primitives
* :mod:`gibbsmaj.vectors` -- classical and d-majorization on vectors
* :mod:`gibbsmaj.polytope` -- the d-majorization polytope and its vertices
* :mod:`gibbsmaj.channels` -- D-majorization via CPTP fixed-point feasibility
* :mod:`gibbsmaj.thermo` -- Gibbs states, thermal GKSL dynamics, thermal operations
* :mod:`gibbsmaj.reachability` -- down-set operator probes and reachability bounds
* :mod:`gibbsmaj.cli` -- command-line front end and JSON interchange
"""

from .linalg import random_hermitian, random_unitary, trace_norm
from .vectors import (classical_majorizes, d_majorizes, d_stochastic_witness,
                      is_d_stochastic, random_d_stochastic)
from .polytope import MajorizationPolytope, classical_maximizer, polytope_inequalities, polytope_vertices
from .channels import (ChoiMatrix, FeasibilityVerdict, GibbsReference, apply_choi,
                       cptp_feasibility, diagonal_reduction_check, maximal_element,
                       maximal_element_check, minimal_element_witness,
                       qubit_dmaj_check, reduce_to_diagonal, trace_norm_curve_check)
from .thermo import (EnergyConservationViolatedError, GibbsContext, GKSLSystem,
                     LadderPair, PositivityLossError, ThermalOperation,
                     build_thermal_operation, covariance_residual,
                     energy_conservation_check, gibbs_state, gksl_rhs,
                     integrate_gksl, ladder_operators, propagator,
                     random_commutant_unitary, thermal_gksl)
from .reachability import compose_bound, hausdorff_nonexpansive_probe, md_membership, star_shape_probe
from .io import load_hermitian, load_matrix, load_vector

__all__ = [
    "random_hermitian", "random_unitary", "trace_norm",
    "classical_majorizes", "d_majorizes", "d_stochastic_witness",
    "is_d_stochastic", "random_d_stochastic",
    "MajorizationPolytope", "classical_maximizer", "polytope_inequalities", "polytope_vertices",
    "ChoiMatrix", "FeasibilityVerdict", "GibbsReference", "apply_choi",
    "cptp_feasibility", "diagonal_reduction_check", "maximal_element",
    "maximal_element_check", "minimal_element_witness", "qubit_dmaj_check",
    "reduce_to_diagonal", "trace_norm_curve_check",
    "EnergyConservationViolatedError", "GibbsContext", "GKSLSystem", "LadderPair",
    "PositivityLossError", "ThermalOperation",
    "build_thermal_operation", "covariance_residual", "energy_conservation_check",
    "gibbs_state", "gksl_rhs", "integrate_gksl", "ladder_operators", "propagator",
    "random_commutant_unitary", "thermal_gksl",
    "compose_bound", "hausdorff_nonexpansive_probe", "md_membership", "star_shape_probe",
    "load_hermitian", "load_matrix", "load_vector",
]
