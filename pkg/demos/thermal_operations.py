"""Demo: thermal operations from energy-conserving system-bath unitaries.

A thermal operation couples the system to a Gibbs-distributed bath with a
unitary commuting with the total Hamiltonian and traces the bath out.
Every such channel fixes the system Gibbs state and commutes with the
system Hamiltonian; a CNOT is rejected because it moves energy.

Run:  python3 demos/thermal_operations.py
"""

import numpy as np

from gibbsmaj import (EnergyConservationViolatedError, ThermalOperation,
                      build_thermal_operation, covariance_residual,
                      energy_conservation_check, gibbs_state,
                      random_commutant_unitary)

rng = np.random.default_rng(2)
H_S = np.diag([0.0, 1.0])
H_R = np.diag([0.0, 1.0, 2.0])
T = 1.0
g = gibbs_state(H_S, T)
print("system Gibbs populations:", np.round(np.diag(g).real, 5))

# Swapping the system with an identical bath copy resets it to Gibbs.
swap = np.eye(4)[[0, 2, 1, 3]]
op = ThermalOperation(H_S=H_S, H_R=H_S, U=swap, T=T)
phi = build_thermal_operation(op)
x = np.array([[0.9, 0.3], [0.3, 0.1]], dtype=complex)
print("\nswap with a bath qubit sends any state to Gibbs:",
      np.abs(phi.apply(x) - g).max() < 1e-12)

# Random unitaries from the commutant of the total Hamiltonian.
print("\nrandom energy-conserving unitaries on a qubit + qutrit bath:")
for k in range(5):
    U = random_commutant_unitary(H_S, H_R, rng)
    op = ThermalOperation(H_S=H_S, H_R=H_R, U=U, T=T)
    phi = build_thermal_operation(op, comm_tol=1e-7)
    print(f"  #{k}: commutator {energy_conservation_check(op):.1e}, "
          f"CPTP {phi.is_cptp(1e-9)}, "
          f"Gibbs moved by {np.abs(phi.apply(g) - g).max():.1e}, "
          f"covariance residual {covariance_residual(phi, H_S):.1e}")

# A CNOT moves energy between the two qubits, so it is refused.
cnot = np.eye(4)[[0, 1, 3, 2]]
op = ThermalOperation(H_S=H_S, H_R=H_S, U=cnot, T=T)
print(f"\nCNOT commutator norm: {energy_conservation_check(op):.3f}")
try:
    build_thermal_operation(op)
except EnergyConservationViolatedError as e:
    print("rejected:", e)
