// statevector_sim.hpp -- direct layer-by-layer simulation of a plaquette
// circuit on a 2n-qubit register. Deliberately does not share the matrix
// machinery of partial_unitary so the two can cross-check each other.

#pragma once

#include "qgrid/geometry.hpp"

#include <Eigen/Dense>

namespace qgrid {

// Apply the two-qubit gate u to lines (w, w+1) in place (qubit 1 = MSB).
void apply_gate_inplace(Eigen::VectorXcd& psi, int n, int w, const Eigen::Matrix4cd& u);

// Run the whole circuit (all plaquettes in causal order) on |x>.
Eigen::VectorXcd simulate_circuit(const PlaquetteCircuit& circuit, std::uint32_t x = 0);

}  // namespace qgrid
