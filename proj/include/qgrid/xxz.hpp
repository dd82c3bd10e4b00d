// xxz.hpp -- effective string-register models: the ferromagnetic XXZ chain
// with kink boundary conditions, its q-deformed groundstates and gap, the
// rotated-basis equivalence of the circuit Hamiltonian, the Nullspace
// Projection Lemma and the spectral-gap certificate.

#pragma once

#include "qgrid/geometry.hpp"
#include "qgrid/numerics.hpp"

namespace qgrid {

// lambda = 2/(q + 1/q) with q in [0,1]; inverse via the stable root
// q = lambda / (1 + sqrt(1 - lambda^2)), with q(0) = 0 by convention.
double q_of_lambda(double lambda);
double lambda_of_q(double q);

enum class XXZForm { ProjectorSum, Pauli };

// 2n-qubit chain on the full 2^{2n} space. Both forms produce the identical
// matrix; the Pauli form spells out the kink boundary field.
HermitianOperator build_H_XXZ(int n, double lambda, XXZForm form = XXZForm::ProjectorSum);

// Hamming-weight-n block of an operator on 2^{2n}, in enumerate_strings order.
Eigen::MatrixXcd weight_n_block(const HermitianOperator& op, int n);

// Unique zero-energy groundstate in the weight-n sector: amplitudes
// proportional to q^{-A(z)} (point mass on z_init for lambda = 0).
StateVector xxz_groundstate(int n, double lambda);

// Spectral gap above the (degenerate) zero groundspace: 1 - lambda cos(pi/2n).
double xxz_gap(int n, double lambda);

// Gap from explicit diagonalization of the full 2^{2n} chain; also checks
// that the nullspace dimension is 2n+1.
double xxz_gap_numeric(int n, double lambda);

// Max matrix-element deviation between W^dag (H_circuit(lambda) -
// sqrt(1-lambda^2)) W restricted to S_string and 1_x (x) 2 H_XXZ(lambda)|_{wt=n}.
double rotated_conjugation_check(const PlaquetteCircuit& circuit, double lambda, int n);

// Nullspace Projection Lemma bound: cd / (c + d + normB).
double npl_bound(double c, double d, double normB);

struct Theorem1Certificate {
    double ground_energy;   // lowest eigenvalue of H(lambda) on S_string
    double numeric_gap;     // second-lowest minus sqrt(1-lambda^2)
    double bound;           // (1/(4n+3)) (1 - lambda cos(pi/2n))
    bool pass;              // numeric_gap >= bound - 1e-9
};

Theorem1Certificate theorem1_certificate(int n, double lambda, const PlaquetteCircuit& circuit);

}  // namespace qgrid
