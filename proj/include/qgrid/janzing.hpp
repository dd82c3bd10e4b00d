// janzing.hpp -- time-independent computation scheme: the XY-chain
// equivalence of H_prop, single-particle spectrum, time-averaged transition
// probabilities, the Exp_T[N] identity, success-probability estimates and the
// torus-geometry boundary blocks.

#pragma once

#include "qgrid/geometry.hpp"
#include "qgrid/numerics.hpp"

namespace qgrid {

// H_XY = -1/2 sum_{w=1}^{2n-1} (X_w X_{w+1} + Y_w Y_{w+1}) on 2^{2n}.
HermitianOperator build_H_XY(int n);

struct SingleParticleSystem {
    Eigen::VectorXd values;   // lambda_r = -2 cos(pi r/(2n+1)), r = 1..2n
    Eigen::MatrixXd vectors;  // vectors(j-1, r-1) = sqrt(2/(2n+1)) sin(j r pi/(2n+1))
};

// Analytic eigensystem of the Hamming-weight-1 sector (a 2n-site path).
SingleParticleSystem xy_single_particle(int n);

// Numeric weight-1 block: minus the adjacency matrix of the 2n-path.
Eigen::MatrixXd xy_weight1_block(int n);

// Time-averaged transition probability (1/T) int_0^T |<j|e^{-iHt}|l>|^2 dt in
// the weight-1 sector, closed form with sinc factors. T = infinity keeps the
// diagonal terms only.
double timeavg_transition(int n, int l, int j, double T);

enum class ExpectedNMethod { ManyBody, SingleParticle };

// Exp_T[N]: time average of the Hamming weight of the first n string bits,
// evolving from z_init. ManyBody integrates <N>(t) on the weight-n block by
// adaptive Simpson quadrature over Krylov-propagated states; SingleParticle
// evaluates sum_{j<=n<l} Prob_T(l->j).
double expected_N(int n, double T, ExpectedNMethod method, double quad_tol = 1e-8);

// Weight-n block of H_XY on the string register (enumerate_strings order).
Eigen::MatrixXd xy_weight_n_block(int n);

struct JanzingSuccess {
    double prob_all_outside;   // P(string fully right of the K x K left-corner region) = P(N >= K)
    double expected_M;         // Exp_T[M], M = n - N
    double prob_M_ge_3n4;      // Prob_T(M >= 3n/4)
    double markov_bound;       // (4/3n) Exp_T[M]
    bool markov_holds;
};

// Exact time-averaged statistics from the weight-n eigendecomposition.
JanzingSuccess janzing_success_estimate(int n, int K, double T);

struct TorusSpec {
    int n = 2;  // 2n chain sites; even n required for the ring equivalence
    int D = 2;  // boundary dimension
    int k = 0;  // plane-wave momentum, 0..D-1
    double flux() const { return static_cast<double>(k) / D; }
};

struct TorusBlocks {
    HermitianOperator boundary_block;   // H_XY^d(k) on 2^{2n}
    Eigen::VectorXd weight1_spectrum;   // ascending
    Eigen::VectorXd ring_spectrum;      // flux-phi(k) persistent-current ring, ascending
};

// Momentum-k boundary block and the matching persistent-current ring
// spectrum. Throws for odd n (the ring equivalence is asserted for even n).
TorusBlocks torus_blocks(const TorusSpec& spec);

// Spectrum of H_XY^d on (boundary x chain) minus the direct sum over k of the
// momentum blocks; returns the max absolute difference of the sorted spectra.
double torus_direct_sum_check(int n, int D);

}  // namespace qgrid
