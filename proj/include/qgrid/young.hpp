// young.hpp -- quantum walk on Young's lattice: partition combinatorics,
// hook-length dimensions, differential-poset identities, the exact walk
// solution and its numeric cross-check, Poissonized Plancherel measure,
// RSK sampling and the limit-shape curve.

#pragma once

#include "qgrid/numerics.hpp"
#include "qgrid/rng.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <vector>

namespace qgrid {

// Weakly decreasing positive parts; empty = the partition of 0.
using Partition = std::vector<int>;

inline int partition_weight(const Partition& p) {
    int m = 0;
    for (int x : p) m += x;
    return m;
}

// Partitions covering sigma (one box added), in deterministic order (by row).
std::vector<Partition> covers_of(const Partition& sigma);
// Partitions covered by sigma (one box removed).
std::vector<Partition> covered_by(const Partition& sigma);

class TruncatedLattice {
public:
    explicit TruncatedLattice(int m_max);  // m_max <= 40

    int m_max() const { return m_max_; }
    Index size() const { return static_cast<Index>(nodes_.size()); }
    const std::vector<Partition>& nodes() const { return nodes_; }
    Index index(const Partition& p) const;
    const std::vector<Index>& up_neighbors(Index k) const { return up_[k]; }

    // adjacency of the truncated lattice (edges between consecutive levels)
    HermitianOperator adjacency() const;
    // raising operator A^dagger as a dense integer matrix (rows = covers)
    Eigen::MatrixXd raising() const;

private:
    int m_max_;
    std::vector<Partition> nodes_;
    std::map<Partition, Index> idx_;
    std::vector<std::vector<Index>> up_;
};

// Number of standard Young tableaux of shape sigma, m!/prod(hooks).
mpz_class hook_dimension(const Partition& sigma);  // m <= 170

struct DifferentialPosetReport {
    bool degree_identity;    // D_up = D_down + 1 on all interior nodes
    bool pair_identity;      // B_{s,s'} = C_{s,s'} for all interior same-level pairs
    double commutator_error; // max |([A, A^dag] - 1)| on the interior block
    bool pass() const { return degree_identity && pair_identity && commutator_error == 0.0; }
};

DifferentialPosetReport differential_poset_check(const TruncatedLattice& lat);

struct WalkState {
    std::shared_ptr<const TruncatedLattice> lattice;
    StateVector amplitudes;  // per lattice node

    Complex amplitude(const Partition& p) const { return amplitudes[lattice->index(p)]; }
};

// Closed-form amplitudes e^{-t^2/2} (-it)^m d_sigma / m!.
WalkState exact_walk_amplitudes(double t, int m_max);

// Krylov evolution of |empty> under the truncated adjacency. Throws when the
// Poisson(t^2) tail beyond the truncation is too heavy for the 1e-6
// componentwise agreement contract.
WalkState numeric_walk(double t, int m_max, double evolve_tol = 1e-9);

// P(X > k) for X ~ Poisson(mean).
double poisson_tail_above(double mean, int k);

// Poissonized Plancherel: e^{-t^2} t^{2m} d_sigma^2 / (m!)^2 (log-space).
double poissonized_plancherel(const Partition& sigma, double t);

// Plancherel measure d_sigma^2/m! via RSK row insertion of a uniformly
// random permutation of {1..m}.
Partition rsk_sample(int m, Rng& rng);
Partition rsk_shape(const std::vector<int>& permutation);

// Limit-shape curve point for theta in [-pi/2, pi/2].
std::pair<double, double> limit_shape(double theta);

// The same curve as a function of u = x - y (rotated coordinates), extended
// by |u| outside [-2, 2].
double limit_shape_profile(double u);

// Sup distance between the 1/sqrt(m)-rescaled diagram boundary of sigma and
// the limit curve, measured on boundary profiles in rotated coordinates.
double profile_sup_deviation(const Partition& sigma, int m);

}  // namespace qgrid
