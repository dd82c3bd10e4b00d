// numerics.hpp -- minimal Hermitian linear algebra contract shared by all
// model modules: sparse Hermitian operators, dense/iterative eigensolvers and
// Krylov propagation of exp(-iHt).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace qgrid {

using Complex = std::complex<double>;
using Index = std::int64_t;
using StateVector = Eigen::VectorXcd;

// Sparse Hermitian matrix. Only the upper triangle (row <= col) is stored;
// the mirror element is implied, so the represented matrix is Hermitian by
// construction. Diagonal entries are forced real.
class HermitianOperator {
public:
    struct Entry {
        Index row, col;
        Complex value;
    };

    explicit HermitianOperator(Index dim) : dim_(dim) {
        if (dim <= 0) throw std::invalid_argument("HermitianOperator: dim must be positive");
    }

    Index dim() const { return dim_; }

    // Accumulate M[r,c] += v (and implicitly M[c,r] += conj(v)).
    void add(Index r, Index c, Complex v);

    void apply(const StateVector& x, StateVector& y) const;
    StateVector apply(const StateVector& x) const;

    Eigen::MatrixXcd dense() const;

    // Stored (upper-triangle) entries, sorted by (row, col). Entries with
    // magnitude below `drop` are omitted.
    std::vector<Entry> entries(double drop = 0.0) const;

    std::size_t stored_size() const { return map_.size(); }

    // 2-norm upper bound: max_r sum_c |M[r,c]| (Gershgorin-style).
    double norm_bound() const;

    void scale(double a);
    void add_scaled(const HermitianOperator& other, Complex a = 1.0);
    void shift_diagonal(double a);

private:
    struct KeyHash {
        std::size_t operator()(std::uint64_t k) const { return std::hash<std::uint64_t>{}(k); }
    };
    std::uint64_t key(Index r, Index c) const { return static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(dim_) + static_cast<std::uint64_t>(c); }

    Index dim_;
    std::unordered_map<std::uint64_t, Complex, KeyHash> map_;

    void ensure_compiled() const;
    mutable bool compiled_ = false;
    mutable std::vector<Entry> csr_;
};

struct EigenSystem {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // orthonormal columns
};

struct DenseCutoffError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
    double best_residual;
    ConvergenceError(const std::string& what, double res) : std::runtime_error(what), best_residual(res) {}
};

// Full spectrum of a Hermitian operator. Refuses above the cutoff; large
// problems go through lowest_eigenpairs_sparse instead.
EigenSystem eigensystem_dense(const HermitianOperator& op, Index dense_cutoff = 4096);
EigenSystem eigensystem_dense(const Eigen::MatrixXcd& m);

// Lowest `count` eigenpairs by Lanczos with full reorthogonalization and
// sequential deflation. Optional `orthogonal_to` vectors restrict the solve
// to their orthogonal complement.
EigenSystem lowest_eigenpairs_sparse(const HermitianOperator& op, int count, double tol,
                                     const std::vector<StateVector>& orthogonal_to = {},
                                     int max_iter = 600);

// exp(-i op duration) * state via Lanczos-Krylov projection with adaptive
// step halving; 2-norm error <= tol, result renormalized.
StateVector evolve(const HermitianOperator& op, const StateVector& state, double duration, double tol,
                   int krylov_dim = 40);

// Smallest stored-spectrum member above `zero_tol` (for gap extraction from a
// dense spectrum).
double smallest_above(const Eigen::VectorXd& ascending, double zero_tol);

}  // namespace qgrid
