#include "qgrid/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qgrid {

void HermitianOperator::add(Index r, Index c, Complex v) {
    if (r < 0 || c < 0 || r >= dim_ || c >= dim_) throw std::out_of_range("HermitianOperator::add: index out of range");
    if (v == Complex(0.0, 0.0)) return;
    compiled_ = false;
    if (r == c) {
        map_[key(r, c)] += Complex(v.real(), 0.0);
    } else if (r < c) {
        map_[key(r, c)] += v;
    } else {
        map_[key(c, r)] += std::conj(v);
    }
}

void HermitianOperator::ensure_compiled() const {
    if (compiled_) return;
    csr_.clear();
    csr_.reserve(map_.size());
    for (const auto& [k, v] : map_) {
        const Index r = static_cast<Index>(k / static_cast<std::uint64_t>(dim_));
        const Index c = static_cast<Index>(k % static_cast<std::uint64_t>(dim_));
        csr_.push_back({r, c, v});
    }
    std::sort(csr_.begin(), csr_.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    compiled_ = true;
}

void HermitianOperator::apply(const StateVector& x, StateVector& y) const {
    if (x.size() != dim_) throw std::invalid_argument("HermitianOperator::apply: dimension mismatch");
    ensure_compiled();
    y.setZero(dim_);
    for (const Entry& e : csr_) {
        y[e.row] += e.value * x[e.col];
        if (e.row != e.col) y[e.col] += std::conj(e.value) * x[e.row];
    }
}

StateVector HermitianOperator::apply(const StateVector& x) const {
    StateVector y;
    apply(x, y);
    return y;
}

Eigen::MatrixXcd HermitianOperator::dense() const {
    ensure_compiled();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (const Entry& e : csr_) {
        m(e.row, e.col) += e.value;
        if (e.row != e.col) m(e.col, e.row) += std::conj(e.value);
    }
    return m;
}

std::vector<HermitianOperator::Entry> HermitianOperator::entries(double drop) const {
    ensure_compiled();
    std::vector<Entry> out;
    out.reserve(csr_.size());
    for (const Entry& e : csr_) {
        if (std::abs(e.value) > drop) out.push_back(e);
    }
    return out;
}

double HermitianOperator::norm_bound() const {
    ensure_compiled();
    std::vector<double> rowsum(dim_, 0.0);
    for (const Entry& e : csr_) {
        const double a = std::abs(e.value);
        rowsum[e.row] += a;
        if (e.row != e.col) rowsum[e.col] += a;
    }
    return rowsum.empty() ? 0.0 : *std::max_element(rowsum.begin(), rowsum.end());
}

void HermitianOperator::scale(double a) {
    compiled_ = false;
    for (auto& [k, v] : map_) v *= a;
}

void HermitianOperator::add_scaled(const HermitianOperator& other, Complex a) {
    if (other.dim_ != dim_) throw std::invalid_argument("add_scaled: dimension mismatch");
    other.ensure_compiled();
    for (const Entry& e : other.csr_) add(e.row, e.col, a * e.value);
}

void HermitianOperator::shift_diagonal(double a) {
    for (Index i = 0; i < dim_; ++i) add(i, i, a);
}

EigenSystem eigensystem_dense(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensystem_dense: solver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

EigenSystem eigensystem_dense(const HermitianOperator& op, Index dense_cutoff) {
    if (op.dim() > dense_cutoff) {
        throw DenseCutoffError("eigensystem_dense: dim " + std::to_string(op.dim()) + " exceeds dense cutoff " +
                               std::to_string(dense_cutoff) + "; use iterative solver (lowest_eigenpairs_sparse)");
    }
    return eigensystem_dense(op.dense());
}

double smallest_above(const Eigen::VectorXd& ascending, double zero_tol) {
    for (Index i = 0; i < ascending.size(); ++i) {
        if (ascending[i] > zero_tol) return ascending[i];
    }
    throw std::runtime_error("smallest_above: no eigenvalue above threshold");
}

namespace {

// Deterministic pseudo-random start vector (splitmix64 stream).
StateVector lanczos_start(Index dim, std::uint64_t salt) {
    StateVector v(dim);
    std::uint64_t s = 0x9e3779b97f4a7c15ULL ^ salt;
    auto next = [&s]() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    for (Index i = 0; i < dim; ++i) {
        const double a = (next() >> 11) * 0x1.0p-53 - 0.5;
        const double b = (next() >> 11) * 0x1.0p-53 - 0.5;
        v[i] = Complex(a, b);
    }
    return v;
}

void project_out(StateVector& v, const std::vector<StateVector>& basis) {
    for (const StateVector& b : basis) v -= b.dot(v) * b;
}

// One Lanczos run for the single lowest eigenpair in the complement of
// `deflate`. Returns (value, vector, residual).
struct LanczosResult {
    double value;
    StateVector vector;
    double residual;
};

LanczosResult lanczos_lowest(const HermitianOperator& op, const std::vector<StateVector>& deflate, double tol,
                             int max_iter, std::uint64_t salt) {
    const Index dim = op.dim();
    const int m_max = static_cast<int>(std::min<Index>(dim, max_iter));
    std::vector<StateVector> v;
    std::vector<double> alpha, beta;

    StateVector w = lanczos_start(dim, salt);
    project_out(w, deflate);
    double nrm = w.norm();
    if (nrm < 1e-14) throw std::runtime_error("lanczos: start vector vanishes in complement");
    v.push_back(w / nrm);

    double best_res = std::numeric_limits<double>::infinity();
    Eigen::VectorXd theta;
    Eigen::MatrixXd s;

    for (int j = 0; j < m_max; ++j) {
        StateVector hv = op.apply(v[j]);
        project_out(hv, deflate);
        alpha.push_back(std::real(v[j].dot(hv)));
        hv -= alpha[j] * v[j];
        if (j > 0) hv -= beta[j - 1] * v[j - 1];
        // full reorthogonalization (twice)
        for (int pass = 0; pass < 2; ++pass) {
            for (const StateVector& u : v) hv -= u.dot(hv) * u;
            project_out(hv, deflate);
        }
        const double b = hv.norm();

        // Ritz extraction on the (j+1)-dim tridiagonal.
        const int k = j + 1;
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) T(i, i) = alpha[i];
        for (int i = 0; i + 1 < k; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta = es.eigenvalues();
        s = es.eigenvectors();
        best_res = b * std::abs(s(k - 1, 0));
        if (best_res <= tol || b < 1e-14 * std::max(1.0, op.norm_bound())) {
            StateVector x = StateVector::Zero(dim);
            for (int i = 0; i < k; ++i) x += s(i, 0) * v[i];
            x.normalize();
            // true residual
            StateVector r = op.apply(x);
            project_out(r, deflate);
            const double lam = std::real(x.dot(r));
            const double res = (r - lam * x).norm();
            return {lam, x, res};
        }
        beta.push_back(b);
        v.push_back(hv / b);
    }
    throw ConvergenceError("lowest_eigenpairs_sparse: no convergence after " + std::to_string(m_max) + " iterations",
                           best_res);
}

}  // namespace

EigenSystem lowest_eigenpairs_sparse(const HermitianOperator& op, int count, double tol,
                                     const std::vector<StateVector>& orthogonal_to, int max_iter) {
    if (count <= 0) throw std::invalid_argument("lowest_eigenpairs_sparse: count must be positive");
    std::vector<StateVector> deflate = orthogonal_to;
    for (StateVector& d : deflate) d.normalize();

    EigenSystem out;
    out.values.resize(count);
    out.vectors.resize(op.dim(), count);
    for (int k = 0; k < count; ++k) {
        LanczosResult r = lanczos_lowest(op, deflate, tol, max_iter, 0x51ab5eedULL + 977u * static_cast<unsigned>(k));
        if (r.residual > 10 * tol) {
            throw ConvergenceError("lowest_eigenpairs_sparse: residual " + std::to_string(r.residual) +
                                       " above tolerance after deflation step " + std::to_string(k),
                                   r.residual);
        }
        out.values[k] = r.value;
        out.vectors.col(k) = r.vector;
        deflate.push_back(r.vector);
    }
    // ascending order (deflated runs already produce ascending values, but do
    // not rely on it)
    std::vector<int> perm(count);
    for (int i = 0; i < count; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return out.values[a] < out.values[b]; });
    EigenSystem sorted;
    sorted.values.resize(count);
    sorted.vectors.resize(op.dim(), count);
    for (int i = 0; i < count; ++i) {
        sorted.values[i] = out.values[perm[i]];
        sorted.vectors.col(i) = out.vectors.col(perm[i]);
    }
    return sorted;
}

namespace {

// Single Krylov step: returns the propagated vector and an error estimate.
struct KrylovStep {
    StateVector result;
    double error;
};

KrylovStep krylov_expm_step(const HermitianOperator& op, const StateVector& x, double dt, int m_max) {
    const Index dim = op.dim();
    const double beta0 = x.norm();
    if (beta0 == 0.0) return {x, 0.0};

    const int m = static_cast<int>(std::min<Index>(m_max, dim));
    std::vector<StateVector> v;
    std::vector<double> alpha, beta;
    v.push_back(x / beta0);
    bool happy = false;

    for (int j = 0; j < m; ++j) {
        StateVector hv = op.apply(v[j]);
        alpha.push_back(std::real(v[j].dot(hv)));
        hv -= alpha[j] * v[j];
        if (j > 0) hv -= beta[j - 1] * v[j - 1];
        for (const StateVector& u : v) hv -= u.dot(hv) * u;
        const double b = hv.norm();
        if (b < 1e-13 * std::max(1.0, std::abs(alpha[j]))) {
            happy = true;  // invariant subspace: exact within roundoff
            break;
        }
        if (j + 1 < m) {
            beta.push_back(b);
            v.push_back(hv / b);
        } else {
            beta.push_back(b);  // kept for the error estimate only
        }
    }

    const int k = static_cast<int>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < k; ++i) T(i, i) = alpha[i];
    for (int i = 0; i + 1 < k; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd& th = es.eigenvalues();
    const Eigen::MatrixXd& S = es.eigenvectors();
    Eigen::VectorXcd phase(k);
    for (int i = 0; i < k; ++i) phase[i] = std::exp(Complex(0.0, -dt * th[i])) * S(0, i);
    Eigen::VectorXcd u = S.cast<Complex>() * phase;

    StateVector y = StateVector::Zero(dim);
    for (int i = 0; i < k; ++i) y += u[i] * v[i];
    y *= beta0;

    double err = 0.0;
    if (!happy && static_cast<int>(beta.size()) >= k) {
        err = beta0 * beta[k - 1] * std::abs(u[k - 1]);
    }
    return {y, err};
}

}  // namespace

StateVector evolve(const HermitianOperator& op, const StateVector& state, double duration, double tol,
                   int krylov_dim) {
    if (state.size() != op.dim()) throw std::invalid_argument("evolve: dimension mismatch");
    if (tol <= 0) throw std::invalid_argument("evolve: tol must be positive");
    StateVector psi = state;
    if (duration == 0.0) return psi;
    const double sign = duration < 0 ? -1.0 : 1.0;
    const double total = std::abs(duration);

    double done = 0.0;
    double dt = total;
    const double dt_min = total * 1e-12;
    while (done < total) {
        const double step = std::min(dt, total - done);
        KrylovStep ks = krylov_expm_step(op, psi, sign * step, krylov_dim);
        const double budget = tol * (step / total) * 0.5;
        if (ks.error <= budget) {
            psi = std::move(ks.result);
            done += step;
            if (ks.error < 0.01 * budget) dt = step * 2.0;
        } else {
            dt = step / 2.0;
            if (dt < dt_min) throw std::runtime_error("evolve: step size underflow (required accuracy unreachable)");
        }
    }
    psi.normalize();
    return psi;
}

}  // namespace qgrid
