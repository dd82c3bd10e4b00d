#include "qgrid/young.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgrid {

std::vector<Partition> covers_of(const Partition& sigma) {
    std::vector<Partition> out;
    const int rows = static_cast<int>(sigma.size());
    for (int r = 0; r <= rows; ++r) {
        const int cur = r < rows ? sigma[r] : 0;
        const int above = r > 0 ? sigma[r - 1] : INT32_MAX;
        if (cur + 1 <= above) {
            Partition q = sigma;
            if (r < rows) {
                q[r] += 1;
            } else {
                q.push_back(1);
            }
            out.push_back(std::move(q));
        }
    }
    return out;
}

std::vector<Partition> covered_by(const Partition& sigma) {
    std::vector<Partition> out;
    const int rows = static_cast<int>(sigma.size());
    for (int r = 0; r < rows; ++r) {
        const int below = r + 1 < rows ? sigma[r + 1] : 0;
        if (sigma[r] - 1 >= below) {
            Partition q = sigma;
            q[r] -= 1;
            if (q[r] == 0) q.pop_back();
            out.push_back(std::move(q));
        }
    }
    return out;
}

namespace {

void gen_partitions(int m, int max_part, Partition& cur, std::vector<Partition>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(m, max_part); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(m - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

TruncatedLattice::TruncatedLattice(int m_max) : m_max_(m_max) {
    if (m_max < 0 || m_max > 40) throw std::invalid_argument("TruncatedLattice: m_max out of range");
    for (int m = 0; m <= m_max; ++m) {
        Partition cur;
        gen_partitions(m, m, cur, nodes_);  // per level: largest first is the recursion order
    }
    for (Index k = 0; k < size(); ++k) idx_[nodes_[k]] = k;
    up_.resize(size());
    for (Index k = 0; k < size(); ++k) {
        if (partition_weight(nodes_[k]) >= m_max_) continue;
        for (const Partition& c : covers_of(nodes_[k])) up_[k].push_back(idx_.at(c));
    }
}

Index TruncatedLattice::index(const Partition& p) const {
    const auto it = idx_.find(p);
    if (it == idx_.end()) throw std::out_of_range("TruncatedLattice::index: partition outside truncation");
    return it->second;
}

HermitianOperator TruncatedLattice::adjacency() const {
    HermitianOperator op(size());
    for (Index k = 0; k < size(); ++k) {
        for (Index u : up_[k]) op.add(k, u, 1.0);
    }
    return op;
}

Eigen::MatrixXd TruncatedLattice::raising() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size(), size());
    for (Index k = 0; k < size(); ++k) {
        for (Index u : up_[k]) a(u, k) = 1.0;
    }
    return a;
}

mpz_class hook_dimension(const Partition& sigma) {
    const int m = partition_weight(sigma);
    if (m > 170) throw std::invalid_argument("hook_dimension: m above supported range");
    if (m == 0) return 1;
    std::vector<int> colheight(sigma[0], 0);
    for (int c = 0; c < sigma[0]; ++c) {
        for (std::size_t r = 0; r < sigma.size(); ++r) {
            if (sigma[r] > c) colheight[c] = static_cast<int>(r) + 1;
        }
    }
    mpz_class d;
    mpz_fac_ui(d.get_mpz_t(), m);
    for (std::size_t r = 0; r < sigma.size(); ++r) {
        for (int c = 0; c < sigma[r]; ++c) {
            const int hook = (sigma[r] - c - 1) + (colheight[c] - static_cast<int>(r) - 1) + 1;
            mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), hook);
        }
    }
    return d;
}

DifferentialPosetReport differential_poset_check(const TruncatedLattice& lat) {
    DifferentialPosetReport rep{true, true, 0.0};
    const int m_max = lat.m_max();
    std::vector<Index> interior;
    for (Index k = 0; k < lat.size(); ++k) {
        const Partition& s = lat.nodes()[k];
        if (partition_weight(s) >= m_max) continue;
        interior.push_back(k);
        if (static_cast<int>(covers_of(s).size()) != static_cast<int>(covered_by(s).size()) + 1) {
            rep.degree_identity = false;
        }
    }
    // B = C for interior pairs on the same level
    for (std::size_t a = 0; a < interior.size(); ++a) {
        for (std::size_t b = a + 1; b < interior.size(); ++b) {
            const Partition &s = lat.nodes()[interior[a]], &sp = lat.nodes()[interior[b]];
            if (partition_weight(s) != partition_weight(sp)) continue;
            const auto ca = covers_of(s), cb = covers_of(sp);
            int B = 0;
            for (const auto& u : ca) B += std::count(cb.begin(), cb.end(), u);
            const auto da = covered_by(s), db = covered_by(sp);
            int C = 0;
            for (const auto& u : da) C += std::count(db.begin(), db.end(), u);
            if (B != C) rep.pair_identity = false;
        }
    }
    const Eigen::MatrixXd a_up = lat.raising();
    const Eigen::MatrixXd comm = a_up.transpose() * a_up - a_up * a_up.transpose();
    for (Index r : interior) {
        for (Index c : interior) {
            const double want = (r == c) ? 1.0 : 0.0;
            rep.commutator_error = std::max(rep.commutator_error, std::abs(comm(r, c) - want));
        }
    }
    return rep;
}

WalkState exact_walk_amplitudes(double t, int m_max) {
    if (t < 0.0) throw std::invalid_argument("exact_walk_amplitudes: t must be nonnegative");
    auto lat = std::make_shared<const TruncatedLattice>(m_max);
    WalkState st{lat, StateVector::Zero(lat->size())};
    // amplitude(sigma |- m) = e^{-t^2/2} (-it)^m d_sigma / m!
    static const Complex unit_powers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^m
    for (Index k = 0; k < lat->size(); ++k) {
        const Partition& s = lat->nodes()[k];
        const int m = partition_weight(s);
        if (m > 0 && t == 0.0) continue;
        const double logmag =
            -t * t / 2.0 + (m > 0 ? m * std::log(t) : 0.0) + std::log(hook_dimension(s).get_d()) - std::lgamma(m + 1.0);
        st.amplitudes[k] = std::exp(logmag) * unit_powers[m % 4];
    }
    return st;
}

double poisson_tail_above(double mean, int k) {
    // P(X > k) = 1 - sum_{m<=k} e^{-mean} mean^m / m!, summed in log space
    double cdf = 0.0;
    for (int m = 0; m <= k; ++m) {
        cdf += std::exp(-mean + m * std::log(mean > 0 ? mean : 1e-300) - std::lgamma(m + 1.0));
    }
    return std::max(0.0, 1.0 - cdf);
}

WalkState numeric_walk(double t, int m_max, double evolve_tol) {
    if (t < 0.0) throw std::invalid_argument("numeric_walk: t must be nonnegative");
    const double tail = poisson_tail_above(t * t, m_max - 1);
    if (tail > 1e-8) {
        throw std::invalid_argument("numeric_walk: truncation unsafe: Poisson(t^2) tail " + std::to_string(tail) +
                                    " beyond m_max-1 exceeds 1e-8");
    }
    auto lat = std::make_shared<const TruncatedLattice>(m_max);
    const HermitianOperator h = lat->adjacency();
    StateVector psi = StateVector::Zero(lat->size());
    psi[lat->index({})] = 1.0;
    if (t > 0.0) psi = evolve(h, psi, t, evolve_tol);
    return WalkState{lat, std::move(psi)};
}

double poissonized_plancherel(const Partition& sigma, double t) {
    if (t <= 0.0) throw std::invalid_argument("poissonized_plancherel: t must be positive");
    const int m = partition_weight(sigma);
    const double logd = std::log(hook_dimension(sigma).get_d());
    return std::exp(-t * t + 2.0 * m * std::log(t) + 2.0 * logd - 2.0 * std::lgamma(m + 1.0));
}

Partition rsk_shape(const std::vector<int>& permutation) {
    std::vector<std::vector<int>> rows;
    for (int v : permutation) {
        int r = 0;
        while (true) {
            if (r == static_cast<int>(rows.size())) {
                rows.push_back({v});
                break;
            }
            auto& row = rows[r];
            auto it = std::upper_bound(row.begin(), row.end(), v);
            if (it == row.end()) {
                row.push_back(v);
                break;
            }
            std::swap(*it, v);
            ++r;
        }
    }
    Partition shape(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) shape[r] = static_cast<int>(rows[r].size());
    return shape;
}

Partition rsk_sample(int m, Rng& rng) {
    if (m < 1) throw std::invalid_argument("rsk_sample: m must be >= 1");
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    shuffle_fisher_yates(perm, rng);
    return rsk_shape(perm);
}

std::pair<double, double> limit_shape(double theta) {
    if (theta < -M_PI / 2 - 1e-12 || theta > M_PI / 2 + 1e-12) {
        throw std::invalid_argument("limit_shape: theta outside [-pi/2, pi/2]");
    }
    const double s = std::sin(theta), c = std::cos(theta);
    return {(2.0 * theta / M_PI + 1.0) * s + 2.0 / M_PI * c, (2.0 * theta / M_PI - 1.0) * s + 2.0 / M_PI * c};
}

double limit_shape_profile(double u) {
    if (std::abs(u) >= 2.0) return std::abs(u);
    return 2.0 / M_PI * (u * std::asin(u / 2.0) + std::sqrt(4.0 - u * u));
}

double profile_sup_deviation(const Partition& sigma, int m) {
    if (m <= 0 || partition_weight(sigma) != m) throw std::invalid_argument("profile_sup_deviation: bad m");
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    // boundary corners in (x, y), rows along the x axis: (lam_1, 0), (lam_1, 1),
    // (lam_2, 1), ..., (0, rows); profile in u = x - y, v = x + y
    std::vector<double> us, vs;
    auto push = [&](double x, double y) {
        us.push_back((x - y) * scale);
        vs.push_back((x + y) * scale);
    };
    const int rows = static_cast<int>(sigma.size());
    push(sigma[0], 0.0);
    for (int r = 0; r < rows; ++r) {
        push(sigma[r], r + 1.0);
        push(r + 1 < rows ? sigma[r + 1] : 0.0, r + 1.0);
    }
    std::reverse(us.begin(), us.end());  // increasing u
    std::reverse(vs.begin(), vs.end());

    auto psi = [&](double u) {
        if (u <= us.front() || u >= us.back()) return std::abs(u);
        const auto it = std::upper_bound(us.begin(), us.end(), u);
        const std::size_t k = static_cast<std::size_t>(it - us.begin()) - 1;
        const double u0 = us[k], v0 = vs[k], u1 = us[k + 1], v1 = vs[k + 1];
        return u1 > u0 ? v0 + (v1 - v0) * (u - u0) / (u1 - u0) : std::max(v0, v1);
    };

    const double lo = std::min(-2.2, us.front() - 0.1), hi = std::max(2.2, us.back() + 0.1);
    const int grid = 20000;
    double dev = 0.0;
    for (int k = 0; k <= grid; ++k) {
        const double u = lo + (hi - lo) * k / grid;
        dev = std::max(dev, std::abs(psi(u) - limit_shape_profile(u)));
    }
    for (double u : us) dev = std::max(dev, std::abs(psi(u) - limit_shape_profile(u)));
    return dev;
}

}  // namespace qgrid
