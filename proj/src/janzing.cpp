#include "qgrid/janzing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgrid {

namespace {

inline int site_bit(Index s, int n2, int w) { return static_cast<int>((s >> (n2 - w)) & 1); }

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

HermitianOperator build_H_XY(int n) {
    const int n2 = 2 * n;
    const Index dim = Index(1) << n2;
    HermitianOperator op(dim);
    for (Index s = 0; s < dim; ++s) {
        for (int w = 1; w < n2; ++w) {
            if (site_bit(s, n2, w) == 1 && site_bit(s, n2, w + 1) == 0) {
                op.add(s, s ^ (Index(3) << (n2 - w - 1)), -1.0);
            }
        }
    }
    return op;
}

SingleParticleSystem xy_single_particle(int n) {
    const int n2 = 2 * n;
    SingleParticleSystem sp;
    sp.values.resize(n2);
    sp.vectors.resize(n2, n2);
    const double norm = std::sqrt(2.0 / (n2 + 1));
    for (int r = 1; r <= n2; ++r) {
        sp.values[r - 1] = -2.0 * std::cos(M_PI * r / (n2 + 1));
        for (int j = 1; j <= n2; ++j) {
            sp.vectors(j - 1, r - 1) = norm * std::sin(j * r * M_PI / (n2 + 1));
        }
    }
    return sp;
}

Eigen::MatrixXd xy_weight1_block(int n) {
    const int n2 = 2 * n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n2, n2);
    for (int w = 0; w + 1 < n2; ++w) m(w, w + 1) = m(w + 1, w) = -1.0;
    return m;
}

double timeavg_transition(int n, int l, int j, double T) {
    const int n2 = 2 * n;
    if (l < 1 || l > n2 || j < 1 || j > n2) throw std::invalid_argument("timeavg_transition: site out of range");
    if (!(T > 0.0)) throw std::invalid_argument("timeavg_transition: T must be positive (or infinity)");
    const SingleParticleSystem sp = xy_single_particle(n);
    Eigen::VectorXd c(n2);
    for (int r = 0; r < n2; ++r) c[r] = sp.vectors(j - 1, r) * sp.vectors(l - 1, r);
    const bool infinite = std::isinf(T);
    double tot = 0.0;
    for (int r = 0; r < n2; ++r) {
        for (int rp = 0; rp < n2; ++rp) {
            if (infinite && r != rp) continue;
            // Re[(1 - e^{-i d T})/(i d T)] = sin(dT)/(dT)
            tot += c[r] * c[rp] * (r == rp ? 1.0 : sinc((sp.values[r] - sp.values[rp]) * T));
        }
    }
    return tot;
}

Eigen::MatrixXd xy_weight_n_block(int n) {
    const std::vector<StringConfig> zs = enumerate_strings(n);
    const Index nz = static_cast<Index>(zs.size());
    std::unordered_map<std::uint32_t, Index> rank;
    for (Index k = 0; k < nz; ++k) rank[zs[k].mask()] = k;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nz, nz);
    for (Index k = 0; k < nz; ++k) {
        const StringConfig& z = zs[k];
        for (int w = 1; w < 2 * n; ++w) {
            if (z.bit(w) == 0 && z.bit(w + 1) == 1) {
                const Index k2 = rank.at(z.mask() ^ (3u << (2 * n - w - 1)));
                m(k, k2) = m(k2, k) = -1.0;
            }
        }
    }
    return m;
}

namespace {

double expected_N_manybody(int n, double T, double quad_tol) {
    const std::vector<StringConfig> zs = enumerate_strings(n);
    const Index nz = static_cast<Index>(zs.size());
    Eigen::VectorXd nvals(nz);
    for (Index k = 0; k < nz; ++k) nvals[k] = zs[k].ones(n);

    HermitianOperator h(nz);
    const Eigen::MatrixXd blk = xy_weight_n_block(n);
    for (Index r = 0; r < nz; ++r) {
        for (Index c = r; c < nz; ++c) {
            if (blk(r, c) != 0.0) h.add(r, c, blk(r, c));
        }
    }
    Index start = 0;
    while (!(zs[start] == StringConfig::initial(n))) ++start;

    // composite Simpson over Krylov-propagated states; refine until stable
    auto integrate = [&](int steps) {
        const double dt = T / steps;
        StateVector psi = StateVector::Zero(nz);
        psi[start] = 1.0;
        auto nexp = [&](const StateVector& v) {
            double e = 0.0;
            for (Index k = 0; k < nz; ++k) e += nvals[k] * std::norm(v[k]);
            return e;
        };
        double sum = nexp(psi);  // f(0); N(z_init) = 0 but keep it general
        const int kdim = static_cast<int>(std::min<Index>(nz + 8, 96));
        for (int k = 1; k <= steps; ++k) {
            psi = evolve(h, psi, dt, 1e-12, kdim);
            sum += (k == steps ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0)) * nexp(psi);
        }
        return sum * dt / 3.0 / T;
    };

    int steps = 512;
    double prev = integrate(steps);
    for (int round = 0; round < 8; ++round) {
        steps *= 2;
        const double cur = integrate(steps);
        if (std::abs(cur - prev) <= 0.5 * quad_tol) return cur;
        prev = cur;
    }
    throw ConvergenceError("expected_N: quadrature did not reach tolerance", std::abs(prev));
}

double expected_N_single(int n, double T) {
    double tot = 0.0;
    for (int j = 1; j <= n; ++j) {
        for (int l = n + 1; l <= 2 * n; ++l) tot += timeavg_transition(n, l, j, T);
    }
    return tot;
}

}  // namespace

double expected_N(int n, double T, ExpectedNMethod method, double quad_tol) {
    if (!(T > 0.0)) throw std::invalid_argument("expected_N: T must be positive");
    if (method == ExpectedNMethod::SingleParticle) return expected_N_single(n, T);
    if (n > 4) throw std::invalid_argument("expected_N: many-body route supported for n <= 4");
    return expected_N_manybody(n, T, quad_tol);
}

JanzingSuccess janzing_success_estimate(int n, int K, double T) {
    if (K < 1 || K > n) throw std::invalid_argument("janzing_success_estimate: K out of range");
    const std::vector<StringConfig> zs = enumerate_strings(n);
    const Index nz = static_cast<Index>(zs.size());
    const Eigen::MatrixXd blk = xy_weight_n_block(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk);
    Index start = 0;
    while (!(zs[start] == StringConfig::initial(n))) ++start;

    // Prob_T(z) = sum_{a,b} c_a(z) c_b(z) sinc((E_a - E_b) T),
    // c_a(z) = <z|a><a|z_init> (all real)
    const Eigen::MatrixXd& U = es.eigenvectors();
    const Eigen::VectorXd& E = es.eigenvalues();
    const Eigen::VectorXd c0 = U.row(start).transpose();
    const bool infinite = std::isinf(T);

    JanzingSuccess out{0.0, 0.0, 0.0, 0.0, false};
    for (Index zr = 0; zr < nz; ++zr) {
        Eigen::VectorXd cz(nz);
        for (Index a = 0; a < nz; ++a) cz[a] = U(zr, a) * c0[a];
        double p = 0.0;
        for (Index a = 0; a < nz; ++a) {
            for (Index b = 0; b < nz; ++b) {
                const double d = E[a] - E[b];
                const bool degen = std::abs(d) < 1e-9;  // exact degeneracies up to roundoff
                if (infinite && !degen) continue;
                p += cz[a] * cz[b] * (degen ? 1.0 : sinc(d * T));
            }
        }
        const int N = zs[zr].ones(n);
        const int M = n - N;
        if (N >= K) out.prob_all_outside += p;
        out.expected_M += p * M;
        if (4 * M >= 3 * n) out.prob_M_ge_3n4 += p;
    }
    out.markov_bound = 4.0 / (3.0 * n) * out.expected_M;
    out.markov_holds = out.prob_M_ge_3n4 <= out.markov_bound + 1e-12;
    return out;
}

namespace {

HermitianOperator torus_boundary_block(int n, int D, int k) {
    const int n2 = 2 * n;
    const Index dim = Index(1) << n2;
    const Complex phase = std::exp(Complex(0.0, 2.0 * M_PI * k / D));
    HermitianOperator op(dim);
    for (Index s = 0; s < dim; ++s) {
        for (int w = 1; w < n2; ++w) {
            if (site_bit(s, n2, w) == 1 && site_bit(s, n2, w + 1) == 0) {
                op.add(s, s ^ (Index(3) << (n2 - w - 1)), -1.0);
            }
        }
        // -phase sigma_1^- sigma_2n^+ : site 1 occupied -> site 2n
        if (site_bit(s, n2, 1) == 1 && site_bit(s, n2, n2) == 0) {
            const Index s2 = s ^ (Index(1) << (n2 - 1)) ^ Index(1);
            op.add(s2, s, -phase);
        }
    }
    return op;
}

}  // namespace

TorusBlocks torus_blocks(const TorusSpec& spec) {
    if (spec.n % 2 != 0) {
        throw std::invalid_argument(
            "torus_blocks: ring equivalence is asserted for even n only (odd n needs fermion-parity bookkeeping)");
    }
    if (spec.D < 1 || spec.k < 0 || spec.k >= spec.D) throw std::invalid_argument("torus_blocks: bad (D, k)");
    const int n2 = 2 * spec.n;
    TorusBlocks out{torus_boundary_block(spec.n, spec.D, spec.k), {}, {}};

    Eigen::MatrixXcd w1 = Eigen::MatrixXcd::Zero(n2, n2);
    const Eigen::MatrixXcd full = out.boundary_block.dense();
    for (int a = 1; a <= n2; ++a) {
        for (int b = 1; b <= n2; ++b) {
            w1(a - 1, b - 1) = full(Index(1) << (n2 - a), Index(1) << (n2 - b));
        }
    }
    out.weight1_spectrum = eigensystem_dense(w1).values;

    // persistent-current ring: hop phases e^{-2 pi i phi/2n}, periodic closure
    Eigen::MatrixXcd ring = Eigen::MatrixXcd::Zero(n2, n2);
    const Complex hop = -std::exp(Complex(0.0, -2.0 * M_PI * spec.flux() / n2));
    for (int w = 0; w < n2; ++w) {
        ring(w, (w + 1) % n2) += hop;
        ring((w + 1) % n2, w) += std::conj(hop);
    }
    out.ring_spectrum = eigensystem_dense(ring).values;
    return out;
}

double torus_direct_sum_check(int n, int D) {
    const int n2 = 2 * n;
    const Index cdim = Index(1) << n2;
    const Index dim = D * cdim;
    HermitianOperator full(dim);
    for (int tau = 0; tau < D; ++tau) {
        const Index base = Index(tau) * cdim;
        for (Index s = 0; s < cdim; ++s) {
            for (int w = 1; w < n2; ++w) {
                if (site_bit(s, n2, w) == 1 && site_bit(s, n2, w + 1) == 0) {
                    full.add(base + s, base + (s ^ (Index(3) << (n2 - w - 1))), -1.0);
                }
            }
            if (site_bit(s, n2, 1) == 1 && site_bit(s, n2, n2) == 0) {
                const Index s2 = s ^ (Index(1) << (n2 - 1)) ^ Index(1);
                const Index tau2 = (tau + D - 1) % D;
                full.add(Index(tau2) * cdim + s2, base + s, -1.0);
            }
        }
    }
    Eigen::VectorXd all = eigensystem_dense(full, 1 << 14).values;

    std::vector<double> blocks;
    for (int k = 0; k < D; ++k) {
        const Eigen::VectorXd v = eigensystem_dense(torus_boundary_block(n, D, k)).values;
        blocks.insert(blocks.end(), v.data(), v.data() + v.size());
    }
    std::sort(blocks.begin(), blocks.end());
    double dev = 0.0;
    for (Index i = 0; i < all.size(); ++i) dev = std::max(dev, std::abs(all[i] - blocks[i]));
    return dev;
}

}  // namespace qgrid
