#include "qgrid/xxz.hpp"

#include "qgrid/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace qgrid {

double q_of_lambda(double lambda) {
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("q_of_lambda: lambda outside [0,1]");
    return lambda / (1.0 + std::sqrt(1.0 - lambda * lambda));
}

double lambda_of_q(double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("lambda_of_q: q outside [0,1]");
    if (q == 0.0) return 0.0;
    return 2.0 / (q + 1.0 / q);
}

namespace {

// bit of site w (1-based, site 1 = MSB) in basis index s
inline int site_bit(Index s, int n2, int w) { return static_cast<int>((s >> (n2 - w)) & 1); }

HermitianOperator xxz_projector_form(int n, double lambda) {
    const int n2 = 2 * n;
    const Index dim = Index(1) << n2;
    const double q = q_of_lambda(lambda);
    const double norm = q * q + 1.0;
    // |Psi_q><Psi_q| on (w, w+1): acts on span{|01>, |10>};
    // <10|P|10> = 1/(q^2+1), <01|P|01> = q^2/(q^2+1), <10|P|01> = -q/(q^2+1)
    HermitianOperator op(dim);
    for (Index s = 0; s < dim; ++s) {
        for (int w = 1; w < n2; ++w) {
            const int a = site_bit(s, n2, w), b = site_bit(s, n2, w + 1);
            if (a == b) continue;
            const Index flipped = s ^ (Index(3) << (n2 - w - 1));
            if (a == 1 && b == 0) {
                op.add(s, s, 1.0 / norm);
                op.add(s, flipped, -q / norm);  // <10| P |01> pairs stored once from the 10 side
            } else {
                op.add(s, s, q * q / norm);
            }
        }
    }
    return op;
}

HermitianOperator xxz_pauli_form(int n, double lambda) {
    const int n2 = 2 * n;
    const Index dim = Index(1) << n2;
    const double s1 = std::sqrt(1.0 - lambda * lambda);
    HermitianOperator op(dim);
    for (Index s = 0; s < dim; ++s) {
        double diag = 0.0;
        // (1/4) sqrt(1-l^2) (Z_2n - Z_1);  Z|0> = +|0>
        diag += 0.25 * s1 * ((1 - 2 * site_bit(s, n2, n2)) - (1 - 2 * site_bit(s, n2, 1)));
        for (int w = 1; w < n2; ++w) {
            const int a = site_bit(s, n2, w), b = site_bit(s, n2, w + 1);
            // -(1/4)(Z_w Z_{w+1} - 1)
            diag += (a != b) ? 0.5 : 0.0;
            // -(lambda/4)(XX + YY): hops 01 <-> 10 with amplitude -lambda/2
            if (a == 1 && b == 0) {
                const Index flipped = s ^ (Index(3) << (n2 - w - 1));
                op.add(s, flipped, -0.5 * lambda);
            }
        }
        if (diag != 0.0) op.add(s, s, diag);
    }
    return op;
}

}  // namespace

HermitianOperator build_H_XXZ(int n, double lambda, XXZForm form) {
    if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("build_H_XXZ: lambda outside [0,1]");
    return form == XXZForm::ProjectorSum ? xxz_projector_form(n, lambda) : xxz_pauli_form(n, lambda);
}

Eigen::MatrixXcd weight_n_block(const HermitianOperator& op, int n) {
    const std::vector<StringConfig> zs = enumerate_strings(n);
    const Eigen::MatrixXcd full = op.dense();
    Eigen::MatrixXcd blk(zs.size(), zs.size());
    for (std::size_t r = 0; r < zs.size(); ++r) {
        for (std::size_t c = 0; c < zs.size(); ++c) blk(r, c) = full(zs[r].mask(), zs[c].mask());
    }
    return blk;
}

StateVector xxz_groundstate(int n, double lambda) {
    const double q = q_of_lambda(lambda);
    const std::vector<StringConfig> zs = enumerate_strings(n);
    StateVector v(zs.size());
    for (std::size_t k = 0; k < zs.size(); ++k) {
        // q^{-A(z)} rescaled by the largest weight q^{-n^2}: q^{n^2 - A(z)} <= 1
        v[k] = std::pow(q, n * n - area(zs[k]));  // lambda=0: point mass on z_init (0^0 = 1)
    }
    v.normalize();
    return v;
}

double xxz_gap(int n, double lambda) { return 1.0 - lambda * std::cos(M_PI / (2.0 * n)); }

double xxz_gap_numeric(int n, double lambda) {
    const EigenSystem es = eigensystem_dense(build_H_XXZ(n, lambda));
    int nulldim = 0;
    while (nulldim < es.values.size() && es.values[nulldim] < 1e-8) ++nulldim;
    if (nulldim != 2 * n + 1) {
        throw std::runtime_error("xxz_gap_numeric: unexpected nullspace dimension " + std::to_string(nulldim));
    }
    return es.values[nulldim];
}

double rotated_conjugation_check(const PlaquetteCircuit& circuit, double lambda, int n) {
    FockBasis basis(n);
    HamiltonianTerms terms;
    terms.lambda = lambda;
    terms.circuit = &circuit;
    terms.with_string = false;
    terms.with_input = false;
    const HermitianOperator hc = assemble_H(basis, terms);  // H_circuit(lambda)
    const HermitianOperator hs = restrict_to_strings(hc, basis);

    StringSectorBasis sb(n);
    const Index nx = Index(1) << (2 * n);
    const Index nz = sb.num_strings();

    // W = sum_z V(z) (x) |z><z| in the (x major, z minor) ordering
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(sb.dim(), sb.dim());
    for (Index zr = 0; zr < nz; ++zr) {
        const Eigen::MatrixXcd vz = partial_unitary(circuit, sb.strings()[zr]);
        for (Index xr = 0; xr < nx; ++xr) {
            for (Index xc = 0; xc < nx; ++xc) {
                w(xr * nz + zr, xc * nz + zr) = vz(xr, xc);
            }
        }
    }

    const double s1 = std::sqrt(1.0 - lambda * lambda);
    Eigen::MatrixXcd m = w.adjoint() * hs.dense() * w;
    m -= s1 * Eigen::MatrixXcd::Identity(sb.dim(), sb.dim());

    const Eigen::MatrixXcd hxxz_wn = weight_n_block(build_H_XXZ(n, lambda), n);
    double dev = 0.0;
    for (Index xr = 0; xr < nx; ++xr) {
        for (Index xc = 0; xc < nx; ++xc) {
            for (Index zr = 0; zr < nz; ++zr) {
                for (Index zc = 0; zc < nz; ++zc) {
                    Complex want = (xr == xc) ? 2.0 * hxxz_wn(zr, zc) : Complex(0, 0);
                    dev = std::max(dev, std::abs(m(xr * nz + zr, xc * nz + zc) - want));
                }
            }
        }
    }
    return dev;
}

double npl_bound(double c, double d, double normB) {
    if (c <= 0.0 || d <= 0.0) throw std::invalid_argument("npl_bound: c and d must be positive");
    if (normB < 0.0) throw std::invalid_argument("npl_bound: normB must be nonnegative");
    return c * d / (c + d + normB);
}

Theorem1Certificate theorem1_certificate(int n, double lambda, const PlaquetteCircuit& circuit) {
    FockBasis basis(n);
    HamiltonianTerms terms;
    terms.lambda = lambda;
    terms.circuit = &circuit;
    const HermitianOperator hs = restrict_to_strings(assemble_H(basis, terms), basis);

    double e0, e1;
    if (hs.dim() <= 256) {
        const EigenSystem es = eigensystem_dense(hs);
        e0 = es.values[0];
        e1 = es.values[1];
    } else {
        const EigenSystem es = lowest_eigenpairs_sparse(hs, 2, 1e-10);
        e0 = es.values[0];
        e1 = es.values[1];
    }
    const double s1 = std::sqrt(1.0 - lambda * lambda);
    Theorem1Certificate out;
    out.ground_energy = e0;
    out.numeric_gap = e1 - s1;
    out.bound = (1.0 / (4.0 * n + 3.0)) * (1.0 - lambda * std::cos(M_PI / (2.0 * n)));
    out.pass = out.numeric_gap >= out.bound - 1e-9;
    return out;
}

}  // namespace qgrid
