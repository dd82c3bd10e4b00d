#include "qgrid/xxz.hpp"

#include "qgrid/circuit_io.hpp"
#include "qgrid/fock.hpp"
#include "qgrid/rng.hpp"

#include <doctest.h>

#include <bit>

using namespace qgrid;

TEST_CASE("q_of_lambda") {
    CHECK(q_of_lambda(1.0) == doctest::Approx(1.0));
    CHECK(q_of_lambda(0.8) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(q_of_lambda(0.0) == 0.0);
    CHECK_THROWS_AS(q_of_lambda(1.2), std::invalid_argument);
    for (double q : {0.1, 0.5, 0.9}) CHECK(q_of_lambda(lambda_of_q(q)) == doctest::Approx(q).epsilon(1e-13));
}

TEST_CASE("both algebraic forms of the chain agree entrywise") {
    for (int n : {1, 2, 3}) {
        for (double lambda : {0.0, 0.3, 0.7, 1.0}) {
            const Eigen::MatrixXcd a = build_H_XXZ(n, lambda, XXZForm::ProjectorSum).dense();
            const Eigen::MatrixXcd b = build_H_XXZ(n, lambda, XXZForm::Pauli).dense();
            CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("Hamming weight block structure") {
    const HermitianOperator h = build_H_XXZ(2, 0.6);
    for (const auto& e : h.entries()) {
        CHECK(std::popcount(static_cast<std::uint64_t>(e.row)) == std::popcount(static_cast<std::uint64_t>(e.col)));
    }
}

TEST_CASE("n=1 spectrum and the lambda=1 nullspace") {
    const EigenSystem es = eigensystem_dense(build_H_XXZ(1, 0.8));
    CHECK(es.values[2] < 1e-12);
    CHECK(es.values[3] == doctest::Approx(1.0));

    for (int n : {1, 2, 3}) {
        const EigenSystem sym = eigensystem_dense(build_H_XXZ(n, 1.0));
        int nulldim = 0;
        while (nulldim < sym.values.size() && sym.values[nulldim] < 1e-10) ++nulldim;
        CHECK(nulldim == 2 * n + 1);  // symmetric subspace
    }
}

TEST_CASE("xxz_groundstate: explicit n=1 form, zero eigenvector, string ranking") {
    for (double lambda : {0.3, 0.8, 1.0}) {
        const double q = q_of_lambda(lambda);
        const StateVector v = xxz_groundstate(1, lambda);
        // amplitudes prop. to q^{-A}: A(01)=1, A(10)=0 -> (1, q)/sqrt(1+q^2)
        CHECK(std::abs(v[0] - Complex(1.0 / std::sqrt(1 + q * q), 0)) < 1e-14);
        CHECK(std::abs(v[1] - Complex(q / std::sqrt(1 + q * q), 0)) < 1e-14);
    }

    for (int n : {2, 3}) {
        for (double lambda : {0.4, 1.0}) {
            const Eigen::MatrixXcd blk = weight_n_block(build_H_XXZ(n, lambda), n);
            const StateVector v = xxz_groundstate(n, lambda);
            CHECK((blk * v).norm() < 1e-10);
        }
        // lambda = 1: uniform; lambda < 1: z_init most likely
        const StateVector u = xxz_groundstate(n, 1.0);
        for (Index k = 0; k < u.size(); ++k) CHECK(std::abs(u[k]) == doctest::Approx(std::abs(u[0])));
        const StateVector w = xxz_groundstate(n, 0.6);
        const auto zs = enumerate_strings(n);
        Index init_rank = 0;
        while (!(zs[init_rank] == StringConfig::initial(n))) ++init_rank;
        for (Index k = 0; k < w.size(); ++k) {
            if (k != init_rank) CHECK(std::abs(w[k]) < std::abs(w[init_rank]));
        }
    }

    // lambda = 0 convention: point mass on z_init
    const StateVector v0 = xxz_groundstate(2, 0.0);
    CHECK(std::abs(v0[0] - Complex(1, 0)) < 1e-15);  // 0011 is rank 0
    CHECK(v0.tail(5).norm() == 0.0);
}

TEST_CASE("gap formula against explicit diagonalization") {
    CHECK(xxz_gap(1, 0.37) == doctest::Approx(1.0));
    CHECK(xxz_gap(2, 1.0) == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(xxz_gap(2, 0.0) == doctest::Approx(1.0));
    for (int n : {1, 2, 3}) {
        for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            CHECK(std::abs(xxz_gap_numeric(n, lambda) - xxz_gap(n, lambda)) < 1e-8);
        }
    }
}

TEST_CASE("Q-conjugation maps the uniform vector to the groundstate") {
    for (int n : {2, 3}) {
        for (double lambda : {0.35, 0.8}) {
            const double q = q_of_lambda(lambda);
            const auto zs = enumerate_strings(n);
            StateVector v(zs.size());
            for (std::size_t k = 0; k < zs.size(); ++k) {
                // Q = tensor_w T_q^w with T_q = diag(1, q^{-1}); rescale by q^{f(z_init)}
                double logw = 0.0;
                for (int w = 1; w <= 2 * n; ++w) {
                    if (zs[k].bit(w)) logw += w;
                }
                v[k] = std::pow(q, -(logw - (3.0 * n * n + n) / 2.0));  // f(z) - f_max, so weights <= 1
            }
            v.normalize();
            CHECK((v - xxz_groundstate(n, lambda)).norm() < 1e-10);
        }
    }
}

TEST_CASE("rotated conjugation: circuit Hamiltonian equals twice the chain") {
    GridSpec g;
    g.n = 2;
    PlaquetteCircuit identity_circuit(g);
    for (double lambda : {0.0, 0.5, 1.0}) {
        CHECK(rotated_conjugation_check(identity_circuit, lambda, 2) < 1e-10);
    }

    GridSpec whole;
    whole.n = 2;
    whole.region_kind = RegionKind::Custom;
    whole.region_size = 2;
    whole.region_origin = {0, 0};
    const PlaquetteCircuit rc = random_circuit(whole, 31);
    CHECK(rotated_conjugation_check(rc, 0.7, 2) < 1e-10);
}

TEST_CASE("npl_bound: closed form and random-instance property") {
    CHECK(npl_bound(1.0, 1.0, 0.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(npl_bound(0.0, 1.0, 1.0), std::invalid_argument);

    const int n = 2;
    for (double lambda : {0.0, 0.6, 1.0}) {
        const double d = 1.0 - lambda * std::cos(M_PI / (2 * n));
        CHECK(npl_bound(0.5, d, 2.0 * n) == doctest::Approx(0.5 * d / (0.5 + d + 2 * n)));
    }

    Rng rng(1234);
    for (int rep = 0; rep < 6; ++rep) {
        const int dim = 12 + static_cast<int>(uniform_below(rng, 28));
        const int rank = 1 + static_cast<int>(uniform_below(rng, dim - 2));
        Eigen::MatrixXcd g(rank, dim), gb(dim, dim);
        for (int r = 0; r < rank; ++r) {
            for (int c = 0; c < dim; ++c) g(r, c) = Complex(standard_normal(rng), standard_normal(rng));
        }
        for (int r = 0; r < dim; ++r) {
            for (int c = 0; c < dim; ++c) gb(r, c) = Complex(standard_normal(rng), standard_normal(rng));
        }
        const Eigen::MatrixXcd ha = g.adjoint() * g;          // PSD with nontrivial nullspace
        const Eigen::MatrixXcd hb = gb.adjoint() * gb / dim;  // PSD
        const EigenSystem esa = eigensystem_dense(ha);
        const double zero_tol = 1e-9 * esa.values.cwiseAbs().maxCoeff();
        int nulldim = 0;
        while (esa.values[nulldim] < zero_tol) ++nulldim;
        REQUIRE(nulldim > 0);
        const Eigen::MatrixXcd p = esa.vectors.leftCols(nulldim);  // nullspace basis of H_A
        const Eigen::MatrixXcd hb_restricted = p.adjoint() * hb * p;
        const double c = smallest_above(eigensystem_dense(hb_restricted).values, zero_tol);
        const double d = smallest_above(esa.values, zero_tol);
        const double normb = eigensystem_dense(hb).values.cwiseAbs().maxCoeff();
        const double gamma_sum = smallest_above(eigensystem_dense(Eigen::MatrixXcd(ha + hb)).values, zero_tol);
        CHECK(gamma_sum >= npl_bound(c, d, normb) - 1e-9);
    }
}

TEST_CASE("theorem 1 certificate at n=1 and n=2") {
    GridSpec g1;
    g1.n = 1;
    g1.region_kind = RegionKind::Custom;
    g1.region_size = 1;
    g1.region_origin = {0, 0};
    const PlaquetteCircuit c1 = random_circuit(g1, 3);
    for (double lambda : {0.0, 0.5, 1.0}) {
        const Theorem1Certificate cert = theorem1_certificate(1, lambda, c1);
        CHECK(cert.bound == doctest::Approx(1.0 / 7.0));  // cos(pi/2) = 0
        CHECK(cert.pass);
    }

    GridSpec g2;
    g2.n = 2;
    const PlaquetteCircuit c2 = random_circuit(g2, 9);
    const Theorem1Certificate at1 = theorem1_certificate(2, 1.0, c2);
    CHECK(at1.bound == doctest::Approx((1.0 - std::sqrt(2.0) / 2.0) / 11.0).epsilon(1e-12));
    CHECK(at1.bound == doctest::Approx(0.02663).epsilon(1e-3));
    CHECK(at1.numeric_gap > at1.bound);
    CHECK(at1.pass);
    const Theorem1Certificate at0 = theorem1_certificate(2, 0.0, c2);
    CHECK(at0.numeric_gap >= 1.0 / 11.0);
    CHECK(at0.ground_energy == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gamma(H_A) lower bound from the proof, n=2") {
    FockBasis basis(2);
    GridSpec g;
    g.n = 2;
    const PlaquetteCircuit circuit = random_circuit(g, 77);
    for (double lambda : {0.2, 0.7, 1.0}) {
        HamiltonianTerms terms;
        terms.lambda = lambda;
        terms.circuit = &circuit;
        terms.with_input = false;
        HermitianOperator ha = assemble_H(basis, terms);  // string + circuit(lambda)
        const double s1 = std::sqrt(1.0 - lambda * lambda);
        ha.shift_diagonal(-s1);
        const EigenSystem es = eigensystem_dense(ha);
        const double gamma = smallest_above(es.values, 1e-8);
        const double bound = std::min(2.0 - 2.0 * lambda * std::cos(M_PI / 4.0), 2.0 - s1);
        CHECK(gamma >= bound - 1e-9);
    }
}
