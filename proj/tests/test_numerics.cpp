#include "qgrid/numerics.hpp"

#include "qgrid/fock.hpp"
#include "qgrid/rng.hpp"
#include "qgrid/xxz.hpp"
#include "qgrid/young.hpp"

#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

using namespace qgrid;

namespace {

HermitianOperator random_sparse(Index dim, int per_row, Rng& rng) {
    HermitianOperator op(dim);
    for (Index r = 0; r < dim; ++r) {
        op.add(r, r, standard_normal(rng));
        for (int k = 0; k < per_row; ++k) {
            const Index c = static_cast<Index>(uniform_below(rng, dim));
            op.add(r, c, Complex(standard_normal(rng), standard_normal(rng)));
        }
    }
    return op;
}

}  // namespace

TEST_CASE("eigensystem_dense basics") {
    HermitianOperator id3(3);
    id3.shift_diagonal(1.0);
    const EigenSystem es = eigensystem_dense(id3);
    for (int i = 0; i < 3; ++i) CHECK(es.values[i] == doctest::Approx(1.0).epsilon(1e-14));

    HermitianOperator px(2);
    px.add(0, 1, 1.0);
    const EigenSystem ex = eigensystem_dense(px);
    CHECK(ex.values[0] == doctest::Approx(-1.0));
    CHECK(ex.values[1] == doctest::Approx(1.0));
}

TEST_CASE("eigensystem_dense: single q-singlet projector spectrum (2n=2)") {
    const EigenSystem es = eigensystem_dense(build_H_XXZ(1, 1.0));
    CHECK(es.values.size() == 4);
    CHECK(es.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(es.values[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(es.values[3] == doctest::Approx(1.0));
}

TEST_CASE("eigensystem_dense: reconstruction residual and ordering") {
    Rng rng(5);
    const HermitianOperator op = random_sparse(60, 4, rng);
    const EigenSystem es = eigensystem_dense(op);
    const Eigen::MatrixXcd m = op.dense();
    const double scale = es.values.cwiseAbs().maxCoeff();
    for (int k = 0; k < 60; ++k) {
        CHECK((m * es.vectors.col(k) - es.values[k] * es.vectors.col(k)).norm() <= 1e-9 * scale);
        if (k > 0) CHECK(es.values[k] >= es.values[k - 1]);
    }
}

TEST_CASE("eigensystem_dense refuses above the cutoff") {
    HermitianOperator big(10);
    CHECK_THROWS_WITH_AS(eigensystem_dense(big, 8), doctest::Contains("use iterative solver"), DenseCutoffError);
}

TEST_CASE("lowest_eigenpairs_sparse on a diagonal operator") {
    HermitianOperator d(100);
    for (Index i = 0; i < 100; ++i) d.add(i, i, static_cast<double>(i));
    const EigenSystem es = lowest_eigenpairs_sparse(d, 2, 1e-10);
    CHECK(es.values[0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(es.vectors.col(0).dot(es.vectors.col(1))) < 1e-9);
}

TEST_CASE("lowest_eigenpairs_sparse: H_string nullspace and first excited level") {
    FockBasis basis(2);
    const HermitianOperator hs = build_term(basis, TermKind::String, {});
    CHECK(hs.dim() == 1024);
    const EigenSystem ground = lowest_eigenpairs_sparse(hs, 1, 1e-9);
    CHECK(ground.values[0] == doctest::Approx(0.0).epsilon(1e-9));

    // lowest eigenvalue orthogonal to the nullspace S_string is 2
    StringSectorBasis sb(2);
    std::vector<StateVector> null_basis;
    for (Index fi : sb.fock_indices(basis)) {
        StateVector v = StateVector::Zero(basis.dim());
        v[fi] = 1.0;
        null_basis.push_back(std::move(v));
    }
    const EigenSystem excited = lowest_eigenpairs_sparse(hs, 1, 1e-9, null_basis);
    CHECK(excited.values[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("lowest_eigenpairs_sparse reports non-convergence") {
    Rng rng(9);
    const HermitianOperator op = random_sparse(400, 3, rng);
    CHECK_THROWS_AS(lowest_eigenpairs_sparse(op, 1, 1e-13, {}, 4), ConvergenceError);
}

TEST_CASE("dense and sparse solvers agree on shared instances") {
    const HermitianOperator op = build_H_XXZ(2, 0.7);
    const EigenSystem dense = eigensystem_dense(op);
    const EigenSystem sparse = lowest_eigenpairs_sparse(op, 3, 1e-10);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(dense.values[k] - sparse.values[k]) < 1e-8);
}

TEST_CASE("evolve: zero duration and the single-hop closed form") {
    HermitianOperator hop(2);
    hop.add(0, 1, -1.0);
    StateVector psi(2);
    psi << 1.0, 0.0;
    const StateVector same = evolve(hop, psi, 0.0, 1e-10);
    CHECK((same - psi).norm() == 0.0);

    for (double t : {0.3, 1.7}) {
        const StateVector out = evolve(hop, psi, t, 1e-12);
        CHECK(std::abs(out[0] - Complex(std::cos(t), 0)) < 1e-10);
        CHECK(std::abs(out[1] - Complex(0, std::sin(t))) < 1e-10);
    }
}

TEST_CASE("evolve matches the dense exponential on a random operator") {
    Rng rng(31);
    const HermitianOperator op = random_sparse(120, 3, rng);
    StateVector psi(120);
    for (Index i = 0; i < 120; ++i) psi[i] = Complex(standard_normal(rng), standard_normal(rng));
    psi.normalize();
    const double t = 2.4, tol = 1e-9;
    const StateVector krylov = evolve(op, psi, t, tol);
    const Eigen::MatrixXcd u = (Complex(0, -t) * op.dense()).exp();
    CHECK((krylov - u * psi).norm() < tol);
}

TEST_CASE("evolve conserves energy and norm") {
    Rng rng(77);
    const HermitianOperator op = random_sparse(80, 3, rng);
    StateVector psi(80);
    for (Index i = 0; i < 80; ++i) psi[i] = Complex(standard_normal(rng), standard_normal(rng));
    psi.normalize();
    const double tol = 1e-9;
    const double e0 = std::real(psi.dot(op.apply(psi)));
    StateVector cur = psi;
    for (int k = 0; k < 5; ++k) {
        cur = evolve(op, cur, 0.8, tol);
        CHECK(std::abs(cur.norm() - 1.0) < tol);
        CHECK(std::abs(std::real(cur.dot(op.apply(cur))) - e0) < 10 * tol * op.norm_bound());
    }
}

TEST_CASE("evolve: Young-lattice vacuum amplitude e^{-1/2} at t=1") {
    const TruncatedLattice lat(12);
    const HermitianOperator h = lat.adjacency();
    StateVector psi = StateVector::Zero(lat.size());
    psi[lat.index({})] = 1.0;
    const StateVector out = evolve(h, psi, 1.0, 1e-8);
    CHECK(std::abs(out[lat.index({})] - Complex(std::exp(-0.5), 0)) < 1e-6);
}

TEST_CASE("HermitianOperator stores one triangle with implied mirror") {
    HermitianOperator op(3);
    op.add(2, 0, Complex(0.0, 1.0));  // folded to (0,2) with conjugate
    op.add(0, 2, Complex(0.0, -1.0));
    const auto es = op.entries();
    REQUIRE(es.size() == 1);
    CHECK(es[0].row == 0);
    CHECK(es[0].col == 2);
    CHECK(es[0].value == Complex(0.0, -2.0));
    const Eigen::MatrixXcd m = op.dense();
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}
