#include "qgrid/geometry.hpp"

#include "qgrid/circuit_io.hpp"
#include "qgrid/rng.hpp"
#include "qgrid/statevector_sim.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace qgrid;

TEST_CASE("enumerate_strings: counts and lexicographic order") {
    const auto s1 = enumerate_strings(1);
    REQUIRE(s1.size() == 2);
    CHECK(s1[0].str() == "01");
    CHECK(s1[1].str() == "10");
    CHECK(enumerate_strings(2).size() == 6);
    CHECK(enumerate_strings(5).size() == 252);
    const auto s2 = enumerate_strings(2);
    CHECK(std::is_sorted(s2.begin(), s2.end(), [](const auto& a, const auto& b) { return a.str() < b.str(); }));
    CHECK(std::set<StringConfig>(s2.begin(), s2.end()).size() == 6);
}

TEST_CASE("area: boundary strings and the 0101 example") {
    for (int n : {1, 2, 3, 4}) {
        CHECK(area(StringConfig::initial(n)) == n * n);
        CHECK(area(StringConfig::final(n)) == 0);
    }
    CHECK(area(StringConfig::from_bits({0, 1, 0, 1})) == 3);
}

TEST_CASE("area grading: each 01->10 flip decreases A by exactly 1") {
    for (int n : {2, 3, 4}) {
        for (const StringConfig& z : enumerate_strings(n)) {
            for (int w = 1; w < 2 * n; ++w) {
                if (z.bit(w) == 0 && z.bit(w + 1) == 1) {
                    const auto [z2, cell] = advance_string(z, w);
                    CHECK(area(z2) == area(z) - 1);
                    CHECK(cell_left_of(z2, cell));
                    CHECK(!cell_left_of(z, cell));
                }
            }
        }
    }
}

TEST_CASE("kinks") {
    for (int n : {1, 2, 3}) CHECK(kinks(StringConfig::initial(n)) == 1);
    CHECK(kinks(StringConfig::from_bits({0, 1, 0, 1})) == 3);
    CHECK(kinks(StringConfig::from_bits({1, 0, 0, 1})) == 2);
    for (const StringConfig& z : enumerate_strings(3)) CHECK(kinks(z) >= 1);
}

TEST_CASE("edge coordinate conversion") {
    const Edge corner{0, 0, 0};
    CHECK(corner.line() == 1);
    for (int n : {1, 2, 3}) CHECK(line_edges(n, 1).front() == corner);  // first edge of line 1

    // n=2: on line 2, reached after bits 0,0 -> (i=1, j=0, x=0)
    const auto edges = string_edges(StringConfig::from_bits({0, 0, 1, 1}));
    CHECK(edges[1] == Edge{1, 0, 0});

    // round trip over every edge of the n=3 grid
    const int n = 3;
    for (int w = 1; w <= 2 * n; ++w) {
        for (const Edge& e : line_edges(n, w)) {
            CHECK(edge_from_tw(n, e.t(n), w) == e);
        }
    }
    CHECK_THROWS_AS(edge_from_tw(2, 1, 1), std::out_of_range);  // line 1 has t in {2,3} only
    CHECK_THROWS_AS(edge_from_tw(2, 5, 2), std::out_of_range);
}

TEST_CASE("string_edges: left boundary start, explicit n=1 trace, connectivity") {
    const int n = 2;
    for (const Edge& e : string_edges(StringConfig::initial(n))) CHECK(e.t(n) <= n);

    const auto e1 = string_edges(StringConfig::from_bits({0, 1}));
    REQUIRE(e1.size() == 2);
    CHECK(e1[0] == Edge{0, 0, 0});
    CHECK(e1[1] == Edge{1, 0, 1});

    for (const StringConfig& z : enumerate_strings(3)) {
        const auto es = string_edges(z);
        for (std::size_t k = 0; k + 1 < es.size(); ++k) {
            CHECK(es[k].lower_vertex() == es[k + 1].upper_vertex());
        }
    }
}

TEST_CASE("each string crosses each line exactly once") {
    for (int n : {2, 3, 4}) {
        const auto zs = enumerate_strings(n);
        for (int w = 1; w <= 2 * n; ++w) {
            std::map<Edge, int> count;
            for (const StringConfig& z : zs) count[string_edges(z)[w - 1]] += 1;
            int total = 0;
            for (const Edge& e : line_edges(n, w)) total += count[e];
            CHECK(total == static_cast<int>(zs.size()));
        }
    }
}

namespace {

GridSpec whole_grid_region(int n) {
    GridSpec g;
    g.n = n;
    g.region_kind = RegionKind::Custom;
    g.region_size = n;
    g.region_origin = {0, 0};
    return g;
}

// random linear extension of the causal order on cells_left_of(z)
std::vector<Cell> random_topological_order(const StringConfig& z, Rng& rng) {
    std::vector<Cell> pending = cells_left_of(z);
    std::vector<Cell> out;
    auto is_min = [&](const Cell& c) {
        // predecessors of (i,j): (i+1, j) and (i, j-1)
        for (const Cell& o : pending) {
            if ((o.i == c.i + 1 && o.j == c.j) || (o.i == c.i && o.j == c.j - 1)) return false;
        }
        return true;
    };
    while (!pending.empty()) {
        std::vector<std::size_t> mins;
        for (std::size_t k = 0; k < pending.size(); ++k) {
            if (is_min(pending[k])) mins.push_back(k);
        }
        const std::size_t pick = mins[uniform_below(rng, mins.size())];
        out.push_back(pending[pick]);
        pending.erase(pending.begin() + pick);
    }
    return out;
}

}  // namespace

TEST_CASE("partial_unitary: boundary cases and the flip relation") {
    const int n = 2;
    const PlaquetteCircuit circuit = random_circuit(whole_grid_region(n), 42);
    const Index dim = Index(1) << (2 * n);

    CHECK((partial_unitary(circuit, StringConfig::initial(n)) - Eigen::MatrixXcd::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() < 1e-14);

    // V(1^n 0^n) equals the layer-by-layer simulator applied to every basis state
    const Eigen::MatrixXcd vfull = partial_unitary(circuit, StringConfig::final(n));
    CHECK((vfull.adjoint() * vfull - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
    for (Index x = 0; x < dim; ++x) {
        const Eigen::VectorXcd ref = simulate_circuit(circuit, static_cast<std::uint32_t>(x));
        CHECK((vfull.col(x) - ref).norm() < 1e-12);
    }

    // V(z') V(z)^dag = U_p for the flipped plaquette
    for (const StringConfig& z : enumerate_strings(n)) {
        for (int w = 1; w < 2 * n; ++w) {
            if (z.bit(w) != 0 || z.bit(w + 1) != 1) continue;
            const auto [z2, cell] = advance_string(z, w);
            const Eigen::MatrixXcd lhs = partial_unitary(circuit, z2) * partial_unitary(circuit, z).adjoint();
            const Eigen::MatrixXcd up = embed_two_qubit(n, cell.i + cell.j + 1, circuit.gate(cell));
            CHECK((lhs - up).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("gate ordering is well-defined across random topological orders") {
    Rng rng(123);
    for (int n : {2, 3}) {
        const PlaquetteCircuit circuit = random_circuit(whole_grid_region(n), 7 + n);
        for (const StringConfig& z : enumerate_strings(n)) {
            const Eigen::MatrixXcd ref = partial_unitary(circuit, z);
            for (int rep = 0; rep < 3; ++rep) {
                Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(ref.rows(), ref.cols());
                for (const Cell& c : random_topological_order(z, rng)) {
                    v = embed_two_qubit(n, c.i + c.j + 1, circuit.gate(c)) * v;
                }
                CHECK((v - ref).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("GridSpec regions") {
    GridSpec center;
    center.n = 2;  // default kind: center, size 1 at (1,1)
    center.validate();
    CHECK(center.origin() == Cell{1, 1});
    CHECK(center.region_lines() == std::vector<int>{3, 4});

    GridSpec corner;
    corner.n = 4;
    corner.region_kind = RegionKind::JanzingLeftCorner;
    corner.region_size = 2;
    corner.validate();
    CHECK(corner.origin() == Cell{2, 0});
    CHECK(corner.region_cells().size() == 4);
    CHECK(corner.region_lines().size() == 4);

    GridSpec bad;
    bad.n = 2;
    bad.region_kind = RegionKind::Custom;
    bad.region_size = 2;
    bad.region_origin = {1, 1};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("PlaquetteCircuit rejects bad gates") {
    GridSpec g;
    g.n = 2;  // center, single plaquette (1,1)
    PlaquetteCircuit circuit(g);
    Eigen::Matrix4cd notu = Eigen::Matrix4cd::Identity() * 1.1;
    CHECK_THROWS_AS(circuit.set_gate({1, 1}, notu), std::invalid_argument);
    CHECK_THROWS_AS(circuit.set_gate({0, 0}, Eigen::Matrix4cd::Identity()), std::invalid_argument);
    Rng rng(3);
    CHECK_NOTHROW(circuit.set_gate({1, 1}, random_two_qubit_unitary(rng)));
    CHECK(circuit.is_identity({0, 1}));
}
