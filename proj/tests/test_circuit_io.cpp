#include "qgrid/circuit_io.hpp"

#include <doctest.h>

using namespace qgrid;

TEST_CASE("empty gate list parses to the all-identity circuit") {
    const PlaquetteCircuit c = parse_circuit_json(R"({"n": 2, "region": {"kind": "center", "size": 1}})");
    CHECK(c.grid().n == 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(c.is_identity({i, j}));
    }
}

TEST_CASE("permutation gate accepted, non-unitary rejected with deviation") {
    const std::string swap_like = R"({
      "n": 2, "region": {"kind": "center", "size": 1},
      "gates": [{"plaquette": [1, 1], "unitary": [
        [[1,0],[0,0],[0,0],[0,0]],
        [[0,0],[0,0],[1,0],[0,0]],
        [[0,0],[1,0],[0,0],[0,0]],
        [[0,0],[0,0],[0,0],[1,0]]]}]})";
    CHECK_NOTHROW(parse_circuit_json(swap_like));

    const std::string stretched = R"({
      "n": 2, "region": {"kind": "center", "size": 1},
      "gates": [{"plaquette": [1, 1], "unitary": [
        [[1.1,0],[0,0],[0,0],[0,0]],
        [[0,0],[1,0],[0,0],[0,0]],
        [[0,0],[0,0],[1,0],[0,0]],
        [[0,0],[0,0],[0,0],[1,0]]]}]})";
    CHECK_THROWS_WITH_AS(parse_circuit_json(stretched), doctest::Contains("deviation"), CircuitParseError);
}

TEST_CASE("malformed JSON and out-of-region gates are rejected") {
    CHECK_THROWS_AS(parse_circuit_json("{ not json"), CircuitParseError);
    const std::string outside = R"({
      "n": 2, "region": {"kind": "center", "size": 1},
      "gates": [{"plaquette": [0, 0], "unitary": [
        [[1,0],[0,0],[0,0],[0,0]],
        [[0,0],[1,0],[0,0],[0,0]],
        [[0,0],[0,0],[1,0],[0,0]],
        [[0,0],[0,0],[0,0],[1,0]]]}]})";
    CHECK_THROWS_AS(parse_circuit_json(outside), CircuitParseError);
}

TEST_CASE("round trip through JSON") {
    GridSpec g;
    g.n = 3;
    g.region_kind = RegionKind::Custom;
    g.region_size = 2;
    g.region_origin = {0, 1};
    const PlaquetteCircuit a = random_circuit(g, 99);
    const PlaquetteCircuit b = parse_circuit_json(circuit_to_json(a));
    CHECK(b.grid().n == 3);
    CHECK(b.grid().region_origin == Cell{0, 1});
    for (const auto& [cell, u] : a.gates()) {
        CHECK((b.gate(cell) - u).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("random circuits are seed-deterministic and unitary") {
    GridSpec g;
    g.n = 2;
    const PlaquetteCircuit a = random_circuit(g, 7), b = random_circuit(g, 7), c = random_circuit(g, 8);
    CHECK((a.gate({1, 1}) - b.gate({1, 1})).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.gate({1, 1}) - c.gate({1, 1})).cwiseAbs().maxCoeff() > 1e-3);
    CHECK(PlaquetteCircuit::unitarity_deviation(a.gate({1, 1})) < 1e-13);
}
