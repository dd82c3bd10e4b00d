// circuit_io.hpp -- circuit file format and seeded random circuits.
//
// File schema (JSON): { "n": int, "region": {"kind": "center"|"left_corner"|
// "custom", "size": int, "origin": [i, j]?}, "gates": [{"plaquette": [i, j],
// "unitary": 4x4 array of [re, im]}] }. Omitted plaquettes are identity.

#pragma once

#include "qgrid/geometry.hpp"
#include "qgrid/rng.hpp"

#include <filesystem>
#include <string>

namespace qgrid {

struct CircuitParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

PlaquetteCircuit parse_circuit(const std::filesystem::path& path);
PlaquetteCircuit parse_circuit_json(const std::string& text);
std::string circuit_to_json(const PlaquetteCircuit& circuit);

// Haar-distributed 4x4 unitary (QR of a complex Gaussian with phase fix).
Eigen::Matrix4cd random_two_qubit_unitary(Rng& rng);

// Circuit with an independent random gate on every region plaquette.
PlaquetteCircuit random_circuit(const GridSpec& grid, std::uint64_t seed);

}  // namespace qgrid
