#include "qgrid/circuit_io.hpp"

#include "qgrid/io_util.hpp"

#include <json.hpp>

#include <fstream>

namespace qgrid {

using nlohmann::json;

namespace {

RegionKind kind_from_string(const std::string& s) {
    if (s == "center") return RegionKind::AdiabaticCenter;
    if (s == "left_corner") return RegionKind::JanzingLeftCorner;
    if (s == "custom") return RegionKind::Custom;
    throw CircuitParseError("unknown region kind '" + s + "'");
}

std::string kind_to_string(RegionKind k) {
    switch (k) {
        case RegionKind::AdiabaticCenter: return "center";
        case RegionKind::JanzingLeftCorner: return "left_corner";
        case RegionKind::Custom: return "custom";
    }
    return "custom";
}

}  // namespace

PlaquetteCircuit parse_circuit_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CircuitParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        GridSpec grid;
        grid.n = j.at("n").get<int>();
        if (j.contains("region")) {
            const json& r = j.at("region");
            grid.region_kind = kind_from_string(r.value("kind", std::string("center")));
            grid.region_size = r.value("size", 1);
            if (grid.region_kind == RegionKind::Custom) {
                const auto o = r.at("origin").get<std::vector<int>>();
                if (o.size() != 2) throw CircuitParseError("region origin must be [i, j]");
                grid.region_origin = {o[0], o[1]};
            }
        }
        PlaquetteCircuit circuit(grid);
        for (const json& g : j.value("gates", json::array())) {
            const auto p = g.at("plaquette").get<std::vector<int>>();
            if (p.size() != 2) throw CircuitParseError("plaquette must be [i, j]");
            const json& u = g.at("unitary");
            if (u.size() != 4) throw CircuitParseError("unitary must be a 4x4 array");
            Eigen::Matrix4cd m;
            for (int r = 0; r < 4; ++r) {
                if (u[r].size() != 4) throw CircuitParseError("unitary must be a 4x4 array");
                for (int c = 0; c < 4; ++c) {
                    const json& e = u[r][c];
                    if (e.size() != 2) throw CircuitParseError("matrix entries must be [re, im]");
                    m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
                }
            }
            const double dev = PlaquetteCircuit::unitarity_deviation(m);
            if (dev > 1e-12) {
                throw CircuitParseError("gate at plaquette [" + std::to_string(p[0]) + "," + std::to_string(p[1]) +
                                        "] is not unitary (deviation " + format_double(dev) + ")");
            }
            circuit.set_gate({p[0], p[1]}, m);
        }
        return circuit;
    } catch (const json::exception& e) {
        throw CircuitParseError(std::string("bad circuit schema: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw CircuitParseError(e.what());
    }
}

PlaquetteCircuit parse_circuit(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw CircuitParseError("cannot open circuit file " + path.string());
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return parse_circuit_json(text);
}

std::string circuit_to_json(const PlaquetteCircuit& circuit) {
    const GridSpec& grid = circuit.grid();
    json j;
    j["n"] = grid.n;
    j["region"]["kind"] = kind_to_string(grid.region_kind);
    j["region"]["size"] = grid.region_size;
    if (grid.region_kind == RegionKind::Custom) j["region"]["origin"] = {grid.region_origin.i, grid.region_origin.j};
    j["gates"] = json::array();
    for (const auto& [cell, u] : circuit.gates()) {
        json g;
        g["plaquette"] = {cell.i, cell.j};
        json rows = json::array();
        for (int r = 0; r < 4; ++r) {
            json row = json::array();
            for (int c = 0; c < 4; ++c) row.push_back({u(r, c).real(), u(r, c).imag()});
            rows.push_back(row);
        }
        g["unitary"] = rows;
        j["gates"].push_back(g);
    }
    return j.dump(2);
}

Eigen::Matrix4cd random_two_qubit_unitary(Rng& rng) {
    Eigen::Matrix4cd g;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) g(r, c) = Complex(standard_normal(rng), standard_normal(rng));
    }
    const Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
    Eigen::Matrix4cd q = qr.householderQ();
    const Eigen::Matrix4cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 4; ++c) {
        const Complex d = r(c, c);
        q.col(c) *= d / std::abs(d);
    }
    return q;
}

PlaquetteCircuit random_circuit(const GridSpec& grid, std::uint64_t seed) {
    PlaquetteCircuit circuit(grid);
    Rng rng(seed);
    for (const Cell& c : grid.region_cells()) circuit.set_gate(c, random_two_qubit_unitary(rng));
    return circuit;
}

}  // namespace qgrid
