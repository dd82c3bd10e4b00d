#include "qgrid/geometry.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qgrid {

bool edge_valid(int n, const Edge& e) {
    if (e.i < 0 || e.j < 0 || e.i > n || e.j > n) return false;
    if (e.x != 0 && e.x != 1) return false;
    if (e.x == 0 && e.i + 1 > n) return false;
    if (e.x == 1 && e.j + 1 > n) return false;
    return true;
}

Edge edge_from_tw(int n, int t, int w) {
    // t = n - i + j + x with i + j = w - 1  =>  2j + x = t - n + w - 1
    const int s = t - n + w - 1;
    if (s < 0) throw std::out_of_range("edge_from_tw: coordinate out of grid");
    Edge e{w - 1 - (s - s % 2) / 2, (s - s % 2) / 2, s % 2};
    if (e.line() != w || e.t(n) != t || !edge_valid(n, e)) throw std::out_of_range("edge_from_tw: coordinate out of grid");
    return e;
}

std::vector<Edge> line_edges(int n, int w) {
    if (w < 1 || w > 2 * n) throw std::out_of_range("line_edges: line out of range");
    std::vector<Edge> out;
    for (int j = 0; j < w; ++j) {
        const int i = w - 1 - j;
        for (int x : {0, 1}) {
            Edge e{i, j, x};
            if (edge_valid(n, e)) out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end(), [n](const Edge& a, const Edge& b) { return a.t(n) < b.t(n); });
    return out;
}

StringConfig::StringConfig(int n, std::uint32_t bits) : n_(n), bits_(bits) {
    if (n < 1 || n > 15) throw std::invalid_argument("StringConfig: n out of supported range");
    if (std::popcount(bits) != n || (bits >> (2 * n)) != 0) {
        throw std::invalid_argument("StringConfig: bitstring must have length 2n and weight n");
    }
}

StringConfig StringConfig::from_bits(const std::vector<int>& z) {
    const int n2 = static_cast<int>(z.size());
    std::uint32_t m = 0;
    for (int k = 0; k < n2; ++k) {
        if (z[k]) m |= 1u << (n2 - 1 - k);
    }
    return StringConfig(n2 / 2, m);
}

StringConfig StringConfig::initial(int n) { return StringConfig(n, (1u << n) - 1u); }
StringConfig StringConfig::final(int n) { return StringConfig(n, ((1u << n) - 1u) << n); }

std::string StringConfig::str() const {
    std::string s(2 * n_, '0');
    for (int w = 1; w <= 2 * n_; ++w) s[w - 1] = bit(w) ? '1' : '0';
    return s;
}

int StringConfig::ones(int k) const {
    const std::uint32_t m = bits_ >> (2 * n_ - k);
    return std::popcount(m);
}

std::vector<StringConfig> enumerate_strings(int n) {
    std::vector<StringConfig> out;
    const std::uint32_t top = 1u << (2 * n);
    for (std::uint32_t m = 0; m < top; ++m) {
        if (std::popcount(m) == n) out.emplace_back(n, m);
    }
    // numeric order of the mask equals lexicographic order of z_1..z_2n
    return out;
}

int area(const StringConfig& z) {
    const int n = z.n();
    int s = 0;
    for (int w = 1; w <= 2 * n; ++w) s += w * z.bit(w);
    return s - n * (n + 1) / 2;
}

int kinks(const StringConfig& z) {
    int k = 0;
    for (int w = 1; w < 2 * z.n(); ++w) k += z.bit(w) != z.bit(w + 1);
    return k;
}

std::vector<Edge> string_edges(const StringConfig& z) {
    std::vector<Edge> out;
    int i = 0, j = 0;
    for (int w = 1; w <= 2 * z.n(); ++w) {
        const int x = z.bit(w);
        out.push_back({i, j, x});
        (x == 0 ? i : j) += 1;
    }
    return out;
}

bool cell_left_of(const StringConfig& z, const Cell& c) { return z.ones(c.i + c.j + 1) >= c.j + 1; }

std::vector<Cell> cells_left_of(const StringConfig& z) {
    const int n = z.n();
    std::vector<Cell> out;
    // application order: j ascending, i descending -- a linear extension of
    // the causal partial order (i+1,j) < (i,j) < (i,j+1)
    for (int j = 0; j < n; ++j) {
        for (int i = n - 1; i >= 0; --i) {
            if (cell_left_of(z, {i, j})) out.push_back({i, j});
        }
    }
    return out;
}

std::pair<StringConfig, Cell> advance_string(const StringConfig& z, int w) {
    const int n = z.n();
    if (w < 1 || w >= 2 * n || z.bit(w) != 0 || z.bit(w + 1) != 1) {
        throw std::invalid_argument("advance_string: bits at (w, w+1) are not 01");
    }
    const std::uint32_t flipped = z.mask() ^ (3u << (2 * n - w - 1));
    const int j = z.ones(w - 1);
    return {StringConfig(n, flipped), Cell{w - 1 - j, j}};
}

Cell GridSpec::origin() const {
    switch (region_kind) {
        case RegionKind::AdiabaticCenter: return {(n + 1) / 2, (n + 1) / 2};
        case RegionKind::JanzingLeftCorner: return {n - region_size, 0};
        case RegionKind::Custom: return region_origin;
    }
    throw std::logic_error("GridSpec::origin: bad kind");
}

std::vector<Cell> GridSpec::region_cells() const {
    const Cell o = origin();
    std::vector<Cell> out;
    for (int a = 0; a < region_size; ++a) {
        for (int b = 0; b < region_size; ++b) out.push_back({o.i + a, o.j + b});
    }
    return out;
}

bool GridSpec::in_region(const Cell& c) const {
    const Cell o = origin();
    return c.i >= o.i && c.i < o.i + region_size && c.j >= o.j && c.j < o.j + region_size;
}

std::vector<int> GridSpec::region_lines() const {
    const Cell o = origin();
    std::vector<int> out;
    for (int w = o.i + o.j + 1; w <= o.i + o.j + 2 * region_size; ++w) out.push_back(w);
    return out;
}

void GridSpec::validate() const {
    if (n < 1) throw std::invalid_argument("GridSpec: n must be >= 1");
    if (region_size < 1) throw std::invalid_argument("GridSpec: region_size must be >= 1");
    const Cell o = origin();
    if (o.i < 0 || o.j < 0 || o.i + region_size > n || o.j + region_size > n) {
        throw std::invalid_argument("GridSpec: region does not fit inside the plaquette grid");
    }
}

PlaquetteCircuit::PlaquetteCircuit(GridSpec grid) : grid_(grid), identity_(Eigen::Matrix4cd::Identity()) {
    grid_.validate();
}

double PlaquetteCircuit::unitarity_deviation(const Eigen::Matrix4cd& u) {
    return (u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

void PlaquetteCircuit::set_gate(const Cell& c, const Eigen::Matrix4cd& u) {
    if (c.i < 0 || c.j < 0 || c.i >= grid_.n || c.j >= grid_.n) {
        throw std::invalid_argument("PlaquetteCircuit: plaquette outside the grid");
    }
    if (!grid_.in_region(c)) {
        throw std::invalid_argument("PlaquetteCircuit: non-identity gate outside the interaction region");
    }
    const double dev = unitarity_deviation(u);
    if (dev > 1e-12) {
        throw std::invalid_argument("PlaquetteCircuit: gate is not unitary (deviation " + std::to_string(dev) + ")");
    }
    gates_[c] = u;
}

const Eigen::Matrix4cd& PlaquetteCircuit::gate(const Cell& c) const {
    auto it = gates_.find(c);
    return it == gates_.end() ? identity_ : it->second;
}

bool PlaquetteCircuit::is_identity(const Cell& c) const {
    auto it = gates_.find(c);
    if (it == gates_.end()) return true;
    return (it->second - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() == 0.0;
}

Eigen::MatrixXcd embed_two_qubit(int n, int w, const Eigen::Matrix4cd& u) {
    const int nq = 2 * n;
    if (w < 1 || w + 1 > nq) throw std::out_of_range("embed_two_qubit: line out of range");
    const Index dim = Index(1) << nq;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    const int sh_w = nq - w;        // bit position of qubit w (0-based from LSB)
    const int sh_w1 = nq - w - 1;   // qubit w+1
    for (Index s = 0; s < dim; ++s) {
        const int a = static_cast<int>((s >> sh_w) & 1);
        const int b = static_cast<int>((s >> sh_w1) & 1);
        const Index base = s & ~((Index(1) << sh_w) | (Index(1) << sh_w1));
        const int colk = a * 2 + b;
        for (int rowk = 0; rowk < 4; ++rowk) {
            const Complex v = u(rowk, colk);
            if (v == Complex(0, 0)) continue;
            const Index s2 = base | (Index(rowk >> 1) << sh_w) | (Index(rowk & 1) << sh_w1);
            out(s2, s) += v;
        }
    }
    return out;
}

Eigen::MatrixXcd partial_unitary(const PlaquetteCircuit& circuit, const StringConfig& z) {
    const int n = circuit.grid().n;
    if (z.n() != n) throw std::invalid_argument("partial_unitary: string and circuit size mismatch");
    const Index dim = Index(1) << (2 * n);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(dim, dim);
    for (const Cell& c : cells_left_of(z)) {
        if (circuit.is_identity(c)) continue;
        v = embed_two_qubit(n, c.i + c.j + 1, circuit.gate(c)) * v;
    }
    return v;
}

}  // namespace qgrid
