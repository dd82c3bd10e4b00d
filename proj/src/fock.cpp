#include "qgrid/fock.hpp"

#include "qgrid/io_util.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

namespace qgrid {

FockBasis::FockBasis(int n) : n_(n) {
    if (n < 1 || n > 3) {
        throw std::invalid_argument("FockBasis: full Fock space supported for n <= 3 only");
    }
    for (int w = 1; w <= 2 * n; ++w) lines_.push_back(line_edges(n, w));
    strides_.assign(2 * n, 1);
    Index s = 1;
    for (int w = 2 * n; w >= 1; --w) {
        strides_[w - 1] = s;
        s *= 2 * line_size(w);
    }
    dim_ = s;
}

Index FockBasis::index(const FockConfig& cfg) const {
    Index idx = 0;
    for (int w = 1; w <= 2 * n_; ++w) {
        idx += (2 * cfg.edge[w - 1] + cfg.bit[w - 1]) * strides_[w - 1];
    }
    return idx;
}

FockConfig FockBasis::config(Index idx) const {
    FockConfig cfg;
    cfg.edge.resize(2 * n_);
    cfg.bit.resize(2 * n_);
    for (int w = 1; w <= 2 * n_; ++w) {
        const Index loc = (idx / strides_[w - 1]) % (2 * line_size(w));
        cfg.edge[w - 1] = static_cast<int>(loc / 2);
        cfg.bit[w - 1] = static_cast<int>(loc % 2);
    }
    return cfg;
}

Index FockBasis::string_state_index(const StringConfig& z, std::uint32_t x) const {
    FockConfig cfg;
    cfg.edge.resize(2 * n_);
    cfg.bit.resize(2 * n_);
    const auto edges = string_edges(z);
    for (int w = 1; w <= 2 * n_; ++w) {
        const auto& le = lines_[w - 1];
        const auto it = std::find(le.begin(), le.end(), edges[w - 1]);
        cfg.edge[w - 1] = static_cast<int>(it - le.begin());
        cfg.bit[w - 1] = (x >> (2 * n_ - w)) & 1u;
    }
    return index(cfg);
}

int segment_count(const FockBasis& basis, const FockConfig& cfg) {
    int L = 1;
    for (int w = 1; w < 2 * basis.n(); ++w) {
        if (basis.edge_of(cfg, w).lower_vertex() != basis.edge_of(cfg, w + 1).upper_vertex()) ++L;
    }
    return L;
}

namespace {

HermitianOperator build_string(const FockBasis& basis) {
    HermitianOperator op(basis.dim());
    for (Index idx = 0; idx < basis.dim(); ++idx) {
        const FockConfig cfg = basis.config(idx);
        const int L = segment_count(basis, cfg);
        if (L > 1) op.add(idx, idx, 2.0 * (L - 1));
    }
    return op;
}

HermitianOperator build_init(const FockBasis& basis) {
    const int n = basis.n();
    HermitianOperator op(basis.dim());
    for (Index idx = 0; idx < basis.dim(); ++idx) {
        const FockConfig cfg = basis.config(idx);
        double v = 0.0;
        if (basis.edge_of(cfg, 1).t(n) == n + 1) v += 1.0;
        if (basis.edge_of(cfg, 2 * n).t(n) == n + 1) v += 1.0;
        if (v != 0.0) op.add(idx, idx, v);
    }
    return op;
}

HermitianOperator build_input(const FockBasis& basis) {
    const int n = basis.n();
    HermitianOperator op(basis.dim());
    for (Index idx = 0; idx < basis.dim(); ++idx) {
        const FockConfig cfg = basis.config(idx);
        double v = 0.0;
        for (int w = 1; w <= 2 * n; ++w) {
            if (cfg.bit[w - 1] == 1 && basis.edge_of(cfg, w).t(n) <= n) v += 1.0;
        }
        if (v != 0.0) op.add(idx, idx, v);
    }
    return op;
}

struct PlaquetteEdges {
    int left_w, left_w1, right_w, right_w1;  // edge indices within their lines
    int w;
};

PlaquetteEdges locate_plaquette(const FockBasis& basis, const Cell& c) {
    const int n = basis.n();
    if (c.i < 0 || c.j < 0 || c.i >= n || c.j >= n) throw std::invalid_argument("build_term: invalid plaquette");
    const int w = c.i + c.j + 1;
    auto find = [&](int line, const Edge& e) {
        const auto& le = basis.line(line);
        const auto it = std::find(le.begin(), le.end(), e);
        if (it == le.end()) throw std::logic_error("locate_plaquette: edge not on line");
        return static_cast<int>(it - le.begin());
    };
    return {find(w, {c.i, c.j, 0}), find(w + 1, {c.i + 1, c.j, 1}), find(w, {c.i, c.j, 1}),
            find(w + 1, {c.i, c.j + 1, 0}), w};
}

// diag_only: both-before + both-after projector part of H_gate; hop with
// coefficient `coeff` times <beta delta|U|alpha gamma>.
HermitianOperator build_plaquette(const FockBasis& basis, const Cell& c, const Eigen::Matrix4cd& u, double coeff,
                                  bool with_diag) {
    const PlaquetteEdges pe = locate_plaquette(basis, c);
    HermitianOperator op(basis.dim());
    const int w = pe.w;
    for (Index idx = 0; idx < basis.dim(); ++idx) {
        FockConfig cfg = basis.config(idx);
        const int e_w = cfg.edge[w - 1], e_w1 = cfg.edge[w];
        if (e_w == pe.left_w && e_w1 == pe.left_w1) {
            if (with_diag) op.add(idx, idx, 1.0);
            const int alpha = cfg.bit[w - 1], gamma = cfg.bit[w];
            for (int beta = 0; beta < 2; ++beta) {
                for (int delta = 0; delta < 2; ++delta) {
                    const Complex amp = -coeff * u(beta * 2 + delta, alpha * 2 + gamma);
                    if (amp == Complex(0, 0)) continue;
                    FockConfig to = cfg;
                    to.edge[w - 1] = pe.right_w;
                    to.bit[w - 1] = beta;
                    to.edge[w] = pe.right_w1;
                    to.bit[w] = delta;
                    op.add(basis.index(to), idx, amp);  // h.c. implied by storage
                }
            }
        } else if (with_diag && e_w == pe.right_w && e_w1 == pe.right_w1) {
            op.add(idx, idx, 1.0);
        }
    }
    return op;
}

}  // namespace

HermitianOperator build_term(const FockBasis& basis, TermKind kind, const HamiltonianTerms& terms,
                             std::optional<Cell> plaquette) {
    switch (kind) {
        case TermKind::String: return build_string(basis);
        case TermKind::Init: return build_init(basis);
        case TermKind::Input: return build_input(basis);
        case TermKind::Prop: {
            if (!plaquette) throw std::invalid_argument("build_term: Prop requires a plaquette");
            const Eigen::Matrix4cd u =
                terms.circuit ? terms.circuit->gate(*plaquette) : Eigen::Matrix4cd::Identity();
            return build_plaquette(basis, *plaquette, u, 1.0, false);
        }
        case TermKind::Gate: {
            if (!plaquette) throw std::invalid_argument("build_term: Gate requires a plaquette");
            const Eigen::Matrix4cd u =
                terms.circuit ? terms.circuit->gate(*plaquette) : Eigen::Matrix4cd::Identity();
            return build_plaquette(basis, *plaquette, u, terms.lambda, true);
        }
    }
    throw std::logic_error("build_term: bad kind");
}

HermitianOperator assemble_H(const FockBasis& basis, const HamiltonianTerms& terms) {
    if (terms.lambda < 0.0 || terms.lambda > 1.0) throw std::invalid_argument("assemble_H: lambda outside [0,1]");
    const int n = basis.n();
    HermitianOperator h(basis.dim());
    if (terms.with_string) h.add_scaled(build_string(basis));
    if (terms.with_gates) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                h.add_scaled(build_term(basis, TermKind::Gate, terms, Cell{i, j}));
            }
        }
    }
    if (terms.with_init) {
        const double s = std::sqrt(1.0 - terms.lambda * terms.lambda);
        if (s != 0.0) h.add_scaled(build_init(basis), s);
    }
    if (terms.with_input) h.add_scaled(build_input(basis));
    return h;
}

StringSectorBasis::StringSectorBasis(int n) : n_(n), strings_(enumerate_strings(n)) {
    dim_ = static_cast<Index>(strings_.size()) * (Index(1) << (2 * n));
}

Index StringSectorBasis::rank(const StringConfig& z) const {
    const auto it = std::lower_bound(strings_.begin(), strings_.end(), z);
    if (it == strings_.end() || !(*it == z)) throw std::logic_error("StringSectorBasis::rank: not a string");
    return it - strings_.begin();
}

std::vector<Index> StringSectorBasis::fock_indices(const FockBasis& basis) const {
    std::vector<Index> out(dim_);
    for (std::uint32_t x = 0; x < (1u << (2 * n_)); ++x) {
        for (Index zr = 0; zr < num_strings(); ++zr) {
            out[index(x, zr)] = basis.string_state_index(strings_[zr], x);
        }
    }
    return out;
}

HermitianOperator restrict_to_strings(const HermitianOperator& op, const FockBasis& basis) {
    StringSectorBasis sb(basis.n());
    const std::vector<Index> fidx = sb.fock_indices(basis);
    std::unordered_map<Index, Index> back;
    back.reserve(fidx.size());
    for (Index k = 0; k < static_cast<Index>(fidx.size()); ++k) back[fidx[k]] = k;

    HermitianOperator out(sb.dim());
    for (const auto& e : op.entries()) {
        const auto r = back.find(e.row);
        const auto c = back.find(e.col);
        if (r != back.end() && c != back.end()) out.add(r->second, c->second, e.value);
    }
    return out;
}

double string_sector_leakage(const HermitianOperator& op, const FockBasis& basis) {
    StringSectorBasis sb(basis.n());
    const std::vector<Index> fidx = sb.fock_indices(basis);
    std::unordered_set<Index> in(fidx.begin(), fidx.end());
    double leak = 0.0;
    for (const auto& e : op.entries()) {
        if (in.count(e.row) != in.count(e.col)) leak = std::max(leak, std::abs(e.value));
    }
    return leak;
}

void dump_operator_csv(const HermitianOperator& op, std::ostream& os) {
    os << "row,col,re,im\n";
    for (const auto& e : op.entries()) {
        os << e.row << ',' << e.col << ',' << format_double(e.value.real()) << ',' << format_double(e.value.imag())
           << '\n';
    }
}

}  // namespace qgrid
