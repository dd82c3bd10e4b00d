#include "qgrid/adiabatic.hpp"

#include "qgrid/statevector_sim.hpp"
#include "qgrid/xxz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgrid {

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact: r*(n-k+i) is divisible by i at each step
    }
    return r;
}

Rational edge_probability(int n, const Edge& e) {
    if (!edge_valid(n, e)) throw std::invalid_argument("edge_probability: invalid edge coordinate");
    const std::int64_t num = binomial(e.i + e.j, e.j) * binomial(2 * n - (e.i + e.j + 1), n - e.j - e.x);
    return Rational(num, binomial(2 * n, n));
}

StateVector groundstate_family(int n, double lambda, const PlaquetteCircuit& circuit, std::uint32_t x) {
    if (circuit.grid().n != n) throw std::invalid_argument("groundstate_family: grid size mismatch");
    const double q = q_of_lambda(lambda);
    StringSectorBasis sb(n);
    const Index nz = sb.num_strings();
    const Index nx = Index(1) << (2 * n);
    StateVector psi = StateVector::Zero(sb.dim());
    for (Index zr = 0; zr < nz; ++zr) {
        const StringConfig& z = sb.strings()[zr];
        const double wgt = std::pow(q, n * n - area(z));  // q^{-A(z)} rescaled by q^{-n^2}
        if (wgt == 0.0) continue;
        // V(z)|x> via the layer simulator restricted to completed cells
        Eigen::VectorXcd vx = Eigen::VectorXcd::Zero(nx);
        vx[x] = 1.0;
        for (const Cell& c : cells_left_of(z)) {
            if (circuit.is_identity(c)) continue;
            apply_gate_inplace(vx, n, c.i + c.j + 1, circuit.gate(c));
        }
        for (Index xr = 0; xr < nx; ++xr) {
            if (vx[xr] != Complex(0, 0)) psi[sb.index(static_cast<std::uint32_t>(xr), zr)] += wgt * vx[xr];
        }
    }
    psi.normalize();
    return psi;
}

double particle_left_probability(int n, double lambda, int w) {
    if (w < 1 || w > 2 * n) throw std::invalid_argument("particle_left_probability: line out of range");
    const double q = q_of_lambda(lambda);
    double num = 0.0, den = 0.0;
    for (const StringConfig& z : enumerate_strings(n)) {
        const double p = std::pow(q, 2 * (n * n - area(z)));  // |amplitude|^2
        den += p;
        if (string_edges(z)[w - 1].t(n) <= n) num += p;
    }
    return num / den;
}

StringConfig reflect_string(const StringConfig& z, int w) {
    const int n = z.n();
    if (w < 1 || w > 2 * n) throw std::invalid_argument("reflect_string: line out of range");
    if (string_edges(z)[w - 1].t(n) > n) {
        throw std::invalid_argument("reflect_string: edge is not on the left half");
    }
    // vertices on the center line L after s steps: ones(s) = s/2
    int v1 = -1, v2 = -1;
    for (int s = 0; s <= w - 1; ++s) {
        if (2 * z.ones(s) == s) v1 = s;
    }
    for (int s = w; s <= 2 * n; ++s) {
        if (2 * z.ones(s) == s) {
            v2 = s;
            break;
        }
    }
    if (v1 < 0 || v2 < 0) throw std::logic_error("reflect_string: center-line vertices not found");
    std::vector<int> bits(2 * n);
    for (int k = 1; k <= 2 * n; ++k) {
        bits[k - 1] = (k > v1 && k <= v2) ? 1 - z.bit(k) : z.bit(k);
    }
    return StringConfig::from_bits(bits);
}

namespace {

// H(lambda)|_S as an affine combination A + lambda B + sqrt(1-lambda^2) C, so
// schedule integration restricts the Fock operators once.
struct SectorComponents {
    HermitianOperator base;  // H_string + gate diagonals + H_input
    HermitianOperator hop;   // sum_p H_prop^p with circuit gates
    HermitianOperator init;  // H_init
};

SectorComponents sector_components(int n, const PlaquetteCircuit& circuit) {
    FockBasis basis(n);
    HamiltonianTerms terms;
    terms.circuit = &circuit;

    HermitianOperator base_full(basis.dim());
    base_full.add_scaled(build_term(basis, TermKind::String, terms));
    base_full.add_scaled(build_term(basis, TermKind::Input, terms));
    HermitianOperator hop_full(basis.dim());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            HamiltonianTerms g = terms;
            g.lambda = 0.0;
            base_full.add_scaled(build_term(basis, TermKind::Gate, g, Cell{i, j}));  // diagonal part
            hop_full.add_scaled(build_term(basis, TermKind::Prop, terms, Cell{i, j}));
        }
    }
    return {restrict_to_strings(base_full, basis), restrict_to_strings(hop_full, basis),
            restrict_to_strings(build_term(basis, TermKind::Init, terms), basis)};
}

HermitianOperator combine(const SectorComponents& sc, double lambda) {
    HermitianOperator h(sc.base.dim());
    h.add_scaled(sc.base);
    h.add_scaled(sc.hop, lambda);
    h.add_scaled(sc.init, std::sqrt(1.0 - lambda * lambda));
    return h;
}

}  // namespace

AdiabaticRun run_adiabatic(int n, const PlaquetteCircuit& circuit, const Schedule& schedule, double tol,
                           int trace_points) {
    if (schedule.total_time < 0.0 || schedule.steps < 0) throw std::invalid_argument("run_adiabatic: bad schedule");
    const SectorComponents sc = sector_components(n, circuit);

    AdiabaticRun run;
    run.final_state = groundstate_family(n, 0.0, circuit, 0);  // |0^{2n}>|z_init>

    auto record = [&](double lam) {
        const StateVector phi = groundstate_family(n, lam, circuit, 0);
        run.fidelity_trace.emplace_back(lam, std::norm(phi.dot(run.final_state)));
    };

    if (schedule.total_time == 0.0 || schedule.steps == 0) {
        record(1.0);
        return run;
    }

    const double dt = schedule.total_time / schedule.steps;
    const int trace_every = std::max(1, schedule.steps / std::max(1, trace_points - 1));
    record(0.0);
    for (int k = 0; k < schedule.steps; ++k) {
        const double lam = schedule.lambda_at((k + 0.5) / schedule.steps);
        const HermitianOperator h = combine(sc, lam);
        run.final_state = evolve(h, run.final_state, dt, tol / schedule.steps);
        if ((k + 1) % trace_every == 0 || k + 1 == schedule.steps) {
            record(schedule.lambda_at(static_cast<double>(k + 1) / schedule.steps));
        }
    }
    return run;
}

namespace {

bool string_succeeds(const StringConfig& z, const GridSpec& grid) {
    for (const Cell& c : grid.region_cells()) {
        if (!cell_left_of(z, c)) return false;
    }
    return true;
}

std::uint32_t extract_output_bits(std::uint32_t x, int n, const std::vector<int>& lines) {
    std::uint32_t out = 0;
    for (int w : lines) out = (out << 1) | ((x >> (2 * n - w)) & 1u);
    return out;
}

}  // namespace

MeasurementDistribution measure_output(const StateVector& state, const GridSpec& grid) {
    const int n = grid.n;
    StringSectorBasis sb(n);
    if (state.size() != sb.dim()) throw std::invalid_argument("measure_output: state dimension mismatch");
    MeasurementDistribution out;
    out.output_lines = grid.region_lines();
    out.string_probs.assign(sb.num_strings(), 0.0);
    const Index nx = Index(1) << (2 * n);
    for (Index zr = 0; zr < sb.num_strings(); ++zr) {
        const bool succ = string_succeeds(sb.strings()[zr], grid);
        for (Index x = 0; x < nx; ++x) {
            const double p = std::norm(state[sb.index(static_cast<std::uint32_t>(x), zr)]);
            out.string_probs[zr] += p;
            if (succ && p > 0.0) {
                out.success_probability += p;
                out.conditional_output[extract_output_bits(static_cast<std::uint32_t>(x), n, out.output_lines)] += p;
            }
        }
    }
    if (out.success_probability > 0.0) {
        for (auto& [bits, p] : out.conditional_output) p /= out.success_probability;
    }
    return out;
}

MeasurementOutcome sample_measurement(const StateVector& state, const GridSpec& grid, Rng& rng) {
    const int n = grid.n;
    StringSectorBasis sb(n);
    if (state.size() != sb.dim()) throw std::invalid_argument("sample_measurement: state dimension mismatch");
    double u = uniform_01(rng);
    Index pick = state.size() - 1;
    for (Index k = 0; k < state.size(); ++k) {
        u -= std::norm(state[k]);
        if (u <= 0.0) {
            pick = k;
            break;
        }
    }
    const auto [x, zr] = sb.split(pick);
    MeasurementOutcome mo{sb.strings()[zr], false, 0};
    mo.all_right_of_region = string_succeeds(mo.string, grid);
    if (mo.all_right_of_region) mo.output_bits = extract_output_bits(x, n, grid.region_lines());
    return mo;
}

std::map<std::uint32_t, double> circuit_output_distribution(const PlaquetteCircuit& circuit) {
    const GridSpec& grid = circuit.grid();
    const int n = grid.n;
    const Eigen::VectorXcd psi = simulate_circuit(circuit, 0);
    const std::vector<int> lines = grid.region_lines();
    std::map<std::uint32_t, double> out;
    for (Index x = 0; x < psi.size(); ++x) {
        const double p = std::norm(psi[x]);
        if (p > 0.0) out[extract_output_bits(static_cast<std::uint32_t>(x), n, lines)] += p;
    }
    return out;
}

double total_variation(const std::map<std::uint32_t, double>& a, const std::map<std::uint32_t, double>& b) {
    double tv = 0.0;
    for (const auto& [k, v] : a) {
        const auto it = b.find(k);
        tv += std::abs(v - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : b) {
        if (!a.count(k)) tv += v;
    }
    return 0.5 * tv;
}

}  // namespace qgrid
