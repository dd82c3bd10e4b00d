// adiabatic.hpp -- adiabatic algorithm driver and measurement statistics:
// the groundstate family Phi_lambda(x), exact edge/left-half probabilities,
// the reflection bijection, Schroedinger integration of H(lambda(t)) on the
// string sector, and the final measurement.

#pragma once

#include "qgrid/fock.hpp"
#include "qgrid/geometry.hpp"
#include "qgrid/numerics.hpp"
#include "qgrid/rational.hpp"
#include "qgrid/rng.hpp"

#include <functional>
#include <map>

namespace qgrid {

// Probability that a uniformly random string passes through edge (i,j,x):
// C(i+j, j) C(2n-(i+j+1), n-j-x) / C(2n, n).
Rational edge_probability(int n, const Edge& e);

// Sum_z q^{-A(z)} |x,z>_V, normalized, on the string-sector basis
// (StringSectorBasis ordering). For x = 0 this is the groundstate of
// H(lambda) with energy sqrt(1-lambda^2).
StateVector groundstate_family(int n, double lambda, const PlaquetteCircuit& circuit, std::uint32_t x);

// Probability that particle w sits on the left half (t <= n) in
// |Phi_lambda(x)> (independent of x); >= 1/2, and exactly 1/2 at lambda = 1.
double particle_left_probability(int n, double lambda, int w);

// Reflect the segment of z between the two center-line vertices enclosing
// edge position w about the vertical center line. The result passes through
// the mirror edge and has A(z') <= A(z). Requires t(edge_w) <= n.
StringConfig reflect_string(const StringConfig& z, int w);

struct Schedule {
    double total_time = 0.0;
    int steps = 0;
    std::function<double(double)> profile;  // monotone [0,1] -> [0,1]; default linear

    double lambda_at(double s) const { return profile ? profile(s) : s; }
};

struct AdiabaticRun {
    StateVector final_state;  // on StringSectorBasis(n)
    std::vector<std::pair<double, double>> fidelity_trace;  // (lambda, |<Phi_lambda|psi>|^2)
};

// Integrate i dpsi/dt = H(lambda(t/T)) psi from |0^{2n}>|z_init> using a
// piecewise-constant midpoint Hamiltonian per step.
AdiabaticRun run_adiabatic(int n, const PlaquetteCircuit& circuit, const Schedule& schedule, double tol = 1e-8,
                           int trace_points = 21);

struct MeasurementDistribution {
    std::vector<double> string_probs;        // per enumerate_strings rank
    double success_probability = 0.0;        // all region cells completed
    std::map<std::uint32_t, double> conditional_output;  // region-line bits -> prob (given success)
    std::vector<int> output_lines;           // the 2k lines read out
};

// Exact measurement statistics of a string-sector state: string marginal,
// success flag per the interaction region, and the conditional distribution
// of the internal bits on the region lines.
MeasurementDistribution measure_output(const StateVector& state, const GridSpec& grid);

// Draw one (z, x) outcome from the exact distribution.
struct MeasurementOutcome {
    StringConfig string;
    bool all_right_of_region = false;
    std::uint32_t output_bits = 0;  // defined when the flag is set
};
MeasurementOutcome sample_measurement(const StateVector& state, const GridSpec& grid, Rng& rng);

// Born distribution of the full circuit on |0^{2n}>, marginalized to the
// region lines. Computed with the layer-by-layer simulator (independent of
// partial_unitary).
std::map<std::uint32_t, double> circuit_output_distribution(const PlaquetteCircuit& circuit);

double total_variation(const std::map<std::uint32_t, double>& a, const std::map<std::uint32_t, double>& b);

}  // namespace qgrid
