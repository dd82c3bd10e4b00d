// geometry.hpp -- rotated n x n grid, edge coordinates, string configurations
// and partial circuit unitaries.
//
// Conventions (fixed project-wide):
//   * Vertices (i,j), 0 <= i,j <= n. The top corner is (0,0); a down-left
//     step increments i, a down-right step increments j.
//   * Edge (i,j,x): upper vertex (i,j); x=0 goes down-left to (i+1,j),
//     x=1 goes down-right to (i,j+1). The edge lies on horizontal line
//     w = i+j+1 (w = 1..2n) and at unrotated position t = n-i+j+x (1..2n).
//     The left half of the grid is t <= n.
//   * A string is a bitstring z = z_1..z_2n with wt(z) = n; bit w is the
//     direction of step w (0 = down-left, 1 = down-right).
//   * Plaquette (cell) (i,j), 0 <= i,j < n: top vertex (i,j). Its gate acts
//     on the particles of lines (w, w+1) with w = i+j+1. Inside 4x4 gate
//     matrices the first tensor factor is the lower line index w.
//   * Cell (i,j) lies to the left of string z iff ones(z, i+j+1) >= j+1,
//     where ones(z,k) counts 1-bits among the first k bits.

#pragma once

#include "qgrid/numerics.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace qgrid {

struct Cell {
    int i = 0, j = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct Edge {
    int i = 0, j = 0, x = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;

    int line() const { return i + j + 1; }
    int t(int n) const { return n - i + j + x; }
    std::pair<int, int> upper_vertex() const { return {i, j}; }
    std::pair<int, int> lower_vertex() const { return x == 0 ? std::pair{i + 1, j} : std::pair{i, j + 1}; }
};

bool edge_valid(int n, const Edge& e);
Edge edge_from_tw(int n, int t, int w);  // throws on out-of-grid coordinates

// All valid edges on line w, ordered by increasing t.
std::vector<Edge> line_edges(int n, int w);

// String configuration: z_1..z_2n with Hamming weight n.
class StringConfig {
public:
    StringConfig(int n, std::uint32_t bits);  // bit w at position 2n-w (z_1 = MSB)
    static StringConfig from_bits(const std::vector<int>& z);
    static StringConfig initial(int n);  // z_init = 0^n 1^n
    static StringConfig final(int n);    // 1^n 0^n

    int n() const { return n_; }
    int bit(int w) const { return (bits_ >> (2 * n_ - w)) & 1u; }  // w = 1..2n
    std::uint32_t mask() const { return bits_; }
    std::string str() const;

    // number of 1-bits among the first k bits
    int ones(int k) const;

    friend bool operator==(const StringConfig&, const StringConfig&) = default;
    friend auto operator<=>(const StringConfig&, const StringConfig&) = default;

private:
    int n_;
    std::uint32_t bits_;
};

// All C(2n,n) strings in lexicographic order of z_1..z_2n.
std::vector<StringConfig> enumerate_strings(int n);

// Plaquettes strictly to the right of the string: A(z) = sum_w w z_w - n(n+1)/2.
int area(const StringConfig& z);

// Adjacent positions w with z_w != z_{w+1}.
int kinks(const StringConfig& z);

// The 2n edges of the string, one per line.
std::vector<Edge> string_edges(const StringConfig& z);

// Cells to the left of the string, in gate application order (see
// partial_unitary). |result| = n^2 - area(z).
std::vector<Cell> cells_left_of(const StringConfig& z);

bool cell_left_of(const StringConfig& z, const Cell& c);

// Flip a 01 pair at (w, w+1) to 10; returns the new string and the cell whose
// gate is applied by this move.
std::pair<StringConfig, Cell> advance_string(const StringConfig& z, int w);

enum class RegionKind { AdiabaticCenter, JanzingLeftCorner, Custom };

struct GridSpec {
    int n = 1;
    RegionKind region_kind = RegionKind::AdiabaticCenter;
    int region_size = 1;
    Cell region_origin{0, 0};  // used for Custom

    Cell origin() const;                // resolved region origin
    std::vector<Cell> region_cells() const;
    bool in_region(const Cell& c) const;
    std::vector<int> region_lines() const;  // the 2k lines crossing the region
    void validate() const;              // region must fit in the plaquette grid
};

// Map plaquette -> two-qubit gate; plaquettes outside the region are identity.
class PlaquetteCircuit {
public:
    explicit PlaquetteCircuit(GridSpec grid);

    const GridSpec& grid() const { return grid_; }
    void set_gate(const Cell& c, const Eigen::Matrix4cd& u);  // throws if outside region or not unitary
    const Eigen::Matrix4cd& gate(const Cell& c) const;        // identity if unset
    bool is_identity(const Cell& c) const;
    const std::map<Cell, Eigen::Matrix4cd>& gates() const { return gates_; }

    static double unitarity_deviation(const Eigen::Matrix4cd& u);

private:
    GridSpec grid_;
    std::map<Cell, Eigen::Matrix4cd> gates_;
    Eigen::Matrix4cd identity_;
};

// Total unitary of the partially completed circuit with boundary z: ordered
// product of U_p over cells left of z (any linear extension of the causal
// order gives the same product; cells_left_of returns one).
Eigen::MatrixXcd partial_unitary(const PlaquetteCircuit& circuit, const StringConfig& z);

// Embed a two-qubit gate on lines (w, w+1) of the 2n-qubit register
// (z_1/x_1 = most significant bit).
Eigen::MatrixXcd embed_two_qubit(int n, int w, const Eigen::Matrix4cd& u);

}  // namespace qgrid
