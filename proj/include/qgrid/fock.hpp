// fock.hpp -- full Fock-space Hamiltonian assembly for small n: one particle
// per horizontal line, each carrying an internal qubit. Houses H_string,
// H_prop^p, H_gate^p(lambda), H_init, H_input and H(lambda).
//
// Basis ordering (fixed for reproducible operator dumps): per line w the
// local state is 2*edge_index + internal_bit with edges ordered by t; global
// index is the mixed-radix number with line 1 most significant.

#pragma once

#include "qgrid/geometry.hpp"
#include "qgrid/numerics.hpp"

#include <iosfwd>
#include <optional>

namespace qgrid {

// One occupied edge (index into line_edges ordering) plus internal bit, per line.
struct FockConfig {
    std::vector<int> edge;  // edge[w-1] = edge index on line w
    std::vector<int> bit;   // bit[w-1] in {0,1}
};

class FockBasis {
public:
    explicit FockBasis(int n);  // n <= 3 (full-space sizes beyond that are out of scope)

    int n() const { return n_; }
    Index dim() const { return dim_; }
    const std::vector<Edge>& line(int w) const { return lines_[w - 1]; }  // w = 1..2n
    int line_size(int w) const { return static_cast<int>(lines_[w - 1].size()); }

    Index index(const FockConfig& cfg) const;
    FockConfig config(Index idx) const;
    Edge edge_of(const FockConfig& cfg, int w) const { return lines_[w - 1][cfg.edge[w - 1]]; }

    // Index of the string-sector state |x>|z>: string z with internal bits x
    // (x_1 = MSB of x).
    Index string_state_index(const StringConfig& z, std::uint32_t x) const;

private:
    int n_;
    Index dim_;
    std::vector<std::vector<Edge>> lines_;
    std::vector<Index> strides_;
};

// Maximal connected runs of occupied edges (adjacent lines sharing a vertex).
int segment_count(const FockBasis& basis, const FockConfig& cfg);

enum class TermKind { String, Prop, Gate, Init, Input };

struct HamiltonianTerms {
    double lambda = 0.0;
    bool with_string = true;
    bool with_gates = true;
    bool with_init = true;
    bool with_input = true;
    const PlaquetteCircuit* circuit = nullptr;
};

// Individual terms. Prop and Gate require a plaquette; Gate uses
// terms.lambda, Prop is the bare hopping term.
HermitianOperator build_term(const FockBasis& basis, TermKind kind, const HamiltonianTerms& terms,
                             std::optional<Cell> plaquette = std::nullopt);

// H(lambda) = H_string + sum_p H_gate^p(lambda) + sqrt(1-lambda^2) H_init + H_input,
// with pieces switched by the flags.
HermitianOperator assemble_H(const FockBasis& basis, const HamiltonianTerms& terms);

// Basis of S_string = span{|x>|z>}: index = x * C(2n,n) + rank(z), x major.
class StringSectorBasis {
public:
    explicit StringSectorBasis(int n);
    int n() const { return n_; }
    Index dim() const { return dim_; }
    const std::vector<StringConfig>& strings() const { return strings_; }
    Index num_strings() const { return static_cast<Index>(strings_.size()); }
    Index index(std::uint32_t x, Index z_rank) const { return static_cast<Index>(x) * num_strings() + z_rank; }
    std::pair<std::uint32_t, Index> split(Index idx) const {
        return {static_cast<std::uint32_t>(idx / num_strings()), idx % num_strings()};
    }
    Index rank(const StringConfig& z) const;

    std::vector<Index> fock_indices(const FockBasis& basis) const;  // sector state -> Fock index

private:
    int n_;
    Index dim_;
    std::vector<StringConfig> strings_;
};

// Projection of a Fock-space operator onto S_string (ordering as above).
// H(lambda) and all its terms preserve the sector, so the projection is the
// plain submatrix; off-sector leakage is returned separately and is exactly 0
// for operators built by assemble_H / build_term.
HermitianOperator restrict_to_strings(const HermitianOperator& op, const FockBasis& basis);
double string_sector_leakage(const HermitianOperator& op, const FockBasis& basis);

// Sorted coordinate dump (row, col, re, im) of the stored triangle, for
// regression snapshots.
void dump_operator_csv(const HermitianOperator& op, std::ostream& os);

}  // namespace qgrid
