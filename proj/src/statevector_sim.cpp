#include "qgrid/statevector_sim.hpp"

#include <stdexcept>

namespace qgrid {

void apply_gate_inplace(Eigen::VectorXcd& psi, int n, int w, const Eigen::Matrix4cd& u) {
    const int nq = 2 * n;
    if (w < 1 || w + 1 > nq) throw std::out_of_range("apply_gate_inplace: line out of range");
    const Index dim = Index(1) << nq;
    if (psi.size() != dim) throw std::invalid_argument("apply_gate_inplace: state dimension mismatch");
    const Index m_w = Index(1) << (nq - w);
    const Index m_w1 = Index(1) << (nq - w - 1);
    for (Index s = 0; s < dim; ++s) {
        if ((s & m_w) || (s & m_w1)) continue;  // visit each 4-group once via its 00 member
        const Index i00 = s, i01 = s | m_w1, i10 = s | m_w, i11 = s | m_w | m_w1;
        const Eigen::Vector4cd in(psi[i00], psi[i01], psi[i10], psi[i11]);
        const Eigen::Vector4cd out = u * in;
        psi[i00] = out[0];
        psi[i01] = out[1];
        psi[i10] = out[2];
        psi[i11] = out[3];
    }
}

Eigen::VectorXcd simulate_circuit(const PlaquetteCircuit& circuit, std::uint32_t x) {
    const int n = circuit.grid().n;
    const Index dim = Index(1) << (2 * n);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[x] = 1.0;
    // all cells, in the same causal order used for V(1^n 0^n)
    for (const Cell& c : cells_left_of(StringConfig::final(n))) {
        if (circuit.is_identity(c)) continue;
        apply_gate_inplace(psi, n, c.i + c.j + 1, circuit.gate(c));
    }
    return psi;
}

}  // namespace qgrid
