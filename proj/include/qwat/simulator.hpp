#pragma once

#include "qwat/circuit.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace qwat {

/// Amplitudes over all qubits of a circuit; qubit 0 is the least significant
/// bit of the basis index.
using StateVector = std::vector<std::complex<double>>;

StateVector basis_state(int num_qubits, std::uint64_t index);
StateVector run(const Circuit& circuit, StateVector state);
void apply_gate(const Gate& g, StateVector& state);

/// Nonzero amplitudes only. Cheap when ancillas start in |0> and most gates are
/// classical, which is the case for every transform circuit here.
using SparseState = std::unordered_map<std::uint64_t, std::complex<double>>;
void apply_gate(const Gate& g, SparseState& state);
SparseState run(const Circuit& circuit, SparseState state);

struct Extraction {
  Eigen::MatrixXcd unitary;
  double leakage = 0;  // max over columns of the norm left on nonzero ancilla states
};

/// Column p is the data-register block of run(|ancilla=0>|p>); data[b] holds bit b of p.
Extraction extract_unitary(const Circuit& circuit, const std::vector<int>& data);

/// Basis tracking for circuits built only from X and Swap gates.
std::uint64_t run_permutation(const Circuit& circuit, std::uint64_t basis_index);

/// Scatters bits of v onto the listed qubits.
std::uint64_t embed_bits(std::uint64_t v, const std::vector<int>& qubits);
std::uint64_t gather_bits(std::uint64_t index, const std::vector<int>& qubits);

}  // namespace qwat
