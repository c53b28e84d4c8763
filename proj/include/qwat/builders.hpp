#pragma once

#include "qwat/circuit.hpp"
#include "qwat/tree.hpp"

#include <string>
#include <vector>

namespace qwat {

/// A circuit plus the designation of its L data qubits (LSB first). Every other
/// qubit is an ancilla that starts and ends in |0>.
struct TransformCircuit {
  Circuit circuit;
  std::vector<int> data;
  TreeSpec tree;
  std::string kind;

  std::vector<int> ancillas() const;
};

/// Sum_q f[q]|q> -> Sum_q f_hat[d(q)]|q>.
TransformCircuit build_encoding(int L);
/// Only the CNOT fan-out and cyclic shift that follow the inverse QFT.
Circuit encoding_permutation(int L);

/// Qubits 0..j-1 hold c, qubit j holds the parity of m; c -> d~(c, j, m).
Circuit build_retaining_decoder(int j);

TransformCircuit build_shannon(const TreeSpec& tree);
/// Encoding followed by build_shannon: signal in, coefficients out.
TransformCircuit build_shannon_transform(const TreeSpec& tree);

TransformCircuit build_FA_circuit(const TreeSpec& tree);
TransformCircuit build_GA_tilde_circuit(const TreeSpec& tree);
TransformCircuit build_GA_circuit(const TreeSpec& tree);

/// Registers k (L-1), h (L-1), hr (L-1), flag (2), work. Leaves hr[j-1] =
/// [h~rho(k) == j] and restores every other scratch qubit.
Circuit build_h_rho_circuit(const TreeSpec& tree);
/// Registers k (L-1), label (1), work. Applies rho-dot^{j*} to k when label is set.
Circuit build_rho_dot_level(int j_star, int L);
TransformCircuit build_R_circuit(const TreeSpec& tree);

/// Encoding, R, G^A, R^dagger, F^A.
TransformCircuit build_wave_atom_transform(const TreeSpec& tree);

}  // namespace qwat
