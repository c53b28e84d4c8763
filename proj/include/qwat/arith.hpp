#pragma once

// QFT pieces, comparators, adders and linear Pauli rotations. The emit_*
// functions append to an existing circuit; `q` / `x` list qubit ids from the
// least significant bit up, and `ctrl` makes the whole operation conditional.

#include "qwat/circuit.hpp"

#include <cstdint>
#include <vector>

namespace qwat {

/// Q^R_i on q[0..i-1]: H on q[i-1], then P_{i-j} on q[i-1] controlled by q[j].
void emit_qft_rotation(Circuit& c, const std::vector<int>& q, int i, const Controls& ctrl = {});
/// Q^S on q[0..len-1]: swaps q[i] and q[len-1-i].
void emit_qft_swap(Circuit& c, const std::vector<int>& q, int len, const Controls& ctrl = {});
void emit_qft(Circuit& c, const std::vector<int>& q, const Controls& ctrl = {});
void emit_inverse_qft(Circuit& c, const std::vector<int>& q, const Controls& ctrl = {});

Circuit qft(int L);
Circuit qft_rotation(int i);
Circuit qft_swap(int L);
Circuit inverse_qft(int L);

/// |x> -> |x + k mod 2^j> via QFT, diagonal phases, inverse QFT. No ancillas.
void emit_qft_adder(Circuit& c, const std::vector<int>& q, std::int64_t k, const Controls& ctrl = {});
Circuit adder(int j, std::int64_t k);

/// target ^= [x >= k]. Carry-out of x + (2^n - k) computed with a carry chain
/// held in `work` (needs max(n-2, 0) qubits, returned to |0>). Only the gates
/// that touch `target` carry `ctrl`.
void emit_comparator(Circuit& c, const std::vector<int>& x, int target, std::int64_t k,
                     const std::vector<int>& work, const Controls& ctrl = {});
/// Registers: x (j qubits), b (1), work (max(j-2,0)).
Circuit comparator(int j, std::int64_t k);

/// x -> x + k mod 2^n with a ripple carry chain in `work` (max(n-2, 0) qubits).
/// Only the gates that update x carry `ctrl`.
void emit_ripple_adder(Circuit& c, const std::vector<int>& x, std::int64_t k, const std::vector<int>& work,
                       const Controls& ctrl = {});
/// Registers: x (j qubits), work (max(j-2,0)).
Circuit ripple_adder(int j, std::int64_t k);

/// One carry bit of a chain: a constant (qubit < 0) or a qubit holding its value.
struct CarryBit {
  int qubit = -1;
  bool one = false;
  bool is_const() const { return qubit < 0; }
};
/// Carries into bits 0..upto of x + t, computed into `work` (constants and
/// aliases of x take no qubit). Undo by appending the inverse of what was emitted.
std::vector<CarryBit> emit_carry_chain(Circuit& c, const std::vector<int>& x, std::int64_t t, int upto,
                                       const std::vector<int>& work);

/// Carry injected at bit `position` when every control in `when` holds.
struct Injection {
  int position = 0;
  Controls when;
};
/// x -> x + 2^p mod 2^n, where p is the position of the injection whose condition
/// holds (no change if none does). At most one condition may hold on any basis
/// state. Carries live in `work`, which needs n - (lowest position) qubits.
void emit_injected_increment(Circuit& c, const std::vector<int>& x, const std::vector<Injection>& inj,
                             const std::vector<int>& work);

/// |x>|y> -> |x> Ry(2(a x + b)) |y>: Ry(2b), then Ry(2a 2^i) controlled on x_i.
/// Rotations with a zero angle are omitted.
void emit_linear_pauli_rotation(Circuit& c, double a, double b, const std::vector<int>& x, int target,
                                const Controls& ctrl = {});
/// Registers: x (width qubits), y (1).
Circuit linear_pauli_rotation(double a, double b, int width);

/// Work qubits needed by the carry chains above for an n-bit operand.
inline int carry_work(int n) { return n > 2 ? n - 2 : 0; }

}  // namespace qwat
