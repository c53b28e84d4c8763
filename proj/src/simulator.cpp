#include "qwat/simulator.hpp"

#include <cmath>
#include <utility>
#include <stdexcept>

namespace qwat {

namespace {

using cplx = std::complex<double>;

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
  bool pass(std::uint64_t i) const { return (i & mask) == value; }
};

ControlMask control_mask(const Controls& cs) {
  ControlMask m;
  for (const auto& c : cs) {
    m.mask |= std::uint64_t{1} << c.qubit;
    if (c.on_one) m.value |= std::uint64_t{1} << c.qubit;
  }
  return m;
}

// Inserts a zero bit at position `bit` of h.
inline std::uint64_t insert_zero(std::uint64_t h, int bit) {
  std::uint64_t low = h & ((std::uint64_t{1} << bit) - 1);
  return ((h >> bit) << (bit + 1)) | low;
}

constexpr std::int64_t kParallelThreshold = std::int64_t{1} << 14;

}  // namespace

StateVector basis_state(int num_qubits, std::uint64_t index) {
  StateVector s(std::size_t{1} << num_qubits, 0.0);
  if (index >= s.size()) throw std::out_of_range("basis index out of range");
  s[index] = 1.0;
  return s;
}

void apply_gate(const Gate& g, StateVector& state) {
  const ControlMask cm = control_mask(g.controls);
  const auto dim = static_cast<std::int64_t>(state.size());
  if (g.kind == GateKind::Swap) {
    const std::uint64_t a = std::uint64_t{1} << g.targets[0];
    const std::uint64_t b = std::uint64_t{1} << g.targets[1];
    const int lo = std::min(g.targets[0], g.targets[1]);
    const int hi = std::max(g.targets[0], g.targets[1]);
#pragma omp parallel for if (dim >= kParallelThreshold)
    for (std::int64_t h = 0; h < dim / 4; ++h) {
      std::uint64_t i = insert_zero(insert_zero(static_cast<std::uint64_t>(h), lo), hi) | a;
      if (!cm.pass(i)) continue;
      std::swap(state[i], state[i ^ a ^ b]);
    }
    return;
  }
  const Mat2 u = gate_matrix(g);
  const int t = g.targets[0];
  const std::uint64_t tb = std::uint64_t{1} << t;
#pragma omp parallel for if (dim >= kParallelThreshold)
  for (std::int64_t h = 0; h < dim / 2; ++h) {
    std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(h), t);
    if (!cm.pass(i0)) continue;
    std::uint64_t i1 = i0 | tb;
    cplx a0 = state[i0], a1 = state[i1];
    state[i0] = u[0] * a0 + u[1] * a1;
    state[i1] = u[2] * a0 + u[3] * a1;
  }
}

StateVector run(const Circuit& circuit, StateVector state) {
  if (state.size() != (std::size_t{1} << circuit.num_qubits()))
    throw std::invalid_argument("run: state dimension does not match the circuit");
  for (const auto& g : circuit.gates()) apply_gate(g, state);
  return state;
}

std::uint64_t embed_bits(std::uint64_t v, const std::vector<int>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b)
    if ((v >> b) & 1) out |= std::uint64_t{1} << qubits[b];
  return out;
}

std::uint64_t gather_bits(std::uint64_t index, const std::vector<int>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b)
    if ((index >> qubits[b]) & 1) out |= std::uint64_t{1} << b;
  return out;
}

void apply_gate(const Gate& g, SparseState& state) {
  const ControlMask cm = control_mask(g.controls);
  if (g.kind == GateKind::X || g.kind == GateKind::Swap) {
    SparseState out;
    out.reserve(state.size());
    for (const auto& [i, a] : state) {
      std::uint64_t j = i;
      if (cm.pass(i)) {
        if (g.kind == GateKind::X) {
          j ^= std::uint64_t{1} << g.targets[0];
        } else if (((i >> g.targets[0]) & 1) != ((i >> g.targets[1]) & 1)) {
          j ^= (std::uint64_t{1} << g.targets[0]) | (std::uint64_t{1} << g.targets[1]);
        }
      }
      out.emplace(j, a);
    }
    state = std::move(out);
    return;
  }
  const Mat2 u = gate_matrix(g);
  const int t = g.targets[0];
  if (u[1] == cplx(0) && u[2] == cplx(0)) {
    for (auto& [i, a] : state)
      if (cm.pass(i)) a *= ((i >> t) & 1) ? u[3] : u[0];
    return;
  }
  const std::uint64_t tb = std::uint64_t{1} << t;
  SparseState out;
  out.reserve(2 * state.size());
  for (const auto& [i, a] : state) {
    if (!cm.pass(i)) {
      out[i] += a;
      continue;
    }
    const bool one = (i >> t) & 1;
    out[i & ~tb] += (one ? u[1] : u[0]) * a;
    out[i | tb] += (one ? u[3] : u[2]) * a;
  }
  std::erase_if(out, [](const auto& kv) { return std::norm(kv.second) < 1e-30; });
  state = std::move(out);
}

SparseState run(const Circuit& circuit, SparseState state) {
  for (const auto& g : circuit.gates()) apply_gate(g, state);
  return state;
}

Extraction extract_unitary(const Circuit& circuit, const std::vector<int>& data) {
  if (circuit.num_qubits() > 63) throw std::invalid_argument("extract_unitary: more than 63 qubits");
  const std::uint64_t D = std::uint64_t{1} << data.size();
  const std::uint64_t data_mask = embed_bits(D - 1, data);
  Extraction ex;
  ex.unitary = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D));
  for (std::uint64_t p = 0; p < D; ++p) {
    SparseState s = run(circuit, SparseState{{embed_bits(p, data), cplx(1)}});
    double leak = 0;
    for (const auto& [i, a] : s) {
      if ((i & ~data_mask) != 0) {
        leak += std::norm(a);
      } else {
        ex.unitary(static_cast<Eigen::Index>(gather_bits(i, data)), static_cast<Eigen::Index>(p)) = a;
      }
    }
    ex.leakage = std::max(ex.leakage, std::sqrt(leak));
  }
  return ex;
}

std::uint64_t run_permutation(const Circuit& circuit, std::uint64_t basis_index) {
  std::uint64_t i = basis_index;
  for (const auto& g : circuit.gates()) {
    if (!is_classical(g.kind))
      throw std::invalid_argument("run_permutation: non-classical gate " + kind_name(g.kind));
    if (!control_mask(g.controls).pass(i)) continue;
    if (g.kind == GateKind::X) {
      i ^= std::uint64_t{1} << g.targets[0];
    } else {
      std::uint64_t a = (i >> g.targets[0]) & 1, b = (i >> g.targets[1]) & 1;
      if (a != b) i ^= (std::uint64_t{1} << g.targets[0]) | (std::uint64_t{1} << g.targets[1]);
    }
  }
  return i;
}

}  // namespace qwat
