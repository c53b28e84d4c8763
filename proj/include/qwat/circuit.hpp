#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace qwat {

enum class GateKind { X, Z, H, S, Sdg, Phase, PhaseDg, Ry, Swap, R0, R1, MinusIZ };

struct Control {
  int qubit = 0;
  bool on_one = true;
  bool operator==(const Control&) const = default;
};
using Controls = std::vector<Control>;

inline Control pos(int q) { return {q, true}; }
inline Control neg(int q) { return {q, false}; }
Controls operator+(Controls a, const Controls& b);

/// Phase(k) is diag(1, e^{2 pi i / 2^k}); Ry(theta) is exp(-i theta Y / 2).
struct Gate {
  GateKind kind = GateKind::X;
  int k = 0;
  double theta = 0.0;
  std::vector<int> targets;
  Controls controls;
  bool operator==(const Gate&) const = default;
};

using Mat2 = std::array<std::complex<double>, 4>;  // row-major
Mat2 gate_matrix(const Gate& g);
std::string kind_name(GateKind k);
bool is_classical(GateKind k);

struct Register {
  std::string name;
  int start = 0;
  int width = 0;
  int operator[](int i) const { return start + i; }
  std::vector<int> qubits() const;
  bool operator==(const Register&) const = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {}

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  const std::vector<Register>& registers() const { return registers_; }

  /// Appends a register of fresh qubits after all existing ones.
  Register add_register(const std::string& name, int width);
  const Register& reg(const std::string& name) const;
  bool has_register(const std::string& name) const;
  /// Adds unnamed qubits so that the circuit has at least n.
  void grow_to(int n) { num_qubits_ = std::max(num_qubits_, n); }

  void add(Gate g);
  void x(int t, const Controls& c = {}) { add({GateKind::X, 0, 0.0, {t}, c}); }
  void swap(int a, int b, const Controls& c = {}) { add({GateKind::Swap, 0, 0.0, {a, b}, c}); }
  void gate(GateKind kind, int t, const Controls& c = {}) { add({kind, 0, 0.0, {t}, c}); }
  void phase(int k, int t, const Controls& c = {}) { add({GateKind::Phase, k, 0.0, {t}, c}); }
  void ry(double theta, int t, const Controls& c = {}) { add({GateKind::Ry, 0, theta, {t}, c}); }

  /// Appends every gate of `sub` (same numbering) with `extra` added to its controls.
  void extend(const Circuit& sub, const Controls& extra = {});
  /// Appends `sub` with its qubit i relabelled to map[i].
  void extend_mapped(const Circuit& sub, const std::vector<int>& map, const Controls& extra = {});

  /// Throws std::logic_error for kinds without an inverse in the gate set (R0, R1, MinusIZ).
  Circuit inverse() const;

  bool operator==(const Circuit&) const = default;

 private:
  int num_qubits_ = 0;
  std::vector<Register> registers_;
  std::vector<Gate> gates_;
};

struct GateCountReport {
  std::size_t raw = 0;
  std::size_t weighted = 0;  // a gate with c >= 2 controls costs c, any other gate costs 1
  std::size_t multi_controlled = 0;
};
GateCountReport gate_count(const Circuit& c);

std::string serialize(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace qwat
