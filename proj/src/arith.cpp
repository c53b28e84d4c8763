#include "qwat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwat {

namespace {

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

Circuit with_register(const std::string& name, int width) {
  Circuit c;
  c.add_register(name, width);
  return c;
}

using Carry = CarryBit;

// Carries c[0..n] of x + t; groups[i] holds the gates that produced c[i].
struct CarryChain {
  std::vector<Carry> c;
  std::vector<std::vector<Gate>> groups;
};

CarryChain compute_carries(Circuit& circ, const std::vector<int>& x, std::int64_t t, int upto,
                           const std::vector<int>& work) {
  CarryChain ch;
  ch.c.push_back({});
  ch.groups.emplace_back();
  std::size_t next = 0;
  for (int i = 0; i < upto; ++i) {
    const bool ti = (t >> i) & 1;
    const Carry& ci = ch.c[i];
    std::vector<Gate> group;
    Carry out;
    if (ci.is_const()) {
      // t=1: x OR c, t=0: x AND c.
      out = (ti == ci.one) ? Carry{-1, ti} : Carry{x[i], false};
    } else {
      if (next >= work.size()) throw std::logic_error("carry chain: not enough work qubits");
      int a = work[next++];
      if (ti) {
        group.push_back({GateKind::X, 0, 0.0, {a}, {}});
        group.push_back({GateKind::X, 0, 0.0, {a}, {neg(x[i]), neg(ci.qubit)}});
      } else {
        group.push_back({GateKind::X, 0, 0.0, {a}, {pos(x[i]), pos(ci.qubit)}});
      }
      out = {a, false};
    }
    for (const auto& g : group) circ.add(g);
    ch.c.push_back(out);
    ch.groups.push_back(std::move(group));
  }
  return ch;
}

void uncompute_group(Circuit& circ, const std::vector<Gate>& group) {
  for (auto it = group.rbegin(); it != group.rend(); ++it) circ.add(*it);
}

}  // namespace

std::vector<CarryBit> emit_carry_chain(Circuit& c, const std::vector<int>& x, std::int64_t t, int upto,
                                       const std::vector<int>& work) {
  if (upto < 0 || upto > static_cast<int>(x.size())) throw std::out_of_range("carry chain: bad length");
  return compute_carries(c, x, t, upto, work).c;
}

void emit_qft_rotation(Circuit& c, const std::vector<int>& q, int i, const Controls& ctrl) {
  if (i < 1 || i > static_cast<int>(q.size())) throw std::out_of_range("qft rotation size");
  c.gate(GateKind::H, q[i - 1], ctrl);
  for (int j = 0; j + 2 <= i; ++j) c.phase(i - j, q[i - 1], ctrl + Controls{pos(q[j])});
}

void emit_qft_swap(Circuit& c, const std::vector<int>& q, int len, const Controls& ctrl) {
  for (int i = 0; i < len / 2; ++i) c.swap(q[i], q[len - 1 - i], ctrl);
}

void emit_qft(Circuit& c, const std::vector<int>& q, const Controls& ctrl) {
  const int L = static_cast<int>(q.size());
  for (int i = L; i >= 1; --i) emit_qft_rotation(c, q, i, ctrl);
  emit_qft_swap(c, q, L, ctrl);
}

void emit_inverse_qft(Circuit& c, const std::vector<int>& q, const Controls& ctrl) {
  Circuit fwd(c.num_qubits());
  emit_qft(fwd, q, ctrl);
  c.extend(fwd.inverse());
}

Circuit qft(int L) {
  Circuit c = with_register("q", L);
  emit_qft(c, c.reg("q").qubits());
  return c;
}

Circuit qft_rotation(int i) {
  Circuit c = with_register("q", i);
  emit_qft_rotation(c, c.reg("q").qubits(), i);
  return c;
}

Circuit qft_swap(int L) {
  Circuit c = with_register("q", L);
  emit_qft_swap(c, c.reg("q").qubits(), L);
  return c;
}

Circuit inverse_qft(int L) {
  Circuit c = with_register("q", L);
  emit_inverse_qft(c, c.reg("q").qubits());
  return c;
}

void emit_qft_adder(Circuit& c, const std::vector<int>& q, std::int64_t k, const Controls& ctrl) {
  const int n = static_cast<int>(q.size());
  if (n == 0) return;
  const std::int64_t t = ((k % pow2(n)) + pow2(n)) % pow2(n);
  if (t == 0) return;
  emit_qft(c, q);
  // Fourier qubit b picks up e^{2 pi i t 2^b / 2^n}; split t into its bits.
  for (int b = 0; b < n; ++b)
    for (int a = 0; a + b < n; ++a)
      if ((t >> a) & 1) c.phase(n - a - b, q[b], ctrl);
  emit_inverse_qft(c, q);
}

Circuit adder(int j, std::int64_t k) {
  Circuit c = with_register("x", j);
  emit_qft_adder(c, c.reg("x").qubits(), k);
  return c;
}

void emit_comparator(Circuit& c, const std::vector<int>& x, int target, std::int64_t k,
                     const std::vector<int>& work, const Controls& ctrl) {
  const int n = static_cast<int>(x.size());
  if (k <= 0) {
    c.x(target, ctrl);
    return;
  }
  if (k >= pow2(n)) return;
  const std::int64_t t = pow2(n) - k;
  CarryChain ch = compute_carries(c, x, t, n - 1, work);
  const bool top = (t >> (n - 1)) & 1;
  const Carry& cin = ch.c[n - 1];
  const int xt = x[n - 1];
  if (cin.is_const()) {
    if (top == cin.one) {
      if (top) c.x(target, ctrl);
    } else {
      c.x(target, ctrl + Controls{pos(xt)});
    }
  } else if (top) {
    c.x(target, ctrl);
    c.x(target, ctrl + Controls{neg(xt), neg(cin.qubit)});
  } else {
    c.x(target, ctrl + Controls{pos(xt), pos(cin.qubit)});
  }
  for (int i = n - 1; i >= 1; --i) uncompute_group(c, ch.groups[i]);
}

Circuit comparator(int j, std::int64_t k) {
  if (k < 0 || k > pow2(j)) throw std::out_of_range("comparator: need 0 <= k <= 2^j");
  Circuit c;
  auto x = c.add_register("x", j);
  auto b = c.add_register("b", 1);
  auto w = c.add_register("work", carry_work(j));
  emit_comparator(c, x.qubits(), b[0], k, w.qubits());
  return c;
}

void emit_ripple_adder(Circuit& c, const std::vector<int>& x, std::int64_t k, const std::vector<int>& work,
                       const Controls& ctrl) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return;
  const std::int64_t t = ((k % pow2(n)) + pow2(n)) % pow2(n);
  if (t == 0) return;
  CarryChain ch = compute_carries(c, x, t, n - 1, work);
  // Top bit first so every carry is consumed before its inputs change.
  for (int i = n - 1; i >= 0; --i) {
    bool flip = (t >> i) & 1;
    const Carry& ci = ch.c[i];
    if (ci.is_const()) {
      flip ^= ci.one;
    } else {
      c.x(x[i], ctrl + Controls{pos(ci.qubit)});
    }
    if (flip) c.x(x[i], ctrl);
    if (i >= 1) uncompute_group(c, ch.groups[i]);
  }
}

Circuit ripple_adder(int j, std::int64_t k) {
  Circuit c;
  auto x = c.add_register("x", j);
  auto w = c.add_register("work", carry_work(j));
  emit_ripple_adder(c, x.qubits(), k, w.qubits());
  return c;
}

void emit_injected_increment(Circuit& c, const std::vector<int>& x, const std::vector<Injection>& inj,
                             const std::vector<int>& work) {
  const int n = static_cast<int>(x.size());
  if (inj.empty()) return;
  int lo = n;
  for (const auto& e : inj) {
    if (e.position < 0 || e.position >= n) throw std::out_of_range("injected increment: position outside register");
    lo = std::min(lo, e.position);
  }
  if (static_cast<int>(work.size()) < n - lo) throw std::invalid_argument("injected increment: work register too small");
  // c_i = (x_{i-1} AND c_{i-1}) XOR inj_i; the two terms never hold together.
  auto carry = [&](int i) { return work[i - lo]; };
  auto group = [&](int i) {
    Circuit g(c.num_qubits());
    if (i > lo) g.x(carry(i), {pos(x[i - 1]), pos(carry(i - 1))});
    for (const auto& e : inj)
      if (e.position == i) g.x(carry(i), e.when);
    return g;
  };
  for (int i = lo; i < n; ++i) c.extend(group(i));
  for (int i = n - 1; i >= lo; --i) {
    c.x(x[i], {pos(carry(i))});
    c.extend(group(i).inverse());
  }
}

void emit_linear_pauli_rotation(Circuit& c, double a, double b, const std::vector<int>& x, int target,
                                const Controls& ctrl) {
  if (b != 0.0) c.ry(2 * b, target, ctrl);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double ang = 2 * a * std::ldexp(1.0, static_cast<int>(i));
    if (ang != 0.0) c.ry(ang, target, ctrl + Controls{pos(x[i])});
  }
}

Circuit linear_pauli_rotation(double a, double b, int width) {
  if (width < 1) throw std::invalid_argument("linear_pauli_rotation: value register must be non-empty");
  Circuit c;
  auto x = c.add_register("x", width);
  auto y = c.add_register("y", 1);
  emit_linear_pauli_rotation(c, a, b, x.qubits(), y[0]);
  return c;
}

}  // namespace qwat
