#include "qwat/builders.hpp"

#include "qwat/arith.hpp"
#include "qwat/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qwat {

namespace {

constexpr double pi = std::numbers::pi;

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

// Qubit layout shared by the builders. h, hr are indexed by level 1..L-1.
struct Arena {
  int L = 0;
  bool uniform = false;  // every leaf on one level: h is constant and never materialised
  Register data, h, hr, flag, rflag, work;
  // h_j known for every p (h_1 = 1 always; levels past the deepest leaf are 0):
  // 1 or 0, or -1 when it has to be computed.
  std::vector<int> h_fixed;

  int hq(int j) const { return h[j - 1]; }
  bool h_var(int j) const { return h_fixed[j - 1] < 0; }
  int hrq(int j) const { return hr[j - 1]; }
};

Arena make_arena(Circuit& c, const std::string& data_name, int data_width, const TreeSpec& tree, bool with_hr,
                 bool with_flag, int work, bool with_rflag = false) {
  const int L = tree.L;
  const bool uniform = std::all_of(tree.leaves.begin(), tree.leaves.end(),
                                   [&](const Leaf& l) { return l.j == tree.leaves.front().j; });
  Arena a;
  a.L = L;
  a.uniform = uniform;
  a.h_fixed.assign(std::max(L - 1, 0), uniform ? 1 : -1);
  if (!uniform && is_monotonic(tree.leaves)) {
    auto mstar = mstar_of(tree);
    for (int j = 1; j < L; ++j) {
      if (mstar[j - 1] == 0) a.h_fixed[j - 1] = 1;
      else if (mstar[j - 1] * pow2(j) >= pow2(L)) a.h_fixed[j - 1] = 0;
    }
  }
  a.data = c.add_register(data_name, data_width);
  a.h = c.add_register("h", L - 1);
  if (with_hr) a.hr = c.add_register("hr", L - 1);
  if (with_flag) a.flag = c.add_register("flag", 2);
  if (with_rflag) a.rflag = c.add_register("rflag", 2);
  a.work = c.add_register("work", work);
  return a;
}

// h~ = j, i.e. h_j = 1 and h_{j+1} = 0.
Controls level_ctrl(const Arena& a, int j) {
  if (a.uniform) return {};
  Controls c;
  if (a.h_var(j)) c.push_back(pos(a.hq(j)));
  if (j + 1 <= a.L - 1 && a.h_var(j + 1)) c.push_back(neg(a.hq(j + 1)));
  return c;
}

// Q^R_i runs for every level >= i.
Controls rotation_ctrl(const Arena& a, int i) {
  if (a.uniform || !a.h_var(i)) return {};
  return {pos(a.hq(i))};
}

std::vector<int> slice(const std::vector<int>& v, int from, int to) {
  return {v.begin() + from, v.begin() + to};
}

std::vector<int> leaf_levels(const TreeSpec& tree) {
  std::set<int> s;
  for (const auto& l : tree.leaves) s.insert(l.j);
  return {s.begin(), s.end()};
}

void require_monotonic(const TreeSpec& tree) {
  if (!is_monotonic(tree.leaves)) throw std::invalid_argument("circuit builders need a monotonic tree");
}

// h_j(p) into h for j = 1..L-1; p[j] is bit j of the packed index (p[0] unused).
// Uniform trees need nothing: level_ctrl and rotation_ctrl drop the h controls.
void emit_h(Circuit& c, const Arena& a, const TreeSpec& tree, const std::vector<int>& p) {
  const int L = tree.L;
  if (a.uniform) return;
  if (tree == dyadic_tree(L)) {
    // m_j^* = 1 for j >= 2: h_j is the OR of bits j..L-1.
    c.x(a.hq(L - 1), {pos(p[L - 1])});
    for (int j = L - 2; j >= 2; --j) {
      c.x(a.hq(j));
      c.x(a.hq(j), {neg(a.hq(j + 1)), neg(p[j])});
    }
    return;
  }
  auto mstar = mstar_of(tree);
  for (int j = 1; j < L; ++j)
    if (a.h_var(j)) emit_comparator(c, slice(p, j, L), a.hq(j), mstar[j - 1], a.work.qubits());
}

void emit_retaining_decoder(Circuit& c, const std::vector<int>& v, int j, const Controls& ctrl) {
  for (int i = 1; i < j; ++i) c.x(v[i], ctrl + Controls{pos(v[0])});
  for (int i = 0; i + 1 < j; ++i) c.swap(v[i], v[i + 1], ctrl);
  c.x(v[j - 1], ctrl + Controls{pos(v[j])});
}

void emit_encoding(Circuit& c, const std::vector<int>& q) {
  const int L = static_cast<int>(q.size());
  emit_inverse_qft(c, q);
  for (int i = 0; i + 1 < L; ++i) c.x(q[i], {pos(q[L - 1])});
  for (int i = L - 2; i >= 0; --i) c.swap(q[i], q[i + 1]);
}

void emit_shannon_body(Circuit& c, const Arena& a, const TreeSpec& tree) {
  auto q = a.data.qubits();
  auto levels = leaf_levels(tree);
  Circuit hf(c.num_qubits());
  emit_h(hf, a, tree, q);
  c.extend(hf);
  for (int j : levels) emit_retaining_decoder(c, q, j, level_ctrl(a, j));
  for (int i = levels.back(); i >= 1; --i) emit_qft_rotation(c, q, i, rotation_ctrl(a, i));
  for (int j : levels) emit_qft_swap(c, q, j, level_ctrl(a, j));
  c.extend(hf.inverse());
}

void emit_fa_body(Circuit& c, const Arena& a, const TreeSpec& tree) {
  auto q = a.data.qubits();
  auto levels = leaf_levels(tree);
  c.gate(GateKind::R0, q[0]);
  Circuit hf(c.num_qubits());
  emit_h(hf, a, tree, q);
  c.extend(hf);
  for (int j : levels) c.gate(GateKind::MinusIZ, q[0], level_ctrl(a, j) + Controls{pos(q[j])});
  for (int j : levels) emit_retaining_decoder(c, q, j, level_ctrl(a, j));
  for (int j : levels)
    for (int i = 0; i < j; ++i) c.phase(j - i + 1, q[i], level_ctrl(a, j));
  for (int i = levels.back(); i >= 1; --i) emit_qft_rotation(c, q, i, rotation_ctrl(a, i));
  for (int j : levels) emit_qft_swap(c, q, j, level_ctrl(a, j));
  c.extend(hf.inverse());
}

// Window split [k mod 2^{j-1} > mu0(j, odd)] for every level j and parity. As a
// carry-out of (k mod 2^{j-1}) + (2^{j-1} - mu0 - 1) the added constant is
// floor(2^{j-1}/3) or floor(2^j/3): alternating bit patterns, so two full-width
// carry chains answer every level. `body` sees each split while its chain is live.
void for_window_splits(Circuit& c, const std::vector<int>& k, const std::vector<int>& levels,
                       const std::vector<int>& work,
                       const std::function<void(Circuit&, int, int, const CarryBit&)>& body) {
  if (levels.empty()) return;
  const int n = static_cast<int>(k.size());
  std::size_t handled = 0;
  for (int phase = 0; phase < 2; ++phase) {
    std::int64_t t = 0;
    for (int i = phase; i < n; i += 2) t |= pow2(i);
    Circuit chain(c.num_qubits());
    auto carry = emit_carry_chain(chain, k, t, levels.back() - 1, work);
    Circuit inner(c.num_qubits());
    bool used = false;
    for (int j : levels) {
      const int w = j - 1;
      for (int odd = 0; odd < 2; ++odd) {
        if ((t & (pow2(w) - 1)) != pow2(w) - mu0(j, odd) - 1 || (w == 0 && phase == 1)) continue;
        used = true;
        ++handled;
        body(inner, j, odd, carry[w]);
      }
    }
    if (!used) continue;
    c.extend(chain);
    c.extend(inner);
    c.extend(chain.inverse());
  }
  if (handled != 2 * levels.size()) throw std::logic_error("window split: threshold is not an alternating pattern");
}

// Border flag: mu0(j_l,0) < t <= m_r 2^{j_r-1} + mu0(j_r,m_r).
void emit_border_flag(Circuit& c, const Arena& a, const TreeSpec& tree, const std::vector<int>& t) {
  emit_comparator(c, t, a.flag[0], left_border(tree) + 1, a.work.qubits());
  emit_comparator(c, t, a.flag[0], right_border(tree) + 1, a.work.qubits());
}

void emit_ga_tilde_body(Circuit& c, const Arena& a, const TreeSpec& tree) {
  const int L = tree.L;
  auto q = a.data.qubits();
  auto work = a.work.qubits();
  const int flag = a.flag[0];
  c.gate(GateKind::S, q[0]);
  Circuit pre(c.num_qubits());
  emit_h(pre, a, tree, q);
  emit_border_flag(pre, a, tree, slice(q, 1, L));
  c.extend(pre);
  // act = level j, inside the border flag, leaf parity `odd`: computed once so the
  // rotations carry few controls. ri = [n > mu0(j, odd)] comes from the shared chains.
  const int act = a.rflag[0];
  for_window_splits(c, slice(q, 1, L), leaf_levels(tree), work, [&](Circuit& g, int j, int odd, const CarryBit& ri) {
    const auto n = slice(q, 1, j);
    const double steep = 3 * pi / std::ldexp(1.0, j + 1);
    const double flat = 3 * pi / std::ldexp(1.0, j + 2);
    const Controls sel = level_ctrl(a, j) + Controls{pos(flag), odd ? pos(q[j]) : neg(q[j])};
    // m even: steep branch past mu0(j,0), flat branch up to it; m odd the other way round.
    // The rotations share a target and commute, so the ri = 0 branch runs on act
    // alone and ri adds the difference.
    const double a0 = odd ? steep : flat, b0 = -pi / 4;
    const double a1 = odd ? flat : steep, b1 = odd ? -pi / 8 : -pi / 2;
    g.x(act, sel);
    if (ri.is_const()) {
      emit_linear_pauli_rotation(g, ri.one ? a1 : a0, ri.one ? b1 : b0, n, q[0], {pos(act)});
    } else {
      emit_linear_pauli_rotation(g, a0, b0, n, q[0], {pos(act)});
      // The carry may alias one of the value bits; that bit then needs no second control.
      g.ry(2 * (b1 - b0), q[0], {pos(act), pos(ri.qubit)});
      for (std::size_t i = 0; i < n.size(); ++i) {
        Controls cc{pos(act), pos(ri.qubit)};
        if (n[i] != ri.qubit) cc.push_back(pos(n[i]));
        g.ry(2 * (a1 - a0) * std::ldexp(1.0, static_cast<int>(i)), q[0], cc);
      }
    }
    g.x(act, sel);
  });
  c.extend(pre.inverse());
  c.gate(GateKind::Sdg, q[0]);
}

void emit_ga_body(Circuit& c, const Arena& a, const TreeSpec& tree) {
  emit_ripple_adder(c, a.data.qubits(), 1, a.work.qubits());
  emit_ga_tilde_body(c, a, tree);
  emit_ripple_adder(c, a.data.qubits(), -1, a.work.qubits());
}

std::vector<int> rho_levels(const TreeSpec& tree);

// Computes hr from k (the odd-index label) and restores h and flag. R only needs
// the labels that drive a reflection; the standalone circuit asks for all of them.
void emit_h_rho(Circuit& c, const Arena& a, const TreeSpec& tree, const std::vector<int>& k, bool all_labels = false) {
  const auto driving = rho_levels(tree);
  auto wanted = [&](int label) {
    return all_labels || std::find(driving.begin(), driving.end(), label) != driving.end();
  };
  std::vector<int> levels;
  for (int j : leaf_levels(tree))
    if (j >= 2 && (wanted(j - 1) || wanted(j))) levels.push_back(j);
  // A level-1 window is a single index with the left label: 1 for even m, none for odd.
  const bool level_one = all_labels && leaf_levels(tree).front() == 1;
  if (levels.empty() && !level_one) return;

  std::vector<int> p{-1};
  p.insert(p.end(), k.begin(), k.end());
  Circuit pre(c.num_qubits());
  emit_h(pre, a, tree, p);  // h_j(2k)
  emit_border_flag(pre, a, tree, k);
  c.extend(pre);
  const int flag = a.flag[0];
  if (level_one) c.x(a.hrq(1), level_ctrl(a, 1) + Controls{pos(flag), neg(k[0])});
  // m is the parity of the leaf holding 2k.
  for_window_splits(c, k, levels, a.work.qubits(), [&](Circuit& g, int j, int odd, const CarryBit& right) {
    const Controls base = level_ctrl(a, j) + Controls{pos(flag), odd ? pos(k[j - 1]) : neg(k[j - 1])};
    const int left_label = j - odd;
    const int right_label = j - 1 + odd;
    if (right.is_const()) {
      const int label = right.one ? right_label : left_label;
      if (wanted(label)) g.x(a.hrq(label), base);
    } else {
      if (wanted(left_label)) g.x(a.hrq(left_label), base + Controls{neg(right.qubit)});
      if (wanted(right_label)) g.x(a.hrq(right_label), base + Controls{pos(right.qubit)});
    }
  });
  c.extend(pre.inverse());
}

void emit_rho_dot_level(Circuit& c, const std::vector<int>& k, int j_star, const std::vector<int>& work,
                        const Controls& ctrl) {
  const std::int64_t mu = mu0(j_star, 0);
  emit_ripple_adder(c, k, mu, work, ctrl);
  for (int i = 0; i < j_star; ++i) c.x(k[i], ctrl);
  emit_ripple_adder(c, k, -(pow2(j_star) - 1 - mu), work, ctrl);
}

std::vector<int> rho_levels(const TreeSpec& tree) {
  std::set<int> s;
  for (std::size_t i = 1; i < tree.leaves.size(); ++i) {
    const Leaf& l = tree.leaves[i];
    int js = l.j - static_cast<int>(l.m % 2);
    if (js >= 2) s.insert(js);
  }
  return {s.begin(), s.end()};
}

// Prefix ORs P_i = x_0 | ... | x_i for i <= top; P_0 aliases x_0, the rest live in work.
std::vector<int> emit_prefix_or(Circuit& c, const std::vector<int>& x, int top, const std::vector<int>& work) {
  std::vector<int> p{x[0]};
  for (int i = 1; i <= top; ++i) {
    const int t = work.at(i - 1);
    c.x(t);
    c.x(t, {neg(p.back()), neg(x[i])});
    p.push_back(t);
  }
  return p;
}

// All rho-dot levels at once. For label j* the window centre c is a multiple
// of 2^{j*} and k - c fits in the low j* bits as a signed value s.t. the sign
// is bit j*-1. Then
//   2c - k = flip_low(k) + 1 + 2^{j*} (sign ? +1 : -1),
// and only flip_low is paid per level; the +1 and the +/-2^{j*} (one increment
// with the carry injected at j*) are shared by every level.
void emit_rho_dot_all(Circuit& c, const Arena& a, const TreeSpec& tree, const std::vector<int>& k, int q0) {
  auto levels = rho_levels(tree);
  if (levels.empty()) return;
  auto work = a.work.qubits();
  const int n = static_cast<int>(k.size());
  const int up = a.rflag[0];  // below the centre: high part +1
  const int dn = a.rflag[1];  // at or above the centre: high part -1
  const int any = a.flag[0];
  auto active = [&](int js) { return Controls{pos(a.hrq(js)), pos(q0)}; };

  Circuit fwd(c.num_qubits());
  for (int js : levels) {
    fwd.x(up, active(js) + Controls{pos(k[js - 1])});
    fwd.x(dn, active(js) + Controls{neg(k[js - 1])});
    fwd.x(any, active(js));
  }
  c.extend(fwd);
  for (int js : levels)
    for (int i = 0; i < js; ++i) c.x(k[i], active(js));
  emit_ripple_adder(c, k, 1, work, {pos(any)});
  const int lo = levels.front();
  for (int i = lo; i < n; ++i) c.x(k[i], {pos(dn)});
  std::vector<Injection> inj;
  for (int js : levels) {
    inj.push_back({js, {pos(a.hrq(js)), pos(up)}});
    inj.push_back({js, {pos(a.hrq(js)), pos(dn)}});
  }
  emit_injected_increment(c, k, inj, work);
  for (int i = lo; i < n; ++i) c.x(k[i], {pos(dn)});

  // In terms of the reflected value: up = [sign clear and low part nonzero], dn = active & !up.
  Circuit pre(c.num_qubits());
  auto p = emit_prefix_or(pre, k, levels.back() - 1, work);
  c.extend(pre);
  for (int js : levels) {
    const Controls below = active(js) + Controls{neg(k[js - 1]), pos(p[js - 1])};
    c.x(up, below);
    c.x(dn, active(js));
    c.x(dn, below);
    c.x(any, active(js));
  }
  c.extend(pre.inverse());
}

// R without its +2 / -2 frame on the full register.
void emit_R_core(Circuit& c, const Arena& a, const TreeSpec& tree) {
  auto q = a.data.qubits();
  auto k = slice(q, 1, tree.L);
  Circuit hr(c.num_qubits());
  emit_h_rho(hr, a, tree, k);
  c.extend(hr);
  emit_rho_dot_all(c, a, tree, k, q[0]);
  c.extend(hr.inverse());
}

void emit_R_body(Circuit& c, const Arena& a, const TreeSpec& tree) {
  auto k = slice(a.data.qubits(), 1, tree.L);
  emit_ripple_adder(c, k, 1, a.work.qubits());  // +2 on the full register
  emit_R_core(c, a, tree);
  emit_ripple_adder(c, k, -1, a.work.qubits());
}

void require_wave_atom_circuit_tree(const TreeSpec& tree) {
  require_tree_for(tree, TransformKind::waveatom);
  require_monotonic(tree);
}

}  // namespace

std::vector<int> TransformCircuit::ancillas() const {
  std::vector<int> out;
  for (int i = 0; i < circuit.num_qubits(); ++i)
    if (std::find(data.begin(), data.end(), i) == data.end()) out.push_back(i);
  return out;
}

TransformCircuit build_encoding(int L) {
  if (L < 1) throw std::invalid_argument("build_encoding: need L >= 1");
  Circuit c;
  auto d = c.add_register("data", L);
  emit_encoding(c, d.qubits());
  return {c, d.qubits(), {}, "encoding"};
}

Circuit encoding_permutation(int L) {
  Circuit c;
  auto q = c.add_register("data", L).qubits();
  for (int i = 0; i + 1 < L; ++i) c.x(q[i], {pos(q[L - 1])});
  for (int i = L - 2; i >= 0; --i) c.swap(q[i], q[i + 1]);
  return c;
}

Circuit build_retaining_decoder(int j) {
  if (j < 1) throw std::invalid_argument("build_retaining_decoder: need j >= 1");
  Circuit c;
  auto q = c.add_register("q", j).qubits();
  q.push_back(c.add_register("m0", 1)[0]);
  emit_retaining_decoder(c, q, j, {});
  return c;
}

TransformCircuit build_shannon(const TreeSpec& tree) {
  require_tree_for(tree, TransformKind::shannon);
  require_monotonic(tree);
  Circuit c;
  Arena a = make_arena(c, "data", tree.L, tree, false, false, carry_work(tree.L - 1));
  emit_shannon_body(c, a, tree);
  return {c, a.data.qubits(), tree, "shannon"};
}

TransformCircuit build_shannon_transform(const TreeSpec& tree) {
  require_tree_for(tree, TransformKind::shannon);
  require_monotonic(tree);
  Circuit c;
  Arena a = make_arena(c, "data", tree.L, tree, false, false, carry_work(tree.L - 1));
  emit_encoding(c, a.data.qubits());
  emit_shannon_body(c, a, tree);
  return {c, a.data.qubits(), tree, "shannon"};
}

TransformCircuit build_FA_circuit(const TreeSpec& tree) {
  require_wave_atom_circuit_tree(tree);
  Circuit c;
  Arena a = make_arena(c, "data", tree.L, tree, false, false, carry_work(tree.L - 1));
  emit_fa_body(c, a, tree);
  return {c, a.data.qubits(), tree, "fa"};
}

TransformCircuit build_GA_tilde_circuit(const TreeSpec& tree) {
  require_wave_atom_circuit_tree(tree);
  Circuit c;
  Arena a = make_arena(c, "data", tree.L, tree, false, true, carry_work(tree.L - 1), true);
  emit_ga_tilde_body(c, a, tree);
  return {c, a.data.qubits(), tree, "ga_tilde"};
}

TransformCircuit build_GA_circuit(const TreeSpec& tree) {
  require_wave_atom_circuit_tree(tree);
  Circuit c;
  Arena a = make_arena(c, "data", tree.L, tree, false, true, carry_work(tree.L), true);
  emit_ga_body(c, a, tree);
  return {c, a.data.qubits(), tree, "ga"};
}

Circuit build_h_rho_circuit(const TreeSpec& tree) {
  require_wave_atom_circuit_tree(tree);
  Circuit c;
  Arena a = make_arena(c, "k", tree.L - 1, tree, true, true, carry_work(tree.L - 1));
  emit_h_rho(c, a, tree, a.data.qubits(), true);
  return c;
}

Circuit build_rho_dot_level(int j_star, int L) {
  if (j_star < 2 || j_star >= L) throw std::out_of_range("build_rho_dot_level: need 2 <= j* < L");
  Circuit c;
  auto k = c.add_register("k", L - 1).qubits();
  int label = c.add_register("label", 1)[0];
  auto work = c.add_register("work", carry_work(L - 1)).qubits();
  emit_rho_dot_level(c, k, j_star, work, {pos(label)});
  return c;
}

TransformCircuit build_R_circuit(const TreeSpec& tree) {
  require_wave_atom_circuit_tree(tree);
  Circuit c;
  Arena a = make_arena(c, "data", tree.L, tree, true, true, carry_work(tree.L), true);
  emit_R_body(c, a, tree);
  return {c, a.data.qubits(), tree, "r"};
}

TransformCircuit build_wave_atom_transform(const TreeSpec& tree) {
  require_wave_atom_circuit_tree(tree);
  Circuit c;
  Arena a = make_arena(c, "data", tree.L, tree, true, true, carry_work(tree.L), true);
  auto q = a.data.qubits();
  auto k = slice(q, 1, tree.L);
  auto work = a.work.qubits();
  emit_encoding(c, q);
  // R, G^A, R* with the neighbouring constant shifts merged: -2 then +1 is -1,
  // -1 then +2 is +1.
  Circuit core(c.num_qubits());
  emit_R_core(core, a, tree);
  emit_ripple_adder(c, k, 1, work);
  c.extend(core);
  emit_ripple_adder(c, q, -1, work);
  emit_ga_tilde_body(c, a, tree);
  emit_ripple_adder(c, q, 1, work);
  c.extend(core.inverse());
  emit_ripple_adder(c, k, -1, work);
  emit_fa_body(c, a, tree);
  return {c, a.data.qubits(), tree, "waveatom"};
}

}  // namespace qwat
