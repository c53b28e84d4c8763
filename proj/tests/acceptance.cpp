// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "helpers.hpp"

#include "qwat/arith.hpp"
#include "qwat/builders.hpp"
#include "qwat/oracle.hpp"
#include "qwat/simulator.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace qwat;
using ref::cplx;
using ref::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

std::vector<TreeSpec> monotonic(const std::vector<TreeSpec>& in, int lmax) {
  std::vector<TreeSpec> out;
  for (const auto& t : in)
    if (t.L <= lmax && is_monotonic(t.leaves)) out.push_back(t);
  return out;
}

bool family_sizes_ok(const ref::Suite& s, Outcome& o, const char* what) {
  std::size_t least = std::min({s.uniform.size(), s.dyadic.size(), s.parabolic.size(), s.random.size()});
  o.detail << what << " trees/family >= " << least << "; ";
  return least >= 10;
}

// 1. Oracle unitarity.
void criterion1(Outcome& o) {
  auto ss = ref::shannon_suite(2, 8);
  auto ws = ref::wave_atom_suite(3, 8);
  o.pass = family_sizes_ok(ss, o, "shannon") && family_sizes_ok(ws, o, "waveatom");
  double cs = 0, ca = 0;
  for (const auto& t : ref::flatten(ss)) cs = std::max(cs, unitarity_error(build_CS(t)));
  for (const auto& t : ref::flatten(ws)) ca = std::max(ca, unitarity_error(build_CA(t, cosine_profile())));
  o.pass = o.pass && cs <= 1e-10 && ca <= 1e-10;
  o.detail << "max |UU*-I| C^S " << cs << ", C^A " << ca;
}

// 2. C^A = F^A R* G^A R.
void criterion2(Outcome& o) {
  auto ws = ref::wave_atom_suite(3, 8);
  o.pass = family_sizes_ok(ws, o, "waveatom");
  const auto P = cosine_profile();
  double dev = 0;
  for (const auto& t : ref::flatten(ws)) {
    auto R = build_R(t);
    dev = std::max(dev, max_abs(build_CA(t, P) - build_FA(t) * R.adjoint() * build_GA(t, P) * R));
  }
  o.pass = o.pass && dev <= 1e-10;
  o.detail << "max deviation " << dev << " over " << ref::flatten(ws).size() << " trees";
}

// 3. Circuits against oracles.
void criterion3(Outcome& o) {
  const auto P = cosine_profile();
  double worst = 0;
  auto note = [&](const char* what, double d) {
    worst = std::max(worst, d);
    if (d > 1e-8) o.detail << what << " deviation " << d << "; ";
  };

  for (int j = 1; j <= 6; ++j) {
    auto c = build_retaining_decoder(j);
    std::vector<int> data;
    for (int i = 0; i <= j; ++i) data.push_back(i);
    auto ex = extract_unitary(c, data);
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(ex.unitary.rows(), ex.unitary.cols());
    for (std::int64_t m = 0; m <= 1; ++m)
      for (std::int64_t q = 0; q < ref::p2(j); ++q) want(ref::dtilde(q, j, m) | (m << j), q | (m << j)) = 1;
    note("decoder", max_abs(ex.unitary - want));
  }
  for (int L = 1; L <= 6; ++L) {
    auto tc = build_encoding(L);
    note("encoding", max_abs(extract_unitary(tc.circuit, tc.data).unitary - ref::dft_encoded(L)));
  }
  auto ss = ref::shannon_suite(2, 8);
  for (const auto& t : monotonic(ref::flatten(ss), 5)) {
    auto tc = build_shannon(t);
    note("shannon", max_abs(extract_unitary(tc.circuit, tc.data).unitary - build_CS(t)));
  }
  auto ws = ref::wave_atom_suite(3, 8);
  for (const auto& t : monotonic(ref::flatten(ws), 5)) {
    auto fa = build_FA_circuit(t);
    note("F^A", max_abs(extract_unitary(fa.circuit, fa.data).unitary - build_FA(t)));
    auto gt = build_GA_tilde_circuit(t);
    note("G~^A", max_abs(extract_unitary(gt.circuit, gt.data).unitary - build_GA_tilde(t, P)));
  }
  std::size_t perm_trees = 0;
  for (const auto& t : monotonic(ref::flatten(ws), 8)) {
    auto tc = build_R_circuit(t);
    auto R = build_R(t);
    double d = 0;
    for (std::int64_t p = 0; p < t.size(); ++p) {
      auto out = run_permutation(tc.circuit, embed_bits(std::uint64_t(p), tc.data));
      std::int64_t img = std::int64_t(gather_bits(out, tc.data));
      if (out != embed_bits(std::uint64_t(img), tc.data) || std::abs(R(img, p) - 1.0) > 0) d = 1;
    }
    note("R permutation", d);
    ++perm_trees;
  }
  std::mt19937_64 rng(2024);
  std::size_t signals = 0;
  for (const auto& t : monotonic(ref::flatten(ws), 5)) {
    auto tc = build_wave_atom_transform(t);
    for (int s = 0; s < 20; ++s) {
      auto f = ref::random_signal(t.size(), rng);
      SparseState st;
      for (std::int64_t i = 0; i < t.size(); ++i) st[embed_bits(std::uint64_t(i), tc.data)] = f[i];
      st = run(tc.circuit, st);
      auto want = classical_transform(f, t, TransformKind::waveatom, P);
      double d = 0;
      for (const auto& [idx, amp] : st) {
        std::uint64_t p = gather_bits(idx, tc.data);
        d = std::max(d, std::abs(amp - (idx == embed_bits(p, tc.data) ? want[std::int64_t(p)] : cplx(0, 0))));
      }
      note("pipeline", d);
      ++signals;
    }
  }
  o.pass = worst <= 1e-8;
  o.detail << "max deviation " << worst << " (R on " << perm_trees << " trees up to L=8, pipeline on " << signals
           << " signals)";
}

// 4. Ancilla restitution.
void criterion4(Outcome& o) {
  double leak = 0;
  std::size_t circuits = 0;
  auto check = [&](const TransformCircuit& tc) {
    leak = std::max(leak, extract_unitary(tc.circuit, tc.data).leakage);
    ++circuits;
  };
  // Classical circuits: every scratch bit outside `keep` must return to 0.
  auto check_classical = [&](const Circuit& c, const std::vector<int>& in, const std::vector<int>& keep) {
    std::uint64_t keep_mask = 0;
    for (int q : keep) keep_mask |= std::uint64_t{1} << q;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << in.size()); ++v)
      if (run_permutation(c, embed_bits(v, in)) & ~keep_mask) leak = 1;
    ++circuits;
  };
  for (int L = 1; L <= 6; ++L) check(build_encoding(L));
  auto ss = ref::shannon_suite(2, 8);
  for (const auto& t : monotonic(ref::flatten(ss), 6)) {
    check(build_shannon(t));
    check(build_shannon_transform(t));
  }
  auto ws = ref::wave_atom_suite(3, 8);
  for (const auto& t : monotonic(ref::flatten(ws), 6)) {
    check(build_FA_circuit(t));
    check(build_GA_tilde_circuit(t));
    check(build_GA_circuit(t));
    check(build_wave_atom_transform(t));
  }
  for (const auto& t : monotonic(ref::flatten(ws), 8)) {
    auto r = build_R_circuit(t);
    check_classical(r.circuit, r.data, r.data);
    auto h = build_h_rho_circuit(t);
    auto k = h.reg("k").qubits(), keep = k;
    for (int q : h.reg("hr").qubits()) keep.push_back(q);
    check_classical(h, k, keep);
  }
  for (int L = 3; L <= 8; ++L)
    for (int j = 2; j < L; ++j) {
      auto c = build_rho_dot_level(j, L);
      auto in = c.reg("k").qubits();
      in.push_back(c.reg("label")[0]);
      check_classical(c, in, in);
    }
  o.pass = leak <= 1e-10;
  o.detail << "max leakage " << leak << " over " << circuits << " circuits";
}

// 5. Gate-count scaling of the full pipelines.
void criterion5(Outcome& o) {
  for (const char* family : {"uniform", "dyadic", "parabolic"})
    for (TransformKind kind : {TransformKind::shannon, TransformKind::waveatom}) {
      std::vector<double> count(11, 0);
      for (int L = 3; L <= 10; ++L) {
        auto t = family_tree(family, L);
        auto tc = kind == TransformKind::shannon ? build_shannon_transform(t) : build_wave_atom_transform(t);
        count[L] = double(gate_count(tc.circuit).weighted);
      }
      double lo = 1e300, hi = 0, lo4 = 1e300, hi4 = 0, worst_ratio = 0;
      for (int L = 3; L <= 10; ++L) {
        lo = std::min(lo, count[L] / (L * L));
        hi = std::max(hi, count[L] / (L * L));
        if (L >= 4) lo4 = std::min(lo4, count[L] / (L * L)), hi4 = std::max(hi4, count[L] / (L * L));
      }
      bool ok = hi / lo <= 2.0;
      for (int L = 4; L <= 9; ++L) {
        double r = (count[L + 1] / count[L]) / (1.5 * double((L + 1) * (L + 1)) / double(L * L));
        worst_ratio = std::max(worst_ratio, r);
      }
      ok = ok && worst_ratio <= 1.0;
      o.pass = o.pass && ok;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s/%s band %.2f (L>=4: %.2f) step %.2f; ", family, kind_name(kind).c_str(),
                    hi / lo, hi4 / lo4, worst_ratio);
      o.detail << buf;
    }
}

// 6. Profile properties on 10^4 samples.
void criterion6(Outcome& o) {
  const int n = 10000;
  double sq = 0, asym = 0;
  for (int i = 0; i < n; ++i) {
    double w = -pi / 3 + (2 * pi / 3) * i / (n - 1);
    double a = g_cosine(pi / 2 - w), b = g_cosine(pi / 2 + w);
    sq = std::max(sq, std::abs(a * a + b * b - 1));
    asym = std::max(asym, std::abs(g_cosine(-2 * w - pi / 2) - b));
  }
  auto rep = validate_profile(cosine_profile(), n, 1e-12);
  o.pass = sq <= 1e-12 && asym <= 1e-12 && rep.ok;
  o.detail << "sum-of-squares " << sq << ", asymmetry " << asym << ", validator " << (rep.ok ? "ok" : rep.message);
}

// 7. Support coverage and frequency-delta concentration.
void criterion7(Outcome& o) {
  auto ws = ref::wave_atom_suite(3, 8);
  std::size_t bad_cover = 0;
  for (const auto& t : ref::flatten(ws)) {
    const std::int64_t N = t.size();
    for (std::int64_t k = -N / 2; k < N / 2; ++k) {
      int count = 0;
      for (const auto& leaf : t.leaves) count += in_integer_support(k, leaf.j, leaf.m);
      if (count < 1 || count > 2 || count != ref::support_count(k, t)) ++bad_cover;
    }
  }
  double residual = 0;
  std::size_t max_blocks_s = 0, max_blocks_w = 0;
  auto concentrate = [&](const TreeSpec& t, const Eigen::MatrixXcd& C, bool wave) {
    const std::int64_t N = t.size();
    Eigen::MatrixXcd M = C * ref::dft_encoded(t.L);
    for (std::int64_t xi = -N / 2; xi < N / 2; ++xi) {
      Eigen::VectorXcd f(N);
      for (std::int64_t x = 0; x < N; ++x) f[x] = std::exp(cplx(0, 2 * pi * double(xi * x) / double(N))) / std::sqrt(double(N));
      Eigen::VectorXcd c = M * f;
      std::vector<bool> allowed(t.leaves.size(), false);
      std::size_t nblocks = 0;
      for (std::size_t li = 0; li < t.leaves.size(); ++li) {
        const auto& leaf = t.leaves[li];
        bool in = wave ? in_integer_support(xi, leaf.j, leaf.m) : leaf_index_of(ref::enc(xi), t) == li;
        allowed[li] = in;
        nblocks += in;
      }
      (wave ? max_blocks_w : max_blocks_s) = std::max(wave ? max_blocks_w : max_blocks_s, nblocks);
      for (std::int64_t p = 0; p < N; ++p)
        if (!allowed[leaf_index_of(p, t)]) residual = std::max(residual, std::abs(c[p]));
    }
  };
  for (const auto& t : ref::flatten(ref::shannon_suite(2, 8))) concentrate(t, build_CS(t), false);
  for (const auto& t : ref::flatten(ws)) concentrate(t, build_CA(t, cosine_profile()), true);
  o.pass = bad_cover == 0 && residual <= 1e-10 && max_blocks_s <= 1 && max_blocks_w <= 2;
  o.detail << "coverage mismatches " << bad_cover << ", blocks per delta shannon " << max_blocks_s << " waveatom "
           << max_blocks_w << ", residual " << residual;
}

// 8. Involutions and inverse pairs.
void criterion8(Outcome& o) {
  std::size_t bad = 0;
  for (const auto& t : ref::flatten(ref::wave_atom_suite(3, 8))) {
    for (std::int64_t i = 0; i < t.size(); ++i) bad += rho(rho(i, t), t) != i;
    for (std::int64_t k = 0; k < t.size() / 2; ++k) bad += rho_dot(rho_dot(k, t), t) != k;
  }
  for (int L = 1; L <= 12; ++L) {
    const std::int64_t N = ref::p2(L);
    for (std::int64_t i = 0; i < N; ++i) bad += encode_freq(decode_freq(i, N), N) != i;
    for (std::int64_t k = -N / 2; k < N / 2; ++k) bad += decode_freq(encode_freq(k, N), N) != k;
  }
  double adder_dev = 0;
  for (int j = 1; j <= 6; ++j)
    for (std::int64_t k = -ref::p2(j); k <= ref::p2(j); ++k) {
      Circuit c(j);
      c.extend(adder(j, k));
      c.extend(adder(j, -k));
      for (std::uint64_t x = 0; x < std::uint64_t(ref::p2(j)); ++x) {
        auto s = run(c, basis_state(j, x));
        for (std::uint64_t y = 0; y < s.size(); ++y) adder_dev = std::max(adder_dev, std::abs(s[y] - (y == x ? 1.0 : 0.0)));
      }
    }
  o.pass = bad == 0 && adder_dev <= 1e-10;
  o.detail << "identity failures " << bad << ", adder pair deviation " << adder_dev;
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                               criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s %s (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(), secs);
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
