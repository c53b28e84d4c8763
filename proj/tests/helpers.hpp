#pragma once

// Small reference implementations written directly from the defining formulas,
// kept separate from the library so tests compare two independent derivations.

#include "qwat/oracle.hpp"
#include "qwat/tree.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace ref {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

inline std::int64_t p2(int e) { return std::int64_t{1} << e; }

// d(i): even i -> i/2, odd i -> -(i+1)/2.
inline std::int64_t dec(std::int64_t i) { return i % 2 == 0 ? i / 2 : -(i + 1) / 2; }
inline std::int64_t enc(std::int64_t k) { return k >= 0 ? 2 * k : -2 * k - 1; }
inline std::int64_t mod(std::int64_t a, std::int64_t b) { return ((a % b) + b) % b; }
inline std::int64_t dtilde(std::int64_t c, int j, std::int64_t m) { return mod(dec(m * p2(j) + c), p2(j)); }

inline std::int64_t mu0(int j, std::int64_t m) { return p2(j - (m % 2 == 1 ? 1 : 0)) / 3; }
inline std::int64_t mu1(int j, std::int64_t m) { return p2(j - (m % 2 == 0 ? 1 : 0)) / 3; }

// Encoded DFT by direct summation: row i holds frequency d(i).
inline Eigen::MatrixXcd dft_encoded(int L) {
  const std::int64_t N = p2(L);
  Eigen::MatrixXcd F(N, N);
  for (std::int64_t i = 0; i < N; ++i)
    for (std::int64_t x = 0; x < N; ++x)
      F(i, x) = std::exp(cplx(0, -2 * pi * static_cast<double>(x * dec(i)) / static_cast<double>(N))) /
                std::sqrt(static_cast<double>(N));
  return F;
}

// Block-diagonal Shannon matrix from the per-leaf Fourier blocks
// 2^{-j/2} exp(2 pi i n d~(c) / 2^j).
inline Eigen::MatrixXcd shannon_blocks(const qwat::TreeSpec& t) {
  const std::int64_t N = t.size();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(N, N);
  for (const auto& l : t.leaves) {
    const std::int64_t B = p2(l.j), base = l.m * B;
    for (std::int64_t n = 0; n < B; ++n)
      for (std::int64_t c = 0; c < B; ++c)
        C(base + n, base + c) = std::exp(cplx(0, 2 * pi * static_cast<double>(n * dtilde(c, l.j, l.m)) / B)) /
                                std::sqrt(static_cast<double>(B));
  }
  return C;
}

// rho as a lookup table: evens fixed, and for every leaf but the leftmost the
// odd pairs m 2^j + 2s - 1 <-> m 2^j - 2s - 1 for 1 <= s <= mu0(j, m).
inline std::vector<std::int64_t> rho_table(const qwat::TreeSpec& t) {
  std::vector<std::int64_t> r(t.size());
  for (std::int64_t i = 0; i < t.size(); ++i) r[i] = i;
  for (std::size_t li = 1; li < t.leaves.size(); ++li) {
    const auto& l = t.leaves[li];
    const std::int64_t c = l.m * p2(l.j);
    for (std::int64_t s = 1; s <= mu0(l.j, l.m); ++s) {
      r[c + 2 * s - 1] = c - 2 * s - 1;
      r[c - 2 * s - 1] = c + 2 * s - 1;
    }
  }
  return r;
}

// Leaves whose integer frequency support contains k.
inline int support_count(std::int64_t k, const qwat::TreeSpec& t) {
  int count = 0;
  const std::int64_t a = k < 0 ? -k : k;
  for (const auto& l : t.leaves) {
    const std::int64_t lo = p2(l.j - 1) * l.m, hi = p2(l.j - 1) * (l.m + 1);
    std::int64_t d0 = a - lo, d1 = a - hi;
    if (d0 < 0) d0 = -d0;
    if (d1 < 0) d1 = -d1;
    if (d0 <= mu0(l.j, l.m) || d1 <= mu1(l.j, l.m)) ++count;
  }
  return count;
}

inline Eigen::VectorXcd random_signal(std::int64_t N, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd v(N);
  for (auto& z : v) z = cplx(nd(rng), nd(rng));
  return v / v.norm();
}

// Trees used by the property sweeps, grouped by family.
struct Suite {
  std::vector<qwat::TreeSpec> uniform, dyadic, parabolic, random;
};

inline Suite shannon_suite(int lmin, int lmax) {
  Suite s;
  for (int L = lmin; L <= lmax; ++L) {
    for (int j0 = 1; j0 < L; ++j0) s.uniform.push_back(qwat::uniform_tree(L, j0));
    s.dyadic.push_back(qwat::dyadic_tree(L));
    s.dyadic.push_back(qwat::mirror_tree(qwat::dyadic_tree(L)));
    if (L >= 3) {
      s.parabolic.push_back(qwat::parabolic_tree(L));
      s.parabolic.push_back(qwat::mirror_tree(qwat::parabolic_tree(L)));
      for (std::uint64_t seed = 0; seed < 3; ++seed) s.random.push_back(qwat::random_monotonic_tree(L, seed));
    }
  }
  return s;
}

// Same families restricted to trees that pass the wave atom checks.
inline Suite wave_atom_suite(int lmin, int lmax) {
  Suite all = shannon_suite(lmin, lmax), s;
  auto keep = [](const std::vector<qwat::TreeSpec>& in, std::vector<qwat::TreeSpec>& out) {
    for (const auto& t : in)
      if (t.leaves.size() >= 2 && qwat::validate_wave_atom_tree(t.leaves, t.L)) out.push_back(t);
  };
  keep(all.uniform, s.uniform);
  keep(all.dyadic, s.dyadic);
  keep(all.parabolic, s.parabolic);
  keep(all.random, s.random);
  return s;
}

inline std::vector<qwat::TreeSpec> flatten(const Suite& s) {
  std::vector<qwat::TreeSpec> out;
  for (const auto* f : {&s.uniform, &s.dyadic, &s.parabolic, &s.random}) out.insert(out.end(), f->begin(), f->end());
  return out;
}

}  // namespace ref
