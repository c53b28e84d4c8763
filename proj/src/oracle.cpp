#include "qwat/oracle.hpp"

#include <cmath>
#include <numbers>

namespace qwat {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I1{0.0, 1.0};

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

// e^{i pi r / 2^e} for integer r, reduced before the trig call.
cplx phase_dyadic(std::int64_t r, int e) {
  std::int64_t mod = pow2(e + 1);
  double ang = pi * static_cast<double>(floor_mod(r, mod)) / static_cast<double>(pow2(e));
  return std::polar(1.0, ang);
}

}  // namespace

TransformKind parse_kind(const std::string& s) {
  if (s == "shannon") return TransformKind::shannon;
  if (s == "waveatom") return TransformKind::waveatom;
  throw ParseError("unknown transform kind: " + s);
}

std::string kind_name(TransformKind k) { return k == TransformKind::shannon ? "shannon" : "waveatom"; }

void require_tree_for(const TreeSpec& tree, TransformKind kind) {
  if (kind == TransformKind::shannon) {
    auto rep = validate_wave_packet_tree(tree.leaves, tree.L);
    if (!rep) throw std::invalid_argument("invalid wave packet tree: " + rep.message);
    return;
  }
  auto rep = validate_wave_atom_tree(tree.leaves, tree.L);
  if (!rep) throw std::invalid_argument("invalid wave atom tree: " + rep.message);
  if (tree.leaves.size() < 2)
    throw std::invalid_argument("wave atom transform needs at least two leaves (a single leaf is both borders)");
}

double g_cosine(double w) {
  if (w >= -7 * pi / 6 && w <= pi / 6) return std::cos(3 * w / 8 - pi / 16);
  if (w > pi / 6 && w <= 5 * pi / 6) return std::cos(3 * w / 4 - pi / 8);
  return 0.0;
}

Profile cosine_profile() { return {g_cosine, -7 * pi / 6, 5 * pi / 6}; }

ProfileReport validate_profile(const Profile& profile, int sample_count, double tol) {
  if (sample_count < 2) throw std::invalid_argument("validate_profile: need at least 2 samples");
  ProfileReport rep;
  const auto& g = profile.g;
  for (int i = 0; i < sample_count; ++i) {
    double w = -pi / 3 + (2 * pi / 3) * i / (sample_count - 1);
    double a = std::abs(g(pi / 2 - w) * g(pi / 2 - w) + g(pi / 2 + w) * g(pi / 2 + w) - 1.0);
    double b = std::abs(g(-2 * w - pi / 2) - g(pi / 2 + w));
    if (a > rep.sum_of_squares || b > rep.asymmetry) rep.worst_w = w;
    rep.sum_of_squares = std::max(rep.sum_of_squares, a);
    rep.asymmetry = std::max(rep.asymmetry, b);
  }
  // The declared support must sit inside (-7pi/6, 5pi/6) and g must vanish outside it.
  if (profile.support_lo < -7 * pi / 6 - 1e-12 || profile.support_hi > 5 * pi / 6 + 1e-12) rep.support = 1.0;
  for (int i = 1; i <= sample_count; ++i) {
    double t = 3.0 * i / sample_count;
    rep.support = std::max(rep.support, std::abs(g(profile.support_lo - t)));
    rep.support = std::max(rep.support, std::abs(g(profile.support_hi + t)));
  }
  rep.ok = rep.sum_of_squares <= tol && rep.asymmetry <= tol && rep.support <= tol;
  if (!rep.ok) {
    rep.message = "profile violates";
    if (rep.sum_of_squares > tol) rep.message += " sum-of-squares";
    if (rep.asymmetry > tol) rep.message += " asymmetry";
    if (rep.support > tol) rep.message += " support";
  }
  return rep;
}

double alpha(std::int64_t m) { return pi / 2 * (static_cast<double>(m) + 0.5); }

cplx psi_hat(int j, std::int64_t m, double xi, const Profile& profile) {
  double x = std::ldexp(xi, -j);
  double a = alpha(m);
  double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  cplx bumps = std::polar(1.0, a) * profile.g(sgn * (2 * pi * x - 2 * a)) +
               std::polar(1.0, -a) * profile.g(-sgn * (2 * pi * x + 2 * a));
  return std::pow(2.0, -j / 2.0) * std::polar(1.0, -pi * x) * bumps;
}

cplx phi_hat(int j, std::int64_t m, double xi) {
  double x = std::ldexp(xi, 1 - j);
  double md = static_cast<double>(m);
  bool in = (x >= -md - 1 && x < -md) || (x >= md && x < md + 1);
  return in ? cplx(std::pow(2.0, -j / 2.0), 0.0) : cplx(0.0, 0.0);
}

cplx psi_tilde(int j, std::int64_t m, std::int64_t k, const TreeSpec& tree, const Profile& profile) {
  if (!is_leaf(tree, j, m)) throw std::invalid_argument("psi_tilde: (j,m) is not a leaf");
  const Leaf& lft = tree.leaves.front();
  const Leaf& rgt = tree.leaves.back();
  auto straight = [&](std::int64_t mm) {
    double side = k < 0 ? -1.0 : 1.0;
    return std::pow(2.0, -j / 2.0) * phase_dyadic(-k, j) * std::polar(1.0, side * alpha(mm));
  };
  if (Leaf{j, m} == lft && std::abs(k) <= left_border(tree)) return straight(0);
  if (Leaf{j, m} == rgt && std::abs(k) > right_border(tree)) return straight(m);
  return psi_hat(j, m, static_cast<double>(k), profile);
}

DenseUnitary build_CS(const TreeSpec& tree) {
  require_tree_for(tree, TransformKind::shannon);
  const std::int64_t N = tree.size();
  DenseUnitary C = DenseUnitary::Zero(N, N);
  for (const auto& l : tree.leaves) {
    for (std::int64_t n = 0; n < pow2(l.j); ++n) {
      for (std::int64_t i = 0; i < N; ++i) {
        std::int64_t k = decode_index(i);
        cplx amp = phi_hat(l.j, l.m, static_cast<double>(k));
        if (amp == cplx(0, 0)) continue;
        // conj(e^{-i 2 pi n 2^{-j} k} phi) = e^{i pi (2 n k) / 2^j} phi
        C(l.m * pow2(l.j) + n, i) = phase_dyadic(2 * n * k, l.j) * amp;
      }
    }
  }
  return C;
}

DenseUnitary build_FA(const TreeSpec& tree) {
  require_tree_for(tree, TransformKind::waveatom);
  const std::int64_t N = tree.size();
  DenseUnitary F = DenseUnitary::Zero(N, N);
  for (const auto& l : tree.leaves) {
    const std::int64_t base = l.m * pow2(l.j);
    const double s = std::pow(2.0, -l.j / 2.0);
    for (std::int64_t c = 0; c < pow2(l.j); ++c) {
      std::int64_t d = decode_index(base + c);
      cplx side = std::polar(1.0, (c % 2 == 1 ? 1.0 : -1.0) * alpha(l.m));
      for (std::int64_t n = 0; n < pow2(l.j); ++n) F(base + n, base + c) = s * phase_dyadic((2 * n + 1) * d, l.j) * side;
    }
  }
  return F;
}

namespace {

void set_block(DenseUnitary& G, std::int64_t a, cplx diag, cplx off) {
  G(a, a) = diag;
  G(a + 1, a + 1) = diag;
  G(a, a + 1) = off;
  G(a + 1, a) = off;
}

}  // namespace

DenseUnitary build_GA(const TreeSpec& tree, const Profile& profile) {
  require_tree_for(tree, TransformKind::waveatom);
  const std::int64_t N = tree.size();
  DenseUnitary G = DenseUnitary::Identity(N, N);
  for (std::size_t li = 1; li < tree.leaves.size(); ++li) {
    const Leaf& l = tree.leaves[li];
    const double sgn = (l.m % 2 == 0) ? 1.0 : -1.0;
    const std::int64_t mu = mu0(l.j, l.m);
    for (std::int64_t s = -mu; s <= mu; ++s) {
      double x = std::ldexp(pi * static_cast<double>(std::abs(s)), 1 - l.j);
      cplx gm = profile.g(sgn * (x - pi / 2));
      cplx gp = I1 * (s < 0 ? -1.0 : 1.0) * profile.g(-sgn * (x + pi / 2));
      set_block(G, l.m * pow2(l.j) + 2 * s - 1, gm, gp);
    }
  }
  return G;
}

DenseUnitary build_GA_tilde(const TreeSpec& tree, const Profile& profile) {
  require_tree_for(tree, TransformKind::waveatom);
  const std::int64_t N = tree.size();
  DenseUnitary G = DenseUnitary::Identity(N, N);
  for (std::size_t li = 0; li < tree.leaves.size(); ++li) {
    const Leaf& l = tree.leaves[li];
    const double sgn = (l.m % 2 == 0) ? 1.0 : -1.0;
    const std::int64_t mu = mu0(l.j, l.m);
    for (std::int64_t n = 0; n < pow2(l.j - 1); ++n) {
      double x = std::ldexp(static_cast<double>(n), 1 - l.j);
      cplx gm = profile.g(sgn * pi * (x - 0.5));
      cplx gp;
      if (n <= mu) {
        if (li == 0) continue;
        gp = I1 * profile.g(-sgn * pi * (x + 0.5));
      } else {
        if (li + 1 == tree.leaves.size()) continue;
        gp = -I1 * profile.g(-sgn * pi * (x - 1.5));
      }
      set_block(G, l.m * pow2(l.j) + 2 * n, gm, gp);
    }
  }
  return G;
}

DenseUnitary build_R(const TreeSpec& tree) {
  require_tree_for(tree, TransformKind::waveatom);
  const std::int64_t N = tree.size();
  DenseUnitary R = DenseUnitary::Zero(N, N);
  for (std::int64_t i = 0; i < N; ++i) R(rho(i, tree), i) = 1.0;
  return R;
}

DenseUnitary build_CA(const TreeSpec& tree, const Profile& profile) {
  require_tree_for(tree, TransformKind::waveatom);
  const std::int64_t N = tree.size();
  DenseUnitary C = DenseUnitary::Zero(N, N);
  for (const auto& l : tree.leaves) {
    for (std::int64_t i = 0; i < N; ++i) {
      std::int64_t k = decode_index(i);
      cplx base = std::conj(psi_tilde(l.j, l.m, k, tree, profile));
      if (base == cplx(0, 0)) continue;
      for (std::int64_t n = 0; n < pow2(l.j); ++n) C(l.m * pow2(l.j) + n, i) = phase_dyadic(2 * n * k, l.j) * base;
    }
  }
  return C;
}

double v_angle(int j, std::int64_t m, std::int64_t n, const TreeSpec& tree) {
  if (!is_leaf(tree, j, m)) throw std::invalid_argument("v_angle: (j,m) is not a leaf");
  if (n < 0 || n >= pow2(j - 1)) throw std::out_of_range("v_angle: n out of range");
  const double scale = pi / std::ldexp(1.0, j + 2);
  const std::int64_t mu = mu0(j, m);
  if (m % 2 == 1) return scale * static_cast<double>(3 * n - pow2(j - 1)) * (n <= mu ? 2.0 : 1.0);
  return scale * static_cast<double>(3 * n - pow2(j)) * (n > mu ? 2.0 : 1.0);
}

Eigen::VectorXcd encoded_dft(const Eigen::VectorXcd& signal) {
  const std::int64_t N = signal.size();
  if (N < 2 || (N & (N - 1)) != 0) throw std::invalid_argument("signal length must be a power of two");
  int L = 0;
  while ((std::int64_t{1} << L) < N) ++L;
  Eigen::VectorXcd out(N);
  const double norm = 1.0 / std::sqrt(static_cast<double>(N));
  for (std::int64_t i = 0; i < N; ++i) {
    std::int64_t k = decode_index(i);
    cplx acc = 0;
    for (std::int64_t x = 0; x < N; ++x) acc += signal[x] * phase_dyadic(-2 * x * k, L);
    out[i] = acc * norm;
  }
  return out;
}

DenseUnitary build_encoded_dft(int L) {
  if (L < 1 || L > 14) throw std::out_of_range("build_encoded_dft: need 1 <= L <= 14");
  const std::int64_t N = std::int64_t{1} << L;
  const double norm = 1.0 / std::sqrt(static_cast<double>(N));
  DenseUnitary F(N, N);
  for (std::int64_t i = 0; i < N; ++i)
    for (std::int64_t x = 0; x < N; ++x) F(i, x) = phase_dyadic(-2 * x * decode_index(i), L) * norm;
  return F;
}

CoefficientVector classical_transform(const Eigen::VectorXcd& signal, const TreeSpec& tree, TransformKind kind,
                                      const Profile& profile) {
  if (signal.size() != tree.size()) throw std::invalid_argument("signal length does not match 2^L");
  Eigen::VectorXcd fhat = encoded_dft(signal);
  DenseUnitary C = kind == TransformKind::shannon ? build_CS(tree) : build_CA(tree, profile);
  return C * fhat;
}

double max_abs(const Eigen::MatrixXcd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double unitarity_error(const Eigen::MatrixXcd& u) {
  return max_abs(u * u.adjoint() - Eigen::MatrixXcd::Identity(u.rows(), u.cols()));
}

}  // namespace qwat
