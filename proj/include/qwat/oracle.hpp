#pragma once

#include "qwat/tree.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>

namespace qwat {

using cplx = std::complex<double>;
/// Row and column indices are packed indices for transforms, frequency
/// encoded indices for inputs of C^S, C^A, F^A, G^A and R.
using DenseUnitary = Eigen::MatrixXcd;
using CoefficientVector = Eigen::VectorXcd;

enum class TransformKind { shannon, waveatom };
TransformKind parse_kind(const std::string& s);
std::string kind_name(TransformKind k);

struct Profile {
  std::function<double(double)> g;
  double support_lo = 0;
  double support_hi = 0;
};

double g_cosine(double w);
Profile cosine_profile();

struct ProfileReport {
  bool ok = true;
  double sum_of_squares = 0;  // max |g^2(pi/2-w) + g^2(pi/2+w) - 1|
  double asymmetry = 0;       // max |g(-2w-pi/2) - g(pi/2+w)|
  double support = 0;         // max |g| sampled outside the declared support
  double worst_w = 0;
  std::string message;
};
ProfileReport validate_profile(const Profile& profile, int sample_count, double tol = 1e-12);

double alpha(std::int64_t m);
cplx psi_hat(int j, std::int64_t m, double xi, const Profile& profile);
cplx phi_hat(int j, std::int64_t m, double xi);
cplx psi_tilde(int j, std::int64_t m, std::int64_t k, const TreeSpec& tree, const Profile& profile);

DenseUnitary build_CS(const TreeSpec& tree);
DenseUnitary build_FA(const TreeSpec& tree);
DenseUnitary build_GA(const TreeSpec& tree, const Profile& profile);
DenseUnitary build_GA_tilde(const TreeSpec& tree, const Profile& profile);
DenseUnitary build_R(const TreeSpec& tree);
DenseUnitary build_CA(const TreeSpec& tree, const Profile& profile);

double v_angle(int j, std::int64_t m, std::int64_t n, const TreeSpec& tree);

/// f_hat[d(i)] at position i, with f_hat[k] = N^{-1/2} sum_x f[x] e^{-2 pi i x k / N}.
Eigen::VectorXcd encoded_dft(const Eigen::VectorXcd& signal);
/// Matrix of encoded_dft on 2^L points.
DenseUnitary build_encoded_dft(int L);
CoefficientVector classical_transform(const Eigen::VectorXcd& signal, const TreeSpec& tree, TransformKind kind,
                                      const Profile& profile = cosine_profile());

double max_abs(const Eigen::MatrixXcd& a);
double unitarity_error(const Eigen::MatrixXcd& u);

/// Throws std::invalid_argument unless the tree is usable for the transform.
void require_tree_for(const TreeSpec& tree, TransformKind kind);

}  // namespace qwat
