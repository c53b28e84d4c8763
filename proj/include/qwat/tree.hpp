#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwat {

/// Thrown on malformed external input (tree files, circuit text, CSV).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Leaf {
  int j = 0;
  std::int64_t m = 0;
  bool operator==(const Leaf&) const = default;
};

/// Wavelet packet tree over 2^L points, stored as its leaves in left-to-right
/// order. Leaf (j, m) owns the packed index range [m 2^j, (m+1) 2^j).
struct TreeSpec {
  int L = 0;
  std::vector<Leaf> leaves;

  std::int64_t size() const { return std::int64_t{1} << L; }
  bool operator==(const TreeSpec&) const = default;
};

struct ValidationReport {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

struct PackedIndex {
  int j = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
  bool operator==(const PackedIndex&) const = default;
};

// Tree families.
TreeSpec uniform_tree(int L, int j0);
TreeSpec dyadic_tree(int L);
TreeSpec parabolic_tree(int L);
TreeSpec random_monotonic_tree(int L, std::uint64_t seed);
TreeSpec mirror_tree(const TreeSpec& tree);
/// "uniform" (j0 = ceil(L/2)), "dyadic" or "parabolic".
TreeSpec family_tree(const std::string& family, int L);

ValidationReport validate_wave_packet_tree(const std::vector<Leaf>& leaves, int L);
ValidationReport validate_wave_atom_tree(const std::vector<Leaf>& leaves, int L);
bool is_monotonic(const std::vector<Leaf>& leaves);

/// m_j^* for j = 1..L-1 (element j-1). Throws for non-monotonic trees.
std::vector<std::int64_t> mstar_of(const TreeSpec& tree);
TreeSpec leaves_from_mstar(const std::vector<std::int64_t>& mstar, int L);

/// Index into tree.leaves of the leaf whose block contains p.
std::size_t leaf_index_of(std::int64_t p, const TreeSpec& tree);
int h_tilde(std::int64_t p, const TreeSpec& tree);
bool h_j(std::int64_t p, int j, const TreeSpec& tree);

std::int64_t encode_freq(std::int64_t k, std::int64_t N);
std::int64_t decode_freq(std::int64_t i, std::int64_t N);
/// d(i) without range checks; valid for any i >= 0.
inline std::int64_t decode_index(std::int64_t i) { return (i % 2 == 0) ? i / 2 : -(i + 1) / 2; }
std::int64_t retaining_decode(std::int64_t c, int j, std::int64_t m);

std::int64_t pack(int j, std::int64_t m, std::int64_t n);
PackedIndex unpack(std::int64_t p, const TreeSpec& tree);
bool is_leaf(const TreeSpec& tree, int j, std::int64_t m);

std::int64_t mu0(int j, std::int64_t m);
std::int64_t mu1(int j, std::int64_t m);
bool in_integer_support(std::int64_t k, int j, std::int64_t m);

/// Upper limit (inclusive) of the non-straightened frequency range,
/// m_r 2^{j_r-1} + mu0(j_r, m_r) for the rightmost leaf.
std::int64_t right_border(const TreeSpec& tree);
/// mu0(j_l, 0) for the leftmost leaf.
std::int64_t left_border(const TreeSpec& tree);

std::int64_t rho(std::int64_t i, const TreeSpec& tree);
std::int64_t rho_dot(std::int64_t k, const TreeSpec& tree);
int h_rho_tilde(std::int64_t k, const TreeSpec& tree);
bool h_rho_j(std::int64_t k, int j, const TreeSpec& tree);

/// {"L": 4, "leaves": [[1,0],[1,1],...]} or {"L": 4, "mstar": [...]}.
TreeSpec tree_from_json(const std::string& text);
std::string tree_to_json(const TreeSpec& tree);
std::string to_string(const TreeSpec& tree);

}  // namespace qwat
