#include "qwat/tree.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <sstream>

namespace qwat {

namespace {

std::int64_t pow2(int e) { return std::int64_t{1} << e; }

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

std::string leaf_str(const Leaf& l) {
  return "(" + std::to_string(l.j) + "," + std::to_string(l.m) + ")";
}

void require_valid(const TreeSpec& tree) {
  auto rep = validate_wave_packet_tree(tree.leaves, tree.L);
  if (!rep) throw std::invalid_argument("invalid wave packet tree: " + rep.message);
}

}  // namespace

TreeSpec uniform_tree(int L, int j0) {
  if (L < 2 || j0 < 1 || j0 > L - 1)
    throw std::invalid_argument("uniform_tree: need 1 <= j0 <= L-1");
  TreeSpec t{L, {}};
  for (std::int64_t m = 0; m < pow2(L - j0); ++m) t.leaves.push_back({j0, m});
  return t;
}

TreeSpec dyadic_tree(int L) {
  if (L < 2) throw std::invalid_argument("dyadic_tree: need L >= 2");
  TreeSpec t{L, {{1, 0}, {1, 1}}};
  for (int j = 2; j < L; ++j) t.leaves.push_back({j, 1});
  return t;
}

TreeSpec parabolic_tree(int L) {
  if (L < 3) throw std::invalid_argument("parabolic_tree: need L >= 3");
  TreeSpec t{L, {}};
  int j = 1;
  std::int64_t m = 0;
  while (true) {
    t.leaves.push_back({j, m});
    if ((m + 1) * pow2(j) == pow2(L)) break;
    if (m % 4 == 1 && m + 1 >= pow2(j) && j + 1 <= L - 1) {
      m = (m + 1) / 2;
      ++j;
    } else {
      ++m;
    }
  }
  return t;
}

TreeSpec random_monotonic_tree(int L, std::uint64_t seed) {
  if (L < 3) return dyadic_tree(std::max(L, 2));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> start(1, L - 2);
  std::bernoulli_distribution up(0.4);
  TreeSpec t{L, {}};
  int j = start(rng);
  std::int64_t m = 0;
  while (true) {
    t.leaves.push_back({j, m});
    if ((m + 1) * pow2(j) == pow2(L)) break;
    if (m % 4 == 1 && j + 1 <= L - 1 && up(rng)) {
      m = (m + 1) / 2;
      ++j;
    } else {
      ++m;
    }
  }
  return t;
}

TreeSpec mirror_tree(const TreeSpec& tree) {
  TreeSpec t{tree.L, {}};
  for (auto it = tree.leaves.rbegin(); it != tree.leaves.rend(); ++it)
    t.leaves.push_back({it->j, pow2(tree.L - it->j) - 1 - it->m});
  return t;
}

TreeSpec family_tree(const std::string& family, int L) {
  if (family == "uniform") return uniform_tree(L, (L + 1) / 2);
  if (family == "dyadic") return dyadic_tree(L);
  if (family == "parabolic") return parabolic_tree(L);
  throw std::invalid_argument("unknown tree family '" + family + "'");
}

ValidationReport validate_wave_packet_tree(const std::vector<Leaf>& leaves, int L) {
  if (L < 2) return {false, "L must be at least 2"};
  if (L > 30) return {false, "L too large"};
  if (leaves.empty()) return {false, "no leaves"};
  for (const auto& l : leaves) {
    if (l.j < 1 || l.j > L - 1)
      return {false, "leaf " + leaf_str(l) + " has level outside 1..L-1"};
    if (l.m < 0 || l.m >= pow2(L - l.j))
      return {false, "leaf " + leaf_str(l) + " has m outside 0..2^(L-j)-1"};
  }
  if (leaves.front().m != 0)
    return {false, "first leaf " + leaf_str(leaves.front()) + " must have m = 0"};
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    const auto& a = leaves[i];
    const auto& b = leaves[i + 1];
    std::int64_t end = (a.m + 1) * pow2(a.j);
    std::int64_t start = b.m * pow2(b.j);
    if (end != start)
      return {false, "leaves " + leaf_str(a) + " and " + leaf_str(b) + " are not adjacent: block ends at " +
                         std::to_string(end) + " but next starts at " + std::to_string(start)};
  }
  const auto& last = leaves.back();
  if ((last.m + 1) * pow2(last.j) != pow2(L))
    return {false, "last leaf " + leaf_str(last) + " ends at " + std::to_string((last.m + 1) * pow2(last.j)) +
                       " instead of " + std::to_string(pow2(L))};
  return {};
}

// The neighbour rules come first so that their message wins when both kinds fail.
ValidationReport validate_wave_atom_tree(const std::vector<Leaf>& leaves, int L) {
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i) {
    const auto& a = leaves[i];
    const auto& b = leaves[i + 1];
    std::string pair = leaf_str(a) + " -> " + leaf_str(b);
    if (std::abs(a.j - b.j) > 1) return {false, pair + ": level jump larger than 1"};
    if (b.j == a.j + 1 && (a.m % 2 == 0 || b.m % 2 == 0))
      return {false, pair + ": step up requires both m odd"};
    if (b.j == a.j - 1 && (a.m % 2 == 1 || b.m % 2 == 1))
      return {false, pair + ": step down requires both m even"};
  }
  return validate_wave_packet_tree(leaves, L);
}

bool is_monotonic(const std::vector<Leaf>& leaves) {
  for (std::size_t i = 0; i + 1 < leaves.size(); ++i)
    if (leaves[i + 1].j < leaves[i].j) return false;
  return true;
}

std::vector<std::int64_t> mstar_of(const TreeSpec& tree) {
  require_valid(tree);
  if (!is_monotonic(tree.leaves)) throw std::invalid_argument("mstar_of: tree is not monotonic");
  std::vector<std::int64_t> out;
  for (int j = 1; j < tree.L; ++j) {
    // Start of the first block at level >= j; aligned to 2^j by monotonicity.
    std::int64_t start = pow2(tree.L);
    for (const auto& l : tree.leaves) {
      if (l.j >= j) {
        start = l.m * pow2(l.j);
        break;
      }
    }
    out.push_back(start / pow2(j));
  }
  return out;
}

TreeSpec leaves_from_mstar(const std::vector<std::int64_t>& mstar, int L) {
  if (L < 2 || static_cast<int>(mstar.size()) != L - 1)
    throw std::invalid_argument("leaves_from_mstar: expected L-1 entries");
  TreeSpec t{L, {}};
  for (int j = 1; j < L; ++j) {
    std::int64_t begin = mstar[j - 1] * pow2(j);
    std::int64_t end = (j + 1 < L) ? mstar[j] * pow2(j + 1) : pow2(L);
    if (begin < 0 || end < begin || end % pow2(j) != 0)
      throw std::invalid_argument("leaves_from_mstar: inconsistent m* at level " + std::to_string(j));
    for (std::int64_t m = mstar[j - 1]; m < end / pow2(j); ++m) t.leaves.push_back({j, m});
  }
  require_valid(t);
  return t;
}

std::size_t leaf_index_of(std::int64_t p, const TreeSpec& tree) {
  if (p < 0 || p >= tree.size()) throw std::out_of_range("packed index out of range");
  // Leaf starts are increasing; find the last start <= p.
  auto it = std::upper_bound(tree.leaves.begin(), tree.leaves.end(), p,
                             [](std::int64_t v, const Leaf& l) { return v < l.m * pow2(l.j); });
  if (it == tree.leaves.begin()) throw std::invalid_argument("tree does not cover index");
  return static_cast<std::size_t>(std::distance(tree.leaves.begin(), it) - 1);
}

int h_tilde(std::int64_t p, const TreeSpec& tree) { return tree.leaves[leaf_index_of(p, tree)].j; }

bool h_j(std::int64_t p, int j, const TreeSpec& tree) { return h_tilde(p, tree) >= j; }

std::int64_t encode_freq(std::int64_t k, std::int64_t N) {
  if (k < -N / 2 || k >= N / 2) throw std::out_of_range("encode_freq: k out of range");
  return k >= 0 ? 2 * k : 2 * (-k) - 1;
}

std::int64_t decode_freq(std::int64_t i, std::int64_t N) {
  if (i < 0 || i >= N) throw std::out_of_range("decode_freq: i out of range");
  return decode_index(i);
}

std::int64_t retaining_decode(std::int64_t c, int j, std::int64_t m) {
  if (j < 1 || c < 0 || c >= pow2(j)) throw std::out_of_range("retaining_decode: c out of range");
  return floor_mod(decode_index(m * pow2(j) + c), pow2(j));
}

std::int64_t pack(int j, std::int64_t m, std::int64_t n) {
  if (n < 0 || n >= pow2(j)) throw std::out_of_range("pack: n out of range");
  return m * pow2(j) + n;
}

PackedIndex unpack(std::int64_t p, const TreeSpec& tree) {
  const Leaf& l = tree.leaves[leaf_index_of(p, tree)];
  return {l.j, l.m, p - l.m * pow2(l.j)};
}

bool is_leaf(const TreeSpec& tree, int j, std::int64_t m) {
  return std::find(tree.leaves.begin(), tree.leaves.end(), Leaf{j, m}) != tree.leaves.end();
}

std::int64_t mu0(int j, std::int64_t m) { return pow2(j - (m % 2 == 1 ? 1 : 0)) / 3; }
std::int64_t mu1(int j, std::int64_t m) { return pow2(j - (m % 2 == 0 ? 1 : 0)) / 3; }

bool in_integer_support(std::int64_t k, int j, std::int64_t m) {
  std::int64_t a = std::abs(k);
  std::int64_t half = pow2(j - 1);
  return std::abs(a - half * m) <= mu0(j, m) || std::abs(a - half * (m + 1)) <= mu1(j, m);
}

std::int64_t left_border(const TreeSpec& tree) { return mu0(tree.leaves.front().j, 0); }

std::int64_t right_border(const TreeSpec& tree) {
  const Leaf& r = tree.leaves.back();
  return r.m * pow2(r.j - 1) + mu0(r.j, r.m);
}

std::int64_t rho(std::int64_t i, const TreeSpec& tree) {
  if (i < 0 || i >= tree.size()) throw std::out_of_range("rho: index out of range");
  if (i % 2 == 0) return i;
  for (std::size_t li = 1; li < tree.leaves.size(); ++li) {
    const Leaf& l = tree.leaves[li];
    std::int64_t base = l.m * pow2(l.j);
    std::int64_t s = (i + 1 - base) / 2;
    if (std::abs(s) <= mu0(l.j, l.m)) return base - 2 * s - 1;
  }
  return i;
}

std::int64_t rho_dot(std::int64_t k, const TreeSpec& tree) {
  if (k < 0 || k >= tree.size() / 2) throw std::out_of_range("rho_dot: index out of range");
  for (std::size_t li = 1; li < tree.leaves.size(); ++li) {
    const Leaf& l = tree.leaves[li];
    std::int64_t c = l.m * pow2(l.j - 1);
    if (std::abs(k - c) <= mu0(l.j, l.m)) return 2 * c - k;
  }
  return k;
}

int h_rho_tilde(std::int64_t k, const TreeSpec& tree) {
  if (k < 0 || k >= tree.size() / 2) throw std::out_of_range("h_rho_tilde: index out of range");
  if (k <= left_border(tree) || k > right_border(tree)) return 0;
  for (std::size_t li = 1; li < tree.leaves.size(); ++li) {
    const Leaf& l = tree.leaves[li];
    if (std::abs(k - l.m * pow2(l.j - 1)) <= mu0(l.j, l.m)) return l.j - static_cast<int>(l.m % 2);
  }
  return 0;
}

bool h_rho_j(std::int64_t k, int j, const TreeSpec& tree) { return h_rho_tilde(k, tree) == j; }

TreeSpec tree_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("tree file: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("L")) throw ParseError("tree file: missing field \"L\"");
    int L = doc.at("L").get<int>();
    if (doc.contains("leaves")) {
      TreeSpec t{L, {}};
      for (const auto& pair : doc.at("leaves")) {
        if (!pair.is_array() || pair.size() != 2) throw ParseError("tree file: each leaf must be [j, m]");
        t.leaves.push_back({pair[0].get<int>(), pair[1].get<std::int64_t>()});
      }
      return t;
    }
    if (doc.contains("mstar")) return leaves_from_mstar(doc.at("mstar").get<std::vector<std::int64_t>>(), L);
    throw ParseError("tree file: need \"leaves\" or \"mstar\"");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree file: ") + e.what());
  }
}

std::string tree_to_json(const TreeSpec& tree) {
  nlohmann::json doc;
  doc["L"] = tree.L;
  doc["leaves"] = nlohmann::json::array();
  for (const auto& l : tree.leaves) doc["leaves"].push_back({l.j, l.m});
  return doc.dump();
}

std::string to_string(const TreeSpec& tree) {
  std::ostringstream os;
  os << "L=" << tree.L << " [";
  for (std::size_t i = 0; i < tree.leaves.size(); ++i) os << (i ? "," : "") << leaf_str(tree.leaves[i]);
  os << "]";
  return os.str();
}

}  // namespace qwat
