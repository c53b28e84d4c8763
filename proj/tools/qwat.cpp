// qwat: build, run and check wave atom / Shannon wavelet circuits from the shell.
//
// Exit codes: 0 success, 1 semantic failure (invalid tree for the transform,
// failed check, length mismatch), 2 unreadable or malformed input.

#include "qwat/builders.hpp"
#include "qwat/oracle.hpp"
#include "qwat/simulator.hpp"
#include "qwat/tree.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace qwat;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct RunConfig {
  std::string tree_file;
  std::string kind = "shannon";
  std::string input;
  std::string out;
  std::string backend = "reference";
  std::optional<double> tol;
  int lmin = 3;
  int lmax = 8;
  std::string family = "parabolic";
  int max_sim_qubits = 24;  // the wave atom pipeline at L = 6
  double profile_scale = 1.0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TreeSpec load_tree(const std::string& path) { return tree_from_json(read_file(path)); }

// One value per line, "re" or "re,im". Blank lines are skipped.
Eigen::VectorXcd read_signal(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<cplx> vals;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double re = 0, im = 0;
    std::string extra;
    if (!(ls >> re)) throw ParseError(path + ": line " + std::to_string(lineno) + ": expected a number");
    if (!(ls >> im)) {
      ls.clear();
      im = 0;
    }
    if (ls >> extra) throw ParseError(path + ": line " + std::to_string(lineno) + ": too many columns");
    vals.emplace_back(re, im);
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // + 0.0 folds -0 into 0
  return buf;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Profile make_profile(double scale) {
  Profile p = cosine_profile();
  if (scale != 1.0) p.g = [scale](double w) { return scale * g_cosine(w); };
  return p;
}

TransformCircuit transform_circuit(const TreeSpec& tree, TransformKind kind) {
  return kind == TransformKind::shannon ? build_shannon_transform(tree) : build_wave_atom_transform(tree);
}

// ---- validate ---------------------------------------------------------------

int cmd_validate(const RunConfig& cfg) {
  TreeSpec tree = load_tree(cfg.tree_file);
  auto wp = validate_wave_packet_tree(tree.leaves, tree.L);
  auto wa = validate_wave_atom_tree(tree.leaves, tree.L);
  bool mono = wp.ok && is_monotonic(tree.leaves);
  auto word = [](const ValidationReport& r) { return r.ok ? std::string("ok") : "FAIL (" + r.message + ")"; };
  std::cout << "tree: " << to_string(tree) << "\n";
  std::cout << "wave-packet: " << word(wp) << "\n";
  std::cout << "wave-atom: " << word(wa) << "\n";
  std::cout << "monotonic: " << (mono ? "ok" : "no") << "\n";
  if (mono) {
    std::cout << "m*:";
    for (auto m : mstar_of(tree)) std::cout << " " << m;
    std::cout << "\n";
  }
  std::cout << "wave-packet: " << (wp.ok ? "ok" : "FAIL") << ", wave-atom: " << (wa.ok ? "ok" : "FAIL")
            << ", monotonic: " << (mono ? "ok" : "no") << "\n";
  bool pass = parse_kind(cfg.kind) == TransformKind::shannon ? wp.ok : wa.ok;
  return pass ? kOk : kFail;
}

// ---- build ------------------------------------------------------------------

int cmd_build(const RunConfig& cfg) {
  TreeSpec tree = load_tree(cfg.tree_file);
  TransformKind kind = parse_kind(cfg.kind);
  TransformCircuit tc;
  try {
    tc = transform_circuit(tree, kind);
  } catch (const std::exception& e) {
    std::cerr << "build: " << e.what() << "\n";
    return kFail;
  }
  write_output(cfg.out, serialize(tc.circuit));
  auto gc = gate_count(tc.circuit);
  std::ostream& log = (cfg.out.empty() || cfg.out == "-") ? std::cerr : std::cout;
  log << "qubits: " << tc.circuit.num_qubits() << " (data " << tc.data.size() << ", ancilla "
      << tc.ancillas().size() << ")\n";
  log << "gates: raw " << gc.raw << ", weighted " << gc.weighted << ", multi-controlled " << gc.multi_controlled
      << "\n";
  return kOk;
}

// ---- transform --------------------------------------------------------------

int cmd_transform(const RunConfig& cfg) {
  TreeSpec tree = load_tree(cfg.tree_file);
  TransformKind kind = parse_kind(cfg.kind);
  Eigen::VectorXcd signal = read_signal(cfg.input);
  if (signal.size() != tree.size()) {
    std::cerr << "transform: signal has " << signal.size() << " samples, tree needs " << tree.size() << "\n";
    return kFail;
  }
  CoefficientVector coef;
  try {
    if (cfg.backend == "reference") {
      coef = classical_transform(signal, tree, kind);
    } else {
      TransformCircuit tc = transform_circuit(tree, kind);
      if (tc.circuit.num_qubits() > cfg.max_sim_qubits) {
        std::cerr << "transform: circuit needs " << tc.circuit.num_qubits() << " qubits, above --max-sim-qubits "
                  << cfg.max_sim_qubits << "\n";
        return kFail;
      }
      SparseState s;
      for (Eigen::Index x = 0; x < signal.size(); ++x)
        if (signal[x] != cplx(0)) s[embed_bits(static_cast<std::uint64_t>(x), tc.data)] = signal[x];
      s = run(tc.circuit, std::move(s));
      const std::uint64_t data_mask = embed_bits(static_cast<std::uint64_t>(tree.size()) - 1, tc.data);
      coef = CoefficientVector::Zero(tree.size());
      double leak = 0;
      for (const auto& [i, a] : s) {
        if (i & ~data_mask)
          leak += std::norm(a);
        else
          coef[static_cast<Eigen::Index>(gather_bits(i, tc.data))] = a;
      }
      if (std::sqrt(leak) > 1e-8 * std::max(1.0, signal.norm())) {
        std::cerr << "transform: ancilla leakage " << sci(std::sqrt(leak)) << "\n";
        return kFail;
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "transform: " << e.what() << "\n";
    return kFail;
  }
  std::ostringstream os;
  os << "p,j,m,n,re,im\n";
  for (std::int64_t p = 0; p < tree.size(); ++p) {
    PackedIndex ix = unpack(p, tree);
    os << p << "," << ix.j << "," << ix.m << "," << ix.n << "," << fmt(coef[p].real()) << "," << fmt(coef[p].imag())
       << "\n";
  }
  write_output(cfg.out, os.str());
  return kOk;
}

// ---- verify -----------------------------------------------------------------

struct Checker {
  double tol_matrix;
  double tol_circuit;
  double max_sim_qubits;
  bool ok = true;
  std::string first_failure;

  void report(const std::string& stage, double value, double tol) {
    bool pass = value <= tol;
    std::cout << stage << ": " << sci(value) << (pass ? " ok" : " FAIL") << "\n";
    if (!pass && ok) first_failure = stage;
    ok = ok && pass;
  }
  void fail(const std::string& stage, const std::string& why) {
    std::cout << stage << ": FAIL (" << why << ")\n";
    if (ok) first_failure = stage;
    ok = false;
  }
  void circuit(const std::string& name, const TransformCircuit& tc, const DenseUnitary& oracle) {
    if (tc.circuit.num_qubits() > max_sim_qubits) {
      fail("circuit " + name, std::to_string(tc.circuit.num_qubits()) + " qubits above --max-sim-qubits");
      return;
    }
    Extraction ex = extract_unitary(tc.circuit, tc.data);
    report("circuit " + name, max_abs(ex.unitary - oracle), tol_circuit);
    report("restitution " + name, ex.leakage, tol_matrix);
  }
};

int cmd_verify(const RunConfig& cfg) {
  TreeSpec tree = load_tree(cfg.tree_file);
  TransformKind kind = parse_kind(cfg.kind);
  Profile profile = make_profile(cfg.profile_scale);
  Checker chk{cfg.tol.value_or(1e-10), cfg.tol.value_or(1e-8), static_cast<double>(cfg.max_sim_qubits)};
  std::cout << "tree: " << to_string(tree) << ", transform: " << kind_name(kind) << "\n";
  try {
    require_tree_for(tree, kind);
  } catch (const std::invalid_argument& e) {
    chk.fail("tree", e.what());
    std::cout << "verify: FAIL (tree)\n";
    return kFail;
  }
  const bool monotonic = is_monotonic(tree.leaves);
  if (kind == TransformKind::shannon) {
    DenseUnitary C = build_CS(tree);
    chk.report("unitarity", unitarity_error(C), chk.tol_matrix);
    if (!monotonic) {
      chk.fail("circuit", "circuits need a monotonic tree");
    } else {
      chk.circuit("shannon", build_shannon(tree), C);
      chk.circuit("pipeline", build_shannon_transform(tree), C * build_encoded_dft(tree.L));
    }
  } else {
    DenseUnitary C = build_CA(tree, profile);
    DenseUnitary FA = build_FA(tree), GA = build_GA(tree, profile), R = build_R(tree);
    chk.report("unitarity", unitarity_error(C), chk.tol_matrix);
    chk.report("decomposition", max_abs(C - FA * R.adjoint() * GA * R), chk.tol_matrix);
    if (!monotonic) {
      chk.fail("circuit", "circuits need a monotonic tree");
    } else {
      chk.circuit("fa", build_FA_circuit(tree), FA);
      chk.circuit("ga-tilde", build_GA_tilde_circuit(tree), build_GA_tilde(tree, profile));
      chk.circuit("ga", build_GA_circuit(tree), GA);
      chk.circuit("r", build_R_circuit(tree), R);
      chk.circuit("pipeline", build_wave_atom_transform(tree), C * build_encoded_dft(tree.L));
    }
  }
  std::cout << "verify: " << (chk.ok ? "PASS" : "FAIL (" + chk.first_failure + ")") << "\n";
  return chk.ok ? kOk : kFail;
}

// ---- gatecount --------------------------------------------------------------

int cmd_gatecount(const RunConfig& cfg) {
  if (cfg.lmin < 2 || cfg.lmax > 10 || cfg.lmin > cfg.lmax) {
    std::cerr << "gatecount: need 2 <= lmin <= lmax <= 10\n";
    return kInput;
  }
  TransformKind kind = parse_kind(cfg.kind);
  std::printf("%-3s %9s %9s %9s\n", "L", "raw", "weighted", "w/L^2");
  std::vector<std::pair<int, double>> rows;
  for (int L = cfg.lmin; L <= cfg.lmax; ++L) {
    TreeSpec tree = family_tree(cfg.family, L);
    try {
      auto gc = gate_count(transform_circuit(tree, kind).circuit);
      std::printf("%-3d %9zu %9zu %9.3f\n", L, gc.raw, gc.weighted, static_cast<double>(gc.weighted) / (L * L));
      rows.emplace_back(L, static_cast<double>(gc.weighted));
    } catch (const std::invalid_argument& e) {
      std::printf("%-3d skipped: %s\n", L, e.what());
    }
  }
  if (rows.empty()) return kOk;
  // Least squares for weighted ~ c L^2.
  double num = 0, den = 0, lo = 1e300, hi = 0;
  for (auto [L, w] : rows) {
    double l2 = static_cast<double>(L) * L;
    num += w * l2;
    den += l2 * l2;
    lo = std::min(lo, w / l2);
    hi = std::max(hi, w / l2);
  }
  const double c = num / den;
  double resid = 0;
  for (auto [L, w] : rows) resid = std::max(resid, std::abs(w / (c * L * L) - 1.0));
  std::printf("fit: weighted ~ %.3f L^2, max residual ratio %.3f, w/L^2 band %.3f\n", c, resid, hi / lo);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum wave atom and Shannon wavelet circuits: build, simulate, verify."};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_tree = [&](CLI::App* sub) { sub->add_option("--tree", cfg.tree_file, "tree file (JSON)")->required(); };
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--transform", cfg.kind, "shannon or waveatom")
        ->check(CLI::IsMember({"shannon", "waveatom"}))
        ->capture_default_str();
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--max-sim-qubits", cfg.max_sim_qubits, "largest circuit to simulate")->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "check a tree against the admissibility rules");
  add_tree(validate);
  add_kind(validate);

  auto* build = app.add_subcommand("build", "write the transform circuit in text form");
  add_tree(build);
  add_kind(build);
  build->add_option("--out", cfg.out, "output file, - for stdout");

  auto* transform = app.add_subcommand("transform", "transform a signal into packed coefficients");
  add_tree(transform);
  add_kind(transform);
  transform->add_option("--input", cfg.input, "signal CSV: re or re,im per line")->required();
  transform->add_option("--out", cfg.out, "coefficient CSV, - for stdout");
  transform->add_option("--backend", cfg.backend, "reference or simulated")
      ->check(CLI::IsMember({"reference", "simulated"}))
      ->capture_default_str();
  add_cap(transform);

  auto* verify = app.add_subcommand("verify", "check oracles and circuits for one tree");
  add_tree(verify);
  add_kind(verify);
  verify->add_option("--tol", cfg.tol, "tolerance for every check (default 1e-10 matrix, 1e-8 circuit)")
      ->check(CLI::PositiveNumber);
  add_cap(verify);
  verify->add_option("--profile-scale", cfg.profile_scale)->group("");  // fault injection for tests

  auto* gatecount = app.add_subcommand("gatecount", "gate counts over a range of L");
  add_kind(gatecount);
  gatecount->add_option("--family", cfg.family, "uniform, dyadic or parabolic")
      ->check(CLI::IsMember({"uniform", "dyadic", "parabolic"}))
      ->capture_default_str();
  gatecount->add_option("--lmin", cfg.lmin)->capture_default_str();
  gatecount->add_option("--lmax", cfg.lmax)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*build) return cmd_build(cfg);
    if (*transform) return cmd_transform(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*gatecount) return cmd_gatecount(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kFail;
}
