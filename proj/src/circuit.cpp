#include "qwat/circuit.hpp"

#include "qwat/tree.hpp"  // ParseError

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qwat {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

const std::vector<std::pair<GateKind, std::string>>& kind_table() {
  static const std::vector<std::pair<GateKind, std::string>> t = {
      {GateKind::X, "X"},         {GateKind::Z, "Z"},        {GateKind::H, "H"},   {GateKind::S, "S"},
      {GateKind::Sdg, "Sdg"},     {GateKind::Phase, "Phase"}, {GateKind::PhaseDg, "PhaseDg"},
      {GateKind::Ry, "Ry"},       {GateKind::Swap, "Swap"},  {GateKind::R0, "R0"}, {GateKind::R1, "R1"},
      {GateKind::MinusIZ, "MinusIZ"}};
  return t;
}

int arity(GateKind k) { return k == GateKind::Swap ? 2 : 1; }

}  // namespace

Controls operator+(Controls a, const Controls& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string kind_name(GateKind k) {
  for (const auto& [kind, name] : kind_table())
    if (kind == k) return name;
  return "?";
}

bool is_classical(GateKind k) { return k == GateKind::X || k == GateKind::Swap; }

Mat2 gate_matrix(const Gate& g) {
  const cplx i1{0, 1};
  switch (g.kind) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::Z: return {1, 0, 0, -1};
    case GateKind::H: {
      double s = std::numbers::sqrt2 / 2;
      return {s, s, s, -s};
    }
    case GateKind::S: return {1, 0, 0, i1};
    case GateKind::Sdg: return {1, 0, 0, -i1};
    case GateKind::Phase: return {1, 0, 0, std::polar(1.0, 2 * pi / std::ldexp(1.0, g.k))};
    case GateKind::PhaseDg: return {1, 0, 0, std::polar(1.0, -2 * pi / std::ldexp(1.0, g.k))};
    case GateKind::Ry: {
      double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
      return {c, -s, s, c};
    }
    case GateKind::R0: return {std::polar(1.0, -pi / 4), 0, 0, -std::polar(1.0, pi / 4)};
    case GateKind::R1: return {std::polar(1.0, -pi / 4) * -i1, 0, 0, -std::polar(1.0, pi / 4) * i1};
    case GateKind::MinusIZ: return {-i1, 0, 0, i1};
    case GateKind::Swap: break;
  }
  throw std::logic_error("gate_matrix: swap has no 2x2 matrix");
}

std::vector<int> Register::qubits() const {
  std::vector<int> q(width);
  for (int i = 0; i < width; ++i) q[i] = start + i;
  return q;
}

Register Circuit::add_register(const std::string& name, int width) {
  if (width < 0) throw std::invalid_argument("negative register width");
  if (has_register(name)) throw std::invalid_argument("duplicate register " + name);
  Register r{name, num_qubits_, width};
  num_qubits_ += width;
  registers_.push_back(r);
  return r;
}

const Register& Circuit::reg(const std::string& name) const {
  for (const auto& r : registers_)
    if (r.name == name) return r;
  throw std::out_of_range("no register named " + name);
}

bool Circuit::has_register(const std::string& name) const {
  return std::any_of(registers_.begin(), registers_.end(), [&](const Register& r) { return r.name == name; });
}

void Circuit::add(Gate g) {
  if (static_cast<int>(g.targets.size()) != arity(g.kind))
    throw std::invalid_argument("gate " + kind_name(g.kind) + ": wrong number of targets");
  std::vector<int> used = g.targets;
  for (const auto& c : g.controls) used.push_back(c.qubit);
  for (int q : used)
    if (q < 0 || q >= num_qubits_)
      throw std::out_of_range("gate " + kind_name(g.kind) + ": qubit " + std::to_string(q) + " out of range");
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end())
    throw std::invalid_argument("gate " + kind_name(g.kind) + ": repeated qubit among targets and controls");
  gates_.push_back(std::move(g));
}

void Circuit::extend(const Circuit& sub, const Controls& extra) {
  for (Gate g : sub.gates_) {
    g.controls = g.controls + extra;
    add(std::move(g));
  }
}

void Circuit::extend_mapped(const Circuit& sub, const std::vector<int>& map, const Controls& extra) {
  if (static_cast<int>(map.size()) < sub.num_qubits()) throw std::invalid_argument("extend_mapped: map too short");
  for (Gate g : sub.gates_) {
    for (int& t : g.targets) t = map[t];
    for (auto& c : g.controls) c.qubit = map[c.qubit];
    g.controls = g.controls + extra;
    add(std::move(g));
  }
}

Circuit Circuit::inverse() const {
  Circuit out(num_qubits_);
  out.registers_ = registers_;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::S: g.kind = GateKind::Sdg; break;
      case GateKind::Sdg: g.kind = GateKind::S; break;
      case GateKind::Phase: g.kind = GateKind::PhaseDg; break;
      case GateKind::PhaseDg: g.kind = GateKind::Phase; break;
      case GateKind::Ry: g.theta = -g.theta; break;
      case GateKind::R0:
      case GateKind::R1:
      case GateKind::MinusIZ: throw std::logic_error("inverse: " + kind_name(g.kind) + " has no inverse kind");
      default: break;
    }
    out.gates_.push_back(std::move(g));
  }
  return out;
}

GateCountReport gate_count(const Circuit& c) {
  GateCountReport r;
  for (const auto& g : c.gates()) {
    ++r.raw;
    std::size_t nc = g.controls.size();
    r.weighted += nc >= 2 ? nc : 1;
    if (nc >= 2) ++r.multi_controlled;
  }
  return r;
}

std::string serialize(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.num_qubits() << "\n";
  for (const auto& r : c.registers()) os << "reg " << r.name << " " << r.start << " " << r.width << "\n";
  char buf[64];
  for (const auto& g : c.gates()) {
    os << kind_name(g.kind);
    if (g.kind == GateKind::Phase || g.kind == GateKind::PhaseDg) {
      os << "(" << g.k << ")";
    } else if (g.kind == GateKind::Ry) {
      std::snprintf(buf, sizeof buf, "%.17g", g.theta);
      os << "(" << buf << ")";
    }
    os << " t=";
    for (std::size_t i = 0; i < g.targets.size(); ++i) os << (i ? "," : "") << g.targets[i];
    if (!g.controls.empty()) {
      os << " c=";
      for (std::size_t i = 0; i < g.controls.size(); ++i)
        os << (i ? "," : "") << (g.controls[i].on_one ? '+' : '-') << g.controls[i].qubit;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

int to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
}

Gate parse_gate(const std::string& text, int line) {
  auto fail = [&](const std::string& why) { return ParseError("line " + std::to_string(line) + ": " + why); };
  std::istringstream is(text);
  std::string head, tok;
  is >> head;
  Gate g;
  std::string name = head, param;
  auto lp = head.find('(');
  if (lp != std::string::npos) {
    if (head.back() != ')') throw fail("unterminated parameter in '" + head + "'");
    name = head.substr(0, lp);
    param = head.substr(lp + 1, head.size() - lp - 2);
  }
  bool found = false;
  for (const auto& [kind, kname] : kind_table())
    if (kname == name) {
      g.kind = kind;
      found = true;
    }
  if (!found) throw fail("unknown gate '" + name + "'");
  bool wants_param = g.kind == GateKind::Phase || g.kind == GateKind::PhaseDg || g.kind == GateKind::Ry;
  if (wants_param != !param.empty()) throw fail("parameter mismatch for gate '" + name + "'");
  if (g.kind == GateKind::Ry) {
    try {
      std::size_t used = 0;
      g.theta = std::stod(param, &used);
      if (used != param.size()) throw std::invalid_argument(param);
    } catch (const std::exception&) {
      throw fail("bad angle '" + param + "'");
    }
  } else if (wants_param) {
    g.k = to_int(param, line);
  }
  while (is >> tok) {
    if (tok.rfind("t=", 0) == 0) {
      for (const auto& t : split(tok.substr(2), ',')) g.targets.push_back(to_int(t, line));
    } else if (tok.rfind("c=", 0) == 0) {
      for (const auto& t : split(tok.substr(2), ',')) {
        if (t.size() < 2 || (t[0] != '+' && t[0] != '-')) throw fail("bad control '" + t + "'");
        g.controls.push_back({to_int(t.substr(1), line), t[0] == '+'});
      }
    } else {
      throw fail("unexpected token '" + tok + "'");
    }
  }
  return g;
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  int declared = -1;
  bool sealed = false;  // registers are fixed once the first gate appears
  Circuit c;
  auto seal = [&] {
    if (sealed) return;
    if (c.num_qubits() > declared) throw ParseError("line " + std::to_string(line) + ": registers exceed qubit count");
    c.grow_to(declared);
    sealed = true;
  };
  while (std::getline(is, raw)) {
    ++line;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(raw);
    std::string word;
    ls >> word;
    if (declared < 0) {
      if (word != "qubits" || !(ls >> declared) || declared < 0)
        throw ParseError("line " + std::to_string(line) + ": expected 'qubits <n>'");
      continue;
    }
    if (word == "reg") {
      std::string name;
      int start = -1, width = -1;
      if (sealed || !(ls >> name >> start >> width) || width < 0)
        throw ParseError("line " + std::to_string(line) + ": expected 'reg <name> <start> <width>' before gates");
      if (start != c.num_qubits())
        throw ParseError("line " + std::to_string(line) + ": registers must be contiguous from qubit 0");
      c.add_register(name, width);
      continue;
    }
    seal();
    try {
      c.add(parse_gate(raw, line));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  if (declared < 0) throw ParseError("line 1: missing 'qubits <n>' header");
  seal();
  return c;
}

}  // namespace qwat
