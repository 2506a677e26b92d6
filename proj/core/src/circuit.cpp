#include "latsurg/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "latsurg/errors.hpp"

namespace latsurg {

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::CX: return "cx";
    case GateKind::Measure: return "measure";
  }
  return "?";
}

GateCircuit& GateCircuit::add(GateKind kind, std::size_t q0, std::size_t q1) {
  if (q0 >= n_ || (kind == GateKind::CX && (q1 >= n_ || q1 == q0))) {
    throw ParseError("circuit", gate_name(kind) + " on invalid qubit(s) " + std::to_string(q0) +
                                    (kind == GateKind::CX ? "," + std::to_string(q1) : ""));
  }
  gates_.push_back({kind, q0, kind == GateKind::CX ? q1 : 0});
  return *this;
}

GateCircuit& GateCircuit::ccx(std::size_t a, std::size_t b, std::size_t c) {
  h(c).cx(b, c).tdg(c).cx(a, c).t(c).cx(b, c).tdg(c).cx(a, c);
  t(b).t(c).h(c).cx(a, b).t(a).tdg(b).cx(a, b);
  return *this;
}

bool GateCircuit::has_measurements() const {
  return std::any_of(gates_.begin(), gates_.end(),
                     [](const Gate& g) { return g.kind == GateKind::Measure; });
}

std::size_t GateCircuit::t_count() const {
  return std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) {
    return g.kind == GateKind::T || g.kind == GateKind::Tdg;
  });
}

void GateCircuit::validate() const {
  bool measuring = false;
  for (const Gate& g : gates_) {
    if (g.kind == GateKind::Measure) {
      measuring = true;
    } else if (measuring) {
      throw ParseError("circuit", "gate '" + gate_name(g.kind) +
                                      "' after a measurement; only final-layer measurements are supported");
    }
  }
}

PbcProgram::PbcProgram(std::size_t num_qubits, std::vector<PauliOperator> ops) : n_(num_qubits) {
  for (auto& op : ops) push_back(std::move(op));
}

void PbcProgram::push_back(PauliOperator op) {
  if (op.num_qubits() != n_) {
    throw DimensionError("operator " + op.str() + " does not act on " + std::to_string(n_) + " qubits");
  }
  ops_.push_back(std::move(op));
}

std::size_t PbcProgram::rotation_count() const {
  return std::count_if(ops_.begin(), ops_.end(), [](const PauliOperator& o) { return o.is_rotation(); });
}

std::size_t PbcProgram::t_rotation_count() const {
  return std::count_if(ops_.begin(), ops_.end(), [](const PauliOperator& o) { return o.is_t_like(); });
}

std::size_t PbcProgram::measurement_count() const {
  return std::count_if(ops_.begin(), ops_.end(), [](const PauliOperator& o) { return o.is_measurement(); });
}

PbcProgram PbcProgram::rotations_only() const {
  PbcProgram out(n_);
  for (const auto& op : ops_)
    if (op.is_rotation()) out.push_back(op);
  return out;
}

namespace {

std::string strip(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

PbcProgram parse_pbc(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PauliOperator> ops;
  std::optional<std::size_t> declared;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.rfind("qubits", 0) == 0) {
      try {
        declared = std::stoul(line.substr(6));
      } catch (const std::exception&) {
        throw ParseError("pbc", "line " + std::to_string(lineno) + ": malformed qubits directive");
      }
      continue;
    }
    try {
      ops.push_back(PauliOperator::parse(line));
    } catch (const ParseError& e) {
      throw ParseError("pbc", "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  std::size_t n = declared.value_or(ops.empty() ? 0 : ops.front().num_qubits());
  for (const auto& op : ops) {
    if (op.num_qubits() != n)
      throw ParseError("pbc", "inconsistent word length in '" + op.str() + "'");
  }
  return PbcProgram(n, std::move(ops));
}

std::string write_pbc(const PbcProgram& program) {
  std::ostringstream out;
  out << "qubits " << program.num_qubits() << "\n";
  for (const auto& op : program.ops()) out << op.str() << "\n";
  return out.str();
}

namespace {

struct QasmRegister {
  std::size_t offset;
  std::size_t size;
};

// Parses `name[idx]` or `name` into a list of flat qubit indices.
std::vector<std::size_t> resolve_operand(const std::string& operand,
                                         const std::map<std::string, QasmRegister>& regs) {
  const std::string op = strip(operand);
  const auto lb = op.find('[');
  const std::string name = strip(op.substr(0, lb));
  auto it = regs.find(name);
  if (it == regs.end()) throw ParseError("qasm", "unknown register '" + name + "'");
  if (lb == std::string::npos) {
    std::vector<std::size_t> all(it->second.size);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = it->second.offset + i;
    return all;
  }
  const auto rb = op.find(']', lb);
  if (rb == std::string::npos) throw ParseError("qasm", "missing ']' in '" + op + "'");
  std::size_t idx = 0;
  try {
    idx = std::stoul(op.substr(lb + 1, rb - lb - 1));
  } catch (const std::exception&) {
    throw ParseError("qasm", "bad index in '" + op + "'");
  }
  if (idx >= it->second.size) throw ParseError("qasm", "index out of range in '" + op + "'");
  return {it->second.offset + idx};
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!strip(cur).empty()) out.push_back(strip(cur));
  return out;
}

}  // namespace

GateCircuit parse_qasm(std::string_view text) {
  // Drop // comments, then split on ';'.
  std::string clean;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (auto c = line.find("//"); c != std::string::npos) line.resize(c);
      clean += line;
      clean += '\n';
    }
  }
  std::map<std::string, QasmRegister> qregs;
  std::size_t total = 0;
  struct Pending {
    std::string name;
    std::vector<std::vector<std::size_t>> args;
  };
  std::vector<Pending> pending;

  std::size_t start = 0;
  while (start < clean.size()) {
    auto semi = clean.find(';', start);
    if (semi == std::string::npos) {
      if (!strip(clean.substr(start)).empty())
        throw ParseError("qasm", "missing ';' after '" + strip(clean.substr(start)) + "'");
      break;
    }
    std::string stmt = strip(clean.substr(start, semi - start));
    start = semi + 1;
    if (stmt.empty()) continue;
    if (stmt.rfind("OPENQASM", 0) == 0 || stmt.rfind("include", 0) == 0) continue;
    if (stmt.rfind("if", 0) == 0 && (stmt.size() == 2 || stmt[2] == '(' || std::isspace(static_cast<unsigned char>(stmt[2]))))
      throw ParseError("qasm", "classically controlled gates are not supported: '" + stmt + "'");
    const auto sp = stmt.find_first_of(" \t\n(");
    std::string head = stmt.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : strip(stmt.substr(sp));
    if (head == "qreg" || head == "creg") {
      const auto lb = rest.find('['), rb = rest.find(']');
      if (lb == std::string::npos || rb == std::string::npos)
        throw ParseError("qasm", "malformed register declaration '" + stmt + "'");
      const std::string name = strip(rest.substr(0, lb));
      const std::size_t size = std::stoul(rest.substr(lb + 1, rb - lb - 1));
      if (head == "qreg") {
        qregs[name] = {total, size};
        total += size;
      }
      continue;
    }
    if (head == "barrier") continue;
    if (head == "measure") {
      const auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw ParseError("qasm", "measure without target: '" + stmt + "'");
      pending.push_back({"measure", {resolve_operand(rest.substr(0, arrow), qregs)}});
      continue;
    }
    if (sp != std::string::npos && stmt[sp] == '(')
      throw UnsupportedGateError("unsupported gate '" + head + "' (parameterized gates are not in the Clifford+T set)");
    static const std::map<std::string, GateKind> kSingle = {
        {"h", GateKind::H},   {"s", GateKind::S}, {"sdg", GateKind::Sdg}, {"t", GateKind::T},
        {"tdg", GateKind::Tdg}, {"x", GateKind::X}, {"y", GateKind::Y},     {"z", GateKind::Z}};
    if (!kSingle.count(head) && head != "cx" && head != "CX")
      throw UnsupportedGateError("unsupported gate '" + head + "'");
    Pending p{head == "CX" ? "cx" : head, {}};
    for (const auto& operand : split_commas(rest)) p.args.push_back(resolve_operand(operand, qregs));
    pending.push_back(std::move(p));
  }

  GateCircuit circuit(total);
  static const std::map<std::string, GateKind> kKinds = {
      {"h", GateKind::H},     {"s", GateKind::S}, {"sdg", GateKind::Sdg}, {"t", GateKind::T},
      {"tdg", GateKind::Tdg}, {"x", GateKind::X}, {"y", GateKind::Y},     {"z", GateKind::Z},
      {"measure", GateKind::Measure}};
  for (const auto& p : pending) {
    if (p.name == "cx") {
      if (p.args.size() != 2) throw ParseError("qasm", "cx expects two operands");
      const auto& a = p.args[0];
      const auto& b = p.args[1];
      if (a.size() == b.size()) {
        for (std::size_t i = 0; i < a.size(); ++i) circuit.cx(a[i], b[i]);
      } else if (a.size() == 1) {
        for (auto t : b) circuit.cx(a[0], t);
      } else if (b.size() == 1) {
        for (auto c : a) circuit.cx(c, b[0]);
      } else {
        throw ParseError("qasm", "cx register size mismatch");
      }
      continue;
    }
    if (p.args.size() != 1) throw ParseError("qasm", p.name + " expects one operand");
    for (auto q : p.args[0]) circuit.add(kKinds.at(p.name), q);
  }
  circuit.validate();
  return circuit;
}

std::string write_qasm(const GateCircuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.num_qubits() << "];\n";
  if (circuit.has_measurements()) out << "creg c[" << circuit.num_qubits() << "];\n";
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::Measure) {
      out << "measure q[" << g.q0 << "] -> c[" << g.q0 << "];\n";
    } else if (g.kind == GateKind::CX) {
      out << "cx q[" << g.q0 << "],q[" << g.q1 << "];\n";
    } else {
      out << gate_name(g.kind) << " q[" << g.q0 << "];\n";
    }
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("io", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("io", "cannot write '" + path + "'");
  out << contents;
}

}  // namespace latsurg
