#include "latsurg/ysynth.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "latsurg/errors.hpp"

namespace latsurg {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

PauliWord z_word(std::size_t n, const QubitGroup& g) {
  PauliWord w(n);
  for (std::size_t q : g) w.set(q, Letter::Z);
  return w;
}

bool is_subset(const QubitGroup& a, const QubitGroup& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

QubitGroup difference(const QubitGroup& a, const QubitGroup& b) {
  QubitGroup out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

QubitGroup intersection(const QubitGroup& a, const QubitGroup& b) {
  QubitGroup out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const std::vector<QubitGroup>& groups, const QubitGroup& g) {
  return std::find(groups.begin(), groups.end(), g) != groups.end();
}

void add_unique(std::vector<QubitGroup>& groups, QubitGroup g) {
  if (!g.empty() && !contains(groups, g)) groups.push_back(std::move(g));
}

// Rotations after the first measurement that no later operator touches
// cannot change any outcome statistics.
std::vector<PauliOperator> drop_dead_tail(std::vector<PauliOperator> ops) {
  auto first_meas = std::find_if(ops.begin(), ops.end(), [](const PauliOperator& o) { return o.is_measurement(); });
  if (first_meas == ops.end() || ops.empty()) return ops;
  const auto start = static_cast<std::size_t>(first_meas - ops.begin());
  PauliWord touched(ops.front().num_qubits());
  std::vector<bool> keep(ops.size(), true);
  for (std::size_t i = ops.size(); i-- > 0;) {
    const auto& op = ops[i];
    if (i > start && op.is_rotation() && !op.word().overlaps(touched)) {
      keep[i] = false;
      continue;
    }
    for (std::size_t q : op.word().support()) touched.set(q, Letter::Z);
  }
  std::vector<PauliOperator> out;
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (keep[i]) out.push_back(std::move(ops[i]));
  return out;
}

}  // namespace

YMode parse_y_mode(const std::string& name) {
  if (name == "bipartite") return YMode::bipartite;
  if (name == "naive") return YMode::naive;
  if (name == "off") return YMode::off;
  throw ConfigError("unknown y-synthesis mode '" + name + "' (expected bipartite, naive or off)");
}

std::string y_mode_name(YMode mode) {
  switch (mode) {
    case YMode::bipartite: return "bipartite";
    case YMode::naive: return "naive";
    case YMode::off: return "off";
  }
  return "?";
}

std::vector<PauliOperator> YDecomposition::sequence() const {
  std::vector<PauliOperator> out = left;
  out.push_back(core);
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

YDecomposition decompose_y(const PauliOperator& op, const QubitGroup& b1, const QubitGroup& b2) {
  const std::size_t n = op.num_qubits();
  YDecomposition d;
  d.b1 = b1;
  d.b2 = b2;
  d.core = op;
  for (const QubitGroup* g : {&b1, &b2}) {
    if (g->empty()) continue;
    if (g->size() % 2 == 0) throw ContractViolation("y-synthesis", "decomposition group must have odd size");
    for (std::size_t q : *g)
      if (op.word().get(q) != Letter::Y)
        throw ContractViolation("y-synthesis", "qubit " + std::to_string(q) + " is not a Y letter of " + op.str());
    const PauliWord z = z_word(n, *g);
    const PauliOperator right = PauliOperator::rotation(z, 2);
    d.core = conjugate_past(right, d.core);
    d.left.push_back(PauliOperator::rotation(z, -2));
    d.right.push_back(right);
  }
  return d;
}

std::size_t absorbed_count(const QubitGroup& b1, const QubitGroup& b2, const BipartitionContext& ctx) {
  std::size_t c = 0;
  for (const QubitGroup* g : {&b1, &b2}) {
    if (g->empty()) continue;
    c += contains(ctx.before, *g) ? 1 : 0;
    c += contains(ctx.after, *g) ? 1 : 0;
  }
  return c;
}

std::pair<QubitGroup, QubitGroup> choose_bipartition(const QubitGroup& y_indices, const BipartitionContext& ctx) {
  if (y_indices.size() < 2 || y_indices.size() % 2 != 0)
    throw ContractViolation("y-synthesis", "bipartition needs an even Y index set of size >= 2");
  QubitGroup ys = y_indices;
  std::sort(ys.begin(), ys.end());
  std::vector<QubitGroup> candidates{{ys.front()}};
  for (const auto* list : {&ctx.before, &ctx.after})
    for (QubitGroup g : *list) {
      std::sort(g.begin(), g.end());
      if (g.size() % 2 == 1 && g.size() < ys.size() && is_subset(g, ys)) add_unique(candidates, g);
    }
  std::pair<QubitGroup, QubitGroup> best;
  std::size_t best_score = 0;
  bool have = false;
  for (const QubitGroup& g : candidates) {
    QubitGroup a = g;
    QubitGroup b = difference(ys, g);
    if (std::make_tuple(b.size(), b) < std::make_tuple(a.size(), a)) std::swap(a, b);
    const std::size_t score = absorbed_count(a, b, ctx);
    const bool better = !have || score > best_score ||
                        (score == best_score && std::make_tuple(a.size(), a) < std::make_tuple(best.first.size(), best.first));
    if (better) {
      best = {a, b};
      best_score = score;
      have = true;
    }
  }
  return best;
}

QubitGroup restricted_y_indices(const PauliOperator& op, const YAccess& access) {
  QubitGroup out;
  for (std::size_t q : op.word().support())
    if (op.word().get(q) == Letter::Y && access.restricted(q)) out.push_back(q);
  return out;
}

PbcProgram pauli_synthesis(const PbcProgram& program) {
  const std::size_t n = program.num_qubits();
  const bool has_measurement = program.measurement_count() > 0;
  std::vector<PauliOperator> cur = program.ops();
  while (true) {
    std::vector<PauliOperator> out;
    PauliWord frame(n);
    for (PauliOperator op : cur) {
      if (!commutes(frame, op.word())) op.flip_sign();
      if (op.is_identity_rotation()) continue;
      if (op.is_pauli_rotation()) {
        frame ^= op.word();
        continue;
      }
      if (op.is_rotation()) {
        std::size_t j = kNone;
        for (std::size_t k = out.size(); k-- > 0;) {
          if (out[k].word().overlaps(op.word())) {
            j = k;
            break;
          }
        }
        if (j != kNone && out[j].is_rotation() && out[j].word() == op.word()) {
          const int sum = canonical_eighths(out[j].eighths() + op.eighths());
          if (sum == 0) {
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
          } else if (sum == 4) {
            // Everything after j commutes with the word, so the Pauli can
            // join the frame applied to operators still to come.
            frame ^= op.word();
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
          } else if (sum == 3 || sum == -3) {
            frame ^= op.word();
            out[j].set_eighths(sum == 3 ? -1 : 1);
          } else {
            out[j].set_eighths(sum);
          }
          continue;
        }
      }
      out.push_back(std::move(op));
    }
    if (!has_measurement && !frame.is_identity()) {
      // A Y-carrying frame is emitted as its X and Z factors, equal up to
      // global phase, so no Y letter survives.
      PauliWord xs(n), zs(n);
      bool has_y = false;
      for (std::size_t q : frame.support()) {
        const Letter l = frame.get(q);
        has_y = has_y || l == Letter::Y;
        if (l == Letter::X || l == Letter::Y) xs.set(q, Letter::X);
        if (l == Letter::Z || l == Letter::Y) zs.set(q, Letter::Z);
      }
      if (!has_y) {
        out.push_back(PauliOperator::rotation(frame, 4));
      } else {
        out.push_back(PauliOperator::rotation(xs, 4));
        out.push_back(PauliOperator::rotation(zs, 4));
      }
    }
    if (out == cur) break;
    cur = std::move(out);
  }
  return PbcProgram(n, std::move(cur));
}

PbcProgram y_synthesize(const PbcProgram& program, const PDag& dag, const YAccess& access) {
  const std::size_t n = program.num_qubits();
  std::vector<PauliOperator> out;
  std::vector<std::size_t> last_out(n, kNone);
  auto emit = [&](PauliOperator op) {
    for (std::size_t q : op.word().support()) last_out[q] = out.size();
    out.push_back(std::move(op));
  };

  for (std::size_t i = 0; i < program.size(); ++i) {
    const PauliOperator& op = program[i];
    const QubitGroup ys = restricted_y_indices(op, access);
    if (ys.empty()) {
      emit(op);
      continue;
    }
    YDecomposition d;
    if (ys.size() % 2 == 1) {
      d = decompose_y(op, ys, {});
    } else {
      BipartitionContext ctx;
      // Left side: an already-emitted Z rotation that is the last operator on
      // every qubit of its support.
      for (std::size_t q : ys) {
        const std::size_t j = last_out[q];
        if (j == kNone || !out[j].is_rotation() || !out[j].word().is_z_type()) continue;
        QubitGroup g = out[j].word().support();
        if (g.size() % 2 == 0 || !is_subset(g, ys)) continue;
        bool last_everywhere = true;
        for (std::size_t r : g) last_everywhere &= last_out[r] == j;
        if (last_everywhere) add_unique(ctx.before, std::move(g));
      }
      // Right side: the next operator on each Y qubit, either a Z rotation or
      // another restricted-Y operator that could open with the same group.
      std::vector<std::size_t> next(n, kNone);
      if (i < dag.total_nodes()) {
        for (std::size_t s : dag.node(i).successors)
          for (std::size_t q : program[s].word().support())
            if (op.word().get(q) != Letter::I) next[q] = std::min(next[q], s);
      }
      for (std::size_t q : ys) {
        const std::size_t s = next[q];
        if (s == kNone) continue;
        const PauliOperator& succ = program[s];
        QubitGroup g;
        if (succ.is_rotation() && succ.word().is_z_type()) {
          g = succ.word().support();
          if (!is_subset(g, ys)) continue;
        } else {
          const QubitGroup sy = restricted_y_indices(succ, access);
          g = intersection(sy, ys);
          if (sy.size() % 2 == 1 && g != sy) continue;
        }
        if (g.empty() || g.size() % 2 == 0) continue;
        bool next_everywhere = true;
        for (std::size_t r : g) next_everywhere &= next[r] == s;
        if (next_everywhere) add_unique(ctx.after, std::move(g));
      }
      auto [b1, b2] = choose_bipartition(ys, ctx);
      d = decompose_y(op, b1, b2);
    }
    d.source = i;
    for (auto& piece : d.sequence()) emit(std::move(piece));
  }

  PbcProgram result = pauli_synthesis(PbcProgram(n, std::move(out)));
  while (true) {
    PbcProgram trimmed = pauli_synthesis(PbcProgram(n, drop_dead_tail(result.ops())));
    if (trimmed == result) break;
    result = std::move(trimmed);
  }
  return result;
}

PbcProgram y_synthesize(const PbcProgram& program, const YAccess& access) {
  return y_synthesize(program, build_pdag(program), access);
}

PbcProgram naive_y_decompose(const PbcProgram& program, const YAccess& access) {
  PbcProgram out(program.num_qubits());
  for (const PauliOperator& op : program.ops()) {
    const QubitGroup ys = restricted_y_indices(op, access);
    if (ys.empty()) {
      out.push_back(op);
      continue;
    }
    const YDecomposition d = ys.size() % 2 == 1
                                 ? decompose_y(op, ys, {})
                                 : decompose_y(op, {ys.front()}, QubitGroup(ys.begin() + 1, ys.end()));
    for (const auto& piece : d.sequence()) out.push_back(piece);
  }
  return out;
}

PbcProgram apply_y_mode(const PbcProgram& program, const YAccess& access, YMode mode) {
  switch (mode) {
    case YMode::bipartite: return y_synthesize(program, access);
    case YMode::naive: return naive_y_decompose(program, access);
    case YMode::off: return program;
  }
  return program;
}

}  // namespace latsurg
