#include "latsurg/scheduler.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <tuple>

#include "latsurg/errors.hpp"
#include "latsurg/pdag.hpp"

namespace latsurg {

CorrectionPolicy parse_correction_policy(const std::string& name) {
  if (name == "always") return CorrectionPolicy::always;
  if (name == "never") return CorrectionPolicy::never;
  if (name == "seeded-random") return CorrectionPolicy::seeded_random;
  throw ConfigError("unknown correction policy '" + name + "' (expected always, never or seeded-random)");
}

std::string correction_policy_name(CorrectionPolicy p) {
  switch (p) {
    case CorrectionPolicy::always: return "always";
    case CorrectionPolicy::never: return "never";
    case CorrectionPolicy::seeded_random: return "seeded-random";
  }
  return "?";
}

CorrectedProgram expand_corrections(const PbcProgram& program, CorrectionPolicy policy, std::uint64_t seed) {
  CorrectedProgram out{PbcProgram(program.num_qubits()), {}};
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (const PauliOperator& op : program.ops()) {
    out.program.push_back(op);
    out.is_correction.push_back(false);
    if (!op.is_t_like()) continue;
    const bool add = policy == CorrectionPolicy::always || (policy == CorrectionPolicy::seeded_random && coin(rng));
    if (!add) continue;
    out.program.push_back(PauliOperator::rotation(op.word(), 2 * op.eighths()));
    out.is_correction.push_back(true);
  }
  return out;
}

BusRequest request_for(const PauliOperator& op, const QubitMap& map) {
  BusRequest req;
  for (std::size_t q : op.word().support()) {
    const int p = map.patch_of(q);
    const Letter l = op.word().get(q);
    if (l == Letter::X || l == Letter::Y) req.terminals.push_back({p, EdgeType::X});
    if (l == Letter::Z || l == Letter::Y) req.terminals.push_back({p, EdgeType::Z});
  }
  req.magic = op.is_t_like();
  req.ancilla = op.is_quarter();
  return req;
}

int satisfied_units(const BoardAnalysis& an, const BusRequest& req) {
  int units = 0;
  for (const auto& t : req.terminals) {
    auto it = an.exposure.find(t.patch);
    if (it == an.exposure.end()) continue;
    units += (t.edge == EdgeType::X ? it->second.x : it->second.z) ? 1 : 0;
  }
  return units;
}

int reward(const Board& board, const PatchOp& op, const BusRequest& pending) {
  const Board next = apply_op(board, op);
  const BoardAnalysis an = analyze(next);
  return an.connected ? satisfied_units(an, pending) : 0;
}

namespace {

// Per-clock tile reservations.
class Timeline {
 public:
  explicit Timeline(int tiles) : tiles_(tiles) {}

  TileMask at(int t) const {
    if (t < static_cast<int>(busy_.size())) return busy_[static_cast<std::size_t>(t)];
    return TileMask(static_cast<std::size_t>(tiles_), 0);
  }
  bool free(const std::vector<int>& idx, int start, int duration) const {
    for (int t = start; t < start + duration; ++t) {
      if (t >= static_cast<int>(busy_.size())) return true;
      for (int i : idx)
        if (busy_[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)]) return false;
    }
    return true;
  }
  int earliest(const std::vector<int>& idx, int from, int duration) const {
    int s = from;
    while (!free(idx, s, duration)) ++s;
    return s;
  }
  void reserve(const std::vector<int>& idx, int start, int duration) {
    while (static_cast<int>(busy_.size()) < start + duration) busy_.emplace_back(static_cast<std::size_t>(tiles_), 0);
    for (int t = start; t < start + duration; ++t)
      for (int i : idx) busy_[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] = 1;
  }

 private:
  int tiles_;
  std::vector<TileMask> busy_;
};

std::vector<int> indices(const Board& b, const std::vector<Coord>& tiles) {
  std::vector<int> out;
  for (Coord c : tiles) out.push_back(b.index(c));
  return out;
}

// Non-bus tiles a measurement holds: its patches and any port.
std::vector<Coord> fixed_tiles(const Board& board, const BusRequest& req) {
  std::vector<Coord> out;
  for (const auto& t : req.terminals)
    for (Coord c : board.patch(t.patch).tiles)
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  if (req.magic && board.magic()) out.push_back(*board.magic());
  if (req.ancilla && board.ancilla()) out.push_back(*board.ancilla());
  return out;
}

Instruction make_measure(const Board& board, int op, const BusRequest& req, std::vector<Coord> bus, int start) {
  Instruction in;
  in.kind = InstrKind::measure;
  in.start = start;
  in.duration = op_cost(PatchOpKind::measure);
  in.op = op;
  in.request = req;
  in.tiles = fixed_tiles(board, req);
  in.tiles.insert(in.tiles.end(), bus.begin(), bus.end());
  std::sort(in.tiles.begin(), in.tiles.end());
  in.bus = std::move(bus);
  return in;
}

Instruction make_patch_instr(const Board& board, const PatchOp& op, int start) {
  Instruction in;
  const Patch& p = board.patch(op.patch);
  in.kind = op.kind == PatchOpKind::move ? InstrKind::move : InstrKind::rotate;
  in.start = start;
  in.duration = op.cost();
  in.patch = op.patch;
  in.from = p.anchor();
  in.to = op.tiles.empty() ? *rotation_helper(board, p) : op.tiles.front();
  in.tiles = {in.from, in.to};
  std::sort(in.tiles.begin(), in.tiles.end());
  return in;
}

void check_inputs(const PbcProgram& program, const Board& board, const QubitMap& map) {
  if (map.num_qubits() != program.num_qubits())
    throw ContractViolation("scheduler", "mapping covers " + std::to_string(map.num_qubits()) + " qubits, program has " +
                                             std::to_string(program.num_qubits()));
  check_map(map, board);
  if (!check_connectivity(board)) throw DeadlockError("board is not connected: C(B) = 0");
}

struct Candidate {
  PatchOp op;
  Board next;
  int reward = 0;
};

// All single moves (up, right, down, left) and rotations of every patch.
std::vector<PatchOp> patch_op_candidates(const Board& board) {
  std::vector<PatchOp> ops;
  for (const auto& [id, p] : board.patches()) {
    if (p.tiles.size() != 1) continue;
    for (Coord n : neighbors(board, p.anchor()))
      if (board.is_routing(n)) ops.push_back(PatchOp::move(id, n));
    if (auto h = rotation_helper(board, p)) ops.push_back(PatchOp::rotate(id, *h));
  }
  // Neighbour order is already up/right/down/left; sort by patch, moves before
  // the rotation, preserving that order.
  std::stable_sort(ops.begin(), ops.end(), [](const PatchOp& a, const PatchOp& b) { return a.patch < b.patch; });
  return ops;
}

std::optional<Candidate> best_candidate(const Board& board, const BusRequest& req) {
  std::optional<Candidate> best;
  for (const PatchOp& op : patch_op_candidates(board)) {
    Board next = apply_op(board, op);
    const BoardAnalysis an = analyze(next);
    const int r = an.connected ? satisfied_units(an, req) : 0;
    if (!best || r > best->reward || (r == best->reward && op.cost() < best->op.cost()))
      best = Candidate{op, std::move(next), r};
  }
  return best;
}


// Shortest sequence of connectivity-preserving patch operations after which
// more terminals of `req` are satisfied. Bounded breadth-first search.
std::optional<std::vector<PatchOp>> improving_sequence(const Board& board, const BusRequest& req, int current) {
  constexpr std::size_t kMaxStates = 20000;
  struct Node {
    Board board;
    int parent;
    PatchOp op;
  };
  std::vector<Node> nodes{{board, -1, {}}};
  std::map<std::string, int> seen{{board.key(), 0}};
  for (std::size_t head = 0; head < nodes.size() && nodes.size() < kMaxStates; ++head) {
    for (const PatchOp& op : patch_op_candidates(nodes[head].board)) {
      Board next = apply_op(nodes[head].board, op);
      if (!seen.emplace(next.key(), static_cast<int>(nodes.size())).second) continue;
      const BoardAnalysis an = analyze(next);
      if (!an.connected) continue;
      nodes.push_back({std::move(next), static_cast<int>(head), op});
      if (satisfied_units(an, req) > current) {
        std::vector<PatchOp> seq;
        for (int i = static_cast<int>(nodes.size()) - 1; nodes[i].parent >= 0; i = nodes[i].parent) seq.push_back(nodes[i].op);
        std::reverse(seq.begin(), seq.end());
        return seq;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Schedule loose_schedule(const PbcProgram& program, const Board& board0, const QubitMap& map,
                        const ScheduleOptions& options) {
  check_inputs(program, board0, map);
  CorrectedProgram cp = expand_corrections(program, options.policy, options.seed);
  PDag dag(cp.program);
  std::vector<BusRequest> requests;
  for (const auto& op : cp.program.ops()) requests.push_back(request_for(op, map));

  Schedule s;
  s.scheduler = "loose";
  s.correction_policy = correction_policy_name(options.policy);
  s.seed = options.seed;
  s.initial = board0;
  s.mapping = map;
  s.program = cp.program;
  s.is_correction = cp.is_correction;

  // Longest dependency chain from each node to a sink.
  std::vector<int> height(cp.program.size(), 1);
  for (std::size_t i = cp.program.size(); i-- > 0;)
    for (std::size_t succ : dag.node(i).successors) height[i] = std::max(height[i], height[succ] + 1);

  Board board = board0;
  Timeline timeline(board.tile_count());
  std::optional<std::size_t> pj;
  int t = 0;

  while (!dag.empty()) {
    std::vector<std::size_t> order = dag.frontier();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return height[a] > height[b]; });
    if (pj && dag.in_frontier(*pj)) {
      order.erase(std::find(order.begin(), order.end(), *pj));
      order.insert(order.begin(), *pj);
    }
    TileMask mask = timeline.at(t);
    for (std::size_t id : order) {
      const BusRequest& req = requests[id];
      const auto held = fixed_tiles(board, req);
      bool clash = false;
      for (Coord c : held) clash |= mask[static_cast<std::size_t>(board.index(c))] != 0;
      if (clash) continue;
      auto bus = find_bus(board, req, &mask);
      if (!bus) continue;
      Instruction in = make_measure(board, static_cast<int>(id), req, std::move(*bus), t);
      for (int i : indices(board, in.tiles)) mask[static_cast<std::size_t>(i)] = 1;
      timeline.reserve(indices(board, in.tiles), t, in.duration);
      s.instructions.push_back(std::move(in));
      dag.remove(id);
      if (pj == id) pj.reset();
    }
    if (dag.empty()) break;

    if (!pj) {
      for (std::size_t id : dag.frontier())
        if (!find_bus(board, requests[id])) {
          pj = id;
          break;
        }
    }
    if (!pj || find_bus(board, requests[*pj])) {
      ++t;
      continue;
    }

    // Resolve P_j with reward-greedy patch operations.
    const BusRequest& req = requests[*pj];
    int phase_end = t + 1;
    // Starts never decrease within a phase: the timeline does not track
    // resting patches, so a later op may need an earlier one's vacated tile.
    int floor = t;
    while (!find_bus(board, req)) {
      const int current = satisfied_units(analyze(board), req);
      auto best = best_candidate(board, req);
      if (!best || best->reward <= current) {
        // Lookahead for the rare case (typically a Y terminal) that no single
        // operation can improve: best pair first, then a wider search.
        std::optional<std::pair<Candidate, Candidate>> pair;
        for (const PatchOp& first : patch_op_candidates(board)) {
          Board mid = apply_op(board, first);
          if (!check_connectivity(mid)) continue;
          auto second = best_candidate(mid, req);
          if (!second || second->reward <= current) continue;
          const int cost = first.cost() + second->op.cost();
          if (!pair || second->reward > pair->second.reward ||
              (second->reward == pair->second.reward && cost < pair->first.op.cost() + pair->second.op.cost()))
            pair = std::make_pair(Candidate{first, mid, 0}, *second);
        }
        std::vector<PatchOp> seq;
        if (pair) {
          seq = {pair->first.op, pair->second.op};
        } else if (auto deeper = improving_sequence(board, req, current)) {
          seq = std::move(*deeper);
        } else {
          throw DeadlockError("no patch operation makes operator " + std::to_string(*pj) + " (" +
                              cp.program[*pj].str() + ") more executable");
        }
        for (const PatchOp& op : seq) {
          Instruction in = make_patch_instr(board, op, 0);
          const auto idx = indices(board, in.tiles);
          in.start = timeline.earliest(idx, floor, in.duration);
          floor = in.start;
          timeline.reserve(idx, in.start, in.duration);
          phase_end = std::max(phase_end, in.end());
          s.instructions.push_back(std::move(in));
          board = apply_op(board, op);
        }
        continue;
      }
      Instruction in = make_patch_instr(board, best->op, 0);
      const auto idx = indices(board, in.tiles);
      in.start = timeline.earliest(idx, floor, in.duration);
      floor = in.start;
      timeline.reserve(idx, in.start, in.duration);
      phase_end = std::max(phase_end, in.end());
      s.instructions.push_back(std::move(in));
      board = std::move(best->next);
    }
    t = phase_end;
  }

  std::stable_sort(s.instructions.begin(), s.instructions.end(),
                   [](const Instruction& a, const Instruction& b) { return a.start < b.start; });
  s.final_board = board;
  return s;
}

Schedule spc_schedule(const PbcProgram& program, const Board& board0, const QubitMap& map,
                      const ScheduleOptions& options) {
  check_inputs(program, board0, map);
  CorrectedProgram cp = expand_corrections(program, options.policy, options.seed);

  Schedule s;
  s.scheduler = "spc";
  s.correction_policy = correction_policy_name(options.policy);
  s.seed = options.seed;
  s.initial = board0;
  s.mapping = map;
  s.program = cp.program;
  s.is_correction = cp.is_correction;

  Board board = board0;
  Timeline timeline(board.tile_count());
  int t = 0;
  for (std::size_t id = 0; id < cp.program.size(); ++id) {
    const BusRequest req = request_for(cp.program[id], map);
    const BoardAnalysis an = analyze(board);
    std::vector<int> to_rotate;
    for (const auto& term : req.terminals) {
      const auto& e = an.exposure.at(term.patch);
      const bool ok = term.edge == EdgeType::X ? e.x : e.z;
      if (ok) continue;
      const bool other = term.edge == EdgeType::X ? e.z : e.x;
      bool needs_both = false;
      for (const auto& o : req.terminals) needs_both |= o.patch == term.patch && o.edge != term.edge;
      if (needs_both || !other)
        throw DeadlockError("in-place rotation cannot expose both edges of patch " + std::to_string(term.patch));
      if (std::find(to_rotate.begin(), to_rotate.end(), term.patch) == to_rotate.end()) to_rotate.push_back(term.patch);
    }
    int ready = t;
    for (int p : to_rotate) {
      const Patch& pt = board.patch(p);
      // Any free neighbour works as the helper; take the one free earliest.
      std::optional<std::pair<int, Coord>> pick;
      for (Coord n : neighbors(board, pt.anchor())) {
        if (!board.is_routing(n)) continue;
        const int st = timeline.earliest(indices(board, {pt.anchor(), n}), t, op_cost(PatchOpKind::rotate));
        if (!pick || st < pick->first) pick = std::make_pair(st, n);
      }
      const PatchOp op = PatchOp::rotate(p, pick->second);
      Instruction in = make_patch_instr(board, op, pick->first);
      timeline.reserve(indices(board, in.tiles), in.start, in.duration);
      ready = std::max(ready, in.end());
      s.instructions.push_back(std::move(in));
      board = apply_op(board, op);
    }
    auto bus = first_found_bus(board, req);
    if (!bus) throw DeadlockError("no routing path for operator " + std::to_string(id) + " (" + cp.program[id].str() + ")");
    Instruction in = make_measure(board, static_cast<int>(id), req, std::move(*bus), ready);
    timeline.reserve(indices(board, in.tiles), in.start, in.duration);
    t = in.end();
    s.instructions.push_back(std::move(in));
  }
  std::stable_sort(s.instructions.begin(), s.instructions.end(),
                   [](const Instruction& a, const Instruction& b) { return a.start < b.start; });
  s.final_board = board;
  return s;
}

ValidationReport validate_schedule(const Schedule& s, const Board& board, const PbcProgram& program) {
  auto fail = [](std::string m) { return ValidationReport{false, std::move(m)}; };
  if (!(s.initial == board)) return fail("schedule was built for a different board");
  if (s.is_correction.size() != s.program.size()) return fail("correction flags do not match the program");
  {
    std::vector<PauliOperator> stripped;
    for (std::size_t i = 0; i < s.program.size(); ++i)
      if (!s.is_correction[i]) stripped.push_back(s.program[i]);
    if (stripped != program.ops()) return fail("scheduled program differs from the input program");
    for (std::size_t i = 0; i < s.program.size(); ++i) {
      if (!s.is_correction[i]) continue;
      if (i == 0 || !s.program[i - 1].is_t_like() || s.program[i - 1].word() != s.program[i].word() ||
          !s.program[i].is_quarter())
        return fail("correction " + std::to_string(i) + " does not follow a matching pi/8 rotation");
    }
  }
  try {
    check_map(s.mapping, board);
  } catch (const Error& e) {
    return fail(e.what());
  }

  const int T = s.total_clocks();
  std::vector<std::vector<int>> owner(static_cast<std::size_t>(T),
                                      std::vector<int>(static_cast<std::size_t>(board.tile_count()), -1));
  for (std::size_t k = 0; k < s.instructions.size(); ++k) {
    const auto& in = s.instructions[k];
    const int expected = in.kind == InstrKind::measure ? op_cost(PatchOpKind::measure)
                         : in.kind == InstrKind::move  ? op_cost(PatchOpKind::move)
                                                       : op_cost(PatchOpKind::rotate);
    if (in.duration != expected || in.start < 0) return fail("instruction " + std::to_string(k) + " has a bad duration");
    if (k > 0 && in.start < s.instructions[k - 1].start) return fail("instructions are not in start order");
    for (int t = in.start; t < in.end(); ++t)
      for (Coord c : in.tiles) {
        if (!board.in_bounds(c)) return fail("instruction " + std::to_string(k) + " uses an off-board tile");
        int& o = owner[static_cast<std::size_t>(t)][static_cast<std::size_t>(board.index(c))];
        if (o >= 0)
          return fail("tile (" + std::to_string(c.r) + "," + std::to_string(c.c) + ") used by instructions " +
                      std::to_string(o) + " and " + std::to_string(k) + " at clock " + std::to_string(t));
        o = static_cast<int>(k);
      }
  }

  PDag dag(s.program);
  std::vector<int> done_end(s.program.size(), -1);
  Board b = board;
  for (std::size_t k = 0; k < s.instructions.size(); ++k) {
    const auto& in = s.instructions[k];
    const std::string where = "instruction " + std::to_string(k) + " at clock " + std::to_string(in.start) + ": ";
    try {
      if (in.kind == InstrKind::measure) {
        if (in.op < 0 || static_cast<std::size_t>(in.op) >= s.program.size()) return fail(where + "unknown operator");
        const auto id = static_cast<std::size_t>(in.op);
        if (done_end[id] >= 0) return fail(where + "operator " + std::to_string(id) + " executed twice");
        for (std::size_t p : dag.node(id).predecessors)
          if (done_end[p] < 0 || done_end[p] > in.start)
            return fail(where + "operator " + std::to_string(id) + " runs before its dependency " + std::to_string(p));
        if (!(in.request == request_for(s.program[id], s.mapping)))
          return fail(where + "terminals do not match operator " + std::to_string(id));
        for (Coord c : in.bus)
          if (!b.is_routing(c)) return fail(where + "bus tile is not routing space");
        if (!is_connected_tiles(b, in.bus)) return fail(where + "bus is not connected");
        const auto groups = terminal_groups(b, in.request);
        for (const auto& g : groups) {
          bool touch = false;
          for (Coord c : g) touch |= std::find(in.bus.begin(), in.bus.end(), c) != in.bus.end();
          if (!touch) return fail(where + "bus misses a required boundary of operator " + std::to_string(id));
        }
        for (Coord c : fixed_tiles(b, in.request))
          if (std::find(in.tiles.begin(), in.tiles.end(), c) == in.tiles.end())
            return fail(where + "measurement does not hold its patches and ports");
        done_end[id] = in.end();
      } else {
        const Patch& p = b.patch(in.patch);
        if (p.anchor() != in.from) return fail(where + "patch " + std::to_string(in.patch) + " is not at the source tile");
        const PatchOp op = in.kind == InstrKind::move ? PatchOp::move(in.patch, in.to) : PatchOp::rotate(in.patch, in.to);
        b = apply_op(b, op);
      }
    } catch (const Error& e) {
      return fail(where + e.what());
    }
  }
  for (std::size_t i = 0; i < done_end.size(); ++i)
    if (done_end[i] < 0) return fail("operator " + std::to_string(i) + " (" + s.program[i].str() + ") never executed");
  if (!(b == s.final_board)) return fail("final board differs from the replayed board");
  return {};
}

}  // namespace latsurg
