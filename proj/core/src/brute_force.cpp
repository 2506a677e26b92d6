#include "latsurg/brute_force.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "latsurg/errors.hpp"
#include "latsurg/pdag.hpp"
#include "latsurg/routing.hpp"

namespace latsurg {

namespace {

struct InFlight {
  std::vector<int> tiles;
  int patch = -1;
  int elapsed = 0;  // clocks already spent
};

struct State {
  Board board;
  std::uint32_t done = 0;
  std::vector<InFlight> inflight;
  int clock = 0;
  double cost = 0.0;
};

std::string state_key(const State& s) {
  std::string k = s.board.key();
  k += '|';
  k += std::to_string(s.done);
  for (const auto& f : s.inflight) {
    k += '|';
    k += std::to_string(f.elapsed);
    for (int i : f.tiles) k += ',' + std::to_string(i);
  }
  return k;
}

// One instruction started in the current clock.
struct Start {
  InstrKind kind;
  int op = -1;
  PatchOp patch_op;
  std::vector<int> tiles;
  int bus = 0;
  std::vector<int> patches;
};

class Search {
 public:
  Search(const PbcProgram& program, const Board& board, const QubitMap& map, const BruteForceOptions& opt)
      : opt_(opt), board0_(board) {
    check_map(map, board);
    const CorrectedProgram cp = expand_corrections(program, opt.policy, opt.seed);
    ops_ = cp.program.ops();
    if (ops_.size() > 32) throw SizeError("brute force supports at most 32 scheduled operators");
    const PDag dag(cp.program);
    preds_.resize(ops_.size());
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      for (std::size_t p : dag.node(i).predecessors) preds_[i] |= std::uint32_t{1} << p;
      requests_.push_back(request_for(ops_[i], map));
    }
    all_ = ops_.size() == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << ops_.size()) - 1;
  }

  BruteForceResult run() {
    BruteForceResult r;
    r.clocks = search(r.states);
    if (opt_.minimize_ler) {
      std::size_t more = 0;
      r.min_p_total = search_cost(more);
      r.states += more;
    }
    return r;
  }

 private:
  int heuristic(const State& s) const {
    int h = 0;
    int magic = 0, ancilla = 0;
    std::vector<int> depth(ops_.size(), 0);
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (s.done >> i & 1U) continue;
      int d = 1;
      for (std::size_t p = 0; p < i; ++p)
        if ((preds_[i] >> p & 1U) && !(s.done >> p & 1U)) d = std::max(d, depth[p] + 1);
      depth[i] = d;
      h = std::max(h, d);
      magic += requests_[i].magic;
      ancilla += requests_[i].ancilla;
    }
    h = std::max({h, magic, ancilla});
    for (const auto& f : s.inflight) h = std::max(h, op_cost(PatchOpKind::rotate) - f.elapsed);
    return h;
  }

  // Calls `emit` for every tile-disjoint set of instructions startable in `s`.
  void expand(const State& s, const std::function<void(const std::vector<Start>&)>& emit) const {
    const Board& b = s.board;
    TileMask mask(static_cast<std::size_t>(b.tile_count()), 0);
    for (const auto& f : s.inflight)
      for (int i : f.tiles) mask[static_cast<std::size_t>(i)] = 1;

    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < ops_.size(); ++i)
      if (!(s.done >> i & 1U) && (preds_[i] & ~s.done) == 0) ready.push_back(i);

    std::vector<PatchOp> patch_ops;
    if (s.done != all_) {
      for (const auto& [id, p] : b.patches()) {
        if (p.tiles.size() != 1) continue;
        for (Coord n : neighbors(b, p.anchor()))
          if (b.is_routing(n)) patch_ops.push_back(PatchOp::move(id, n));
        for (Coord n : neighbors(b, p.anchor()))
          if (b.is_routing(n)) patch_ops.push_back(PatchOp::rotate(id, n));
      }
    }

    // Measurement sets: every subset in every order, so any bus assignment
    // produced by sequential find_bus calls is reachable.
    std::vector<Start> chosen;
    std::vector<char> used(ready.size(), 0);
    std::unordered_map<std::string, char> seen_sets;
    std::function<void(TileMask&, std::size_t)> patch_rec = [&](TileMask& m, std::size_t from) {
      emit(chosen);
      for (std::size_t k = from; k < patch_ops.size(); ++k) {
        const PatchOp& op = patch_ops[k];
        const Patch& p = b.patch(op.patch);
        bool patch_taken = false;
        for (const auto& c : chosen)
          if (c.kind != InstrKind::measure && c.patch_op.patch == op.patch) patch_taken = true;
        if (patch_taken) continue;
        const int a = b.index(p.anchor());
        const int d = b.index(op.tiles.front());
        if (m[static_cast<std::size_t>(a)] || m[static_cast<std::size_t>(d)]) continue;
        Start st;
        st.kind = op.kind == PatchOpKind::move ? InstrKind::move : InstrKind::rotate;
        st.patch_op = op;
        st.tiles = {a, d};
        st.patches = {op.patch};
        m[static_cast<std::size_t>(a)] = m[static_cast<std::size_t>(d)] = 1;
        chosen.push_back(st);
        patch_rec(m, k + 1);
        chosen.pop_back();
        m[static_cast<std::size_t>(a)] = m[static_cast<std::size_t>(d)] = 0;
      }
    };
    std::function<void(TileMask&)> meas_rec = [&](TileMask& m) {
      // Different orders can reach the same tile set; expand each once.
      std::vector<int> ids;
      for (const auto& c : chosen) ids.push_back(c.op);
      std::sort(ids.begin(), ids.end());
      std::string key;
      for (int id : ids) key += std::to_string(id) + ',';
      key += '|';
      for (char v : m) key += v ? '1' : '0';
      if (!seen_sets.emplace(key, 1).second) return;
      patch_rec(m, 0);
      for (std::size_t k = 0; k < ready.size(); ++k) {
        if (used[k]) continue;
        const std::size_t id = ready[k];
        const BusRequest& req = requests_[id];
        std::vector<int> held;
        for (const auto& t : req.terminals)
          for (Coord c : b.patch(t.patch).tiles) held.push_back(b.index(c));
        if (req.magic && b.magic()) held.push_back(b.index(*b.magic()));
        if (req.ancilla && b.ancilla()) held.push_back(b.index(*b.ancilla()));
        std::sort(held.begin(), held.end());
        held.erase(std::unique(held.begin(), held.end()), held.end());
        bool clash = false;
        for (int i : held) clash |= m[static_cast<std::size_t>(i)] != 0;
        if (clash) continue;
        auto bus = find_bus(b, req, &m);
        if (!bus) continue;
        Start st;
        st.kind = InstrKind::measure;
        st.op = static_cast<int>(id);
        st.tiles = held;
        for (Coord c : *bus) st.tiles.push_back(b.index(c));
        st.bus = static_cast<int>(bus->size());
        for (const auto& t : req.terminals) st.patches.push_back(t.patch);
        for (int i : st.tiles) m[static_cast<std::size_t>(i)] = 1;
        used[k] = 1;
        chosen.push_back(st);
        meas_rec(m);
        chosen.pop_back();
        used[k] = 0;
        for (int i : st.tiles) m[static_cast<std::size_t>(i)] = 0;
      }
    };
    meas_rec(mask);
  }

  State successor(const State& s, const std::vector<Start>& starts) const {
    State n;
    n.board = s.board;
    n.done = s.done;
    n.clock = s.clock + 1;
    for (const auto& f : s.inflight) {
      if (f.elapsed + 1 < op_cost(PatchOpKind::rotate)) n.inflight.push_back({f.tiles, f.patch, f.elapsed + 1});
    }
    for (const auto& st : starts) {
      if (st.kind == InstrKind::measure) {
        n.done |= std::uint32_t{1} << st.op;
        continue;
      }
      n.board = apply_op(n.board, st.patch_op);
      if (st.kind == InstrKind::rotate) {
        auto tiles = st.tiles;
        std::sort(tiles.begin(), tiles.end());
        n.inflight.push_back({tiles, st.patch_op.patch, 1});
      }
    }
    std::sort(n.inflight.begin(), n.inflight.end(), [](const InFlight& a, const InFlight& b) {
      return std::tie(a.tiles, a.elapsed) < std::tie(b.tiles, b.elapsed);
    });
    return n;
  }

  double layer_cost(const State& s, const std::vector<Start>& starts) const {
    const CalibrationTable& c = opt_.calib;
    const double rot[3] = {c.rotation_deformation, c.rotation_corner, c.rotation_movement};
    double ppm_s = 1.0, pr_s = 1.0;
    std::vector<int> busy;
    for (const auto& f : s.inflight) {
      pr_s *= 1.0 - rot[std::min(2, f.elapsed)];
      busy.push_back(f.patch);
    }
    for (const auto& st : starts) {
      if (st.kind == InstrKind::measure) ppm_s *= 1.0 - std::min(1.0, c.ppm_per_bus_tile * st.bus);
      else pr_s *= 1.0 - (st.kind == InstrKind::move ? c.move : rot[0]);
      busy.insert(busy.end(), st.patches.begin(), st.patches.end());
    }
    std::sort(busy.begin(), busy.end());
    busy.erase(std::unique(busy.begin(), busy.end()), busy.end());
    const int idle = static_cast<int>(board0_.patch_count()) - static_cast<int>(busy.size());
    return layer_probability(1.0 - ppm_s, 1.0 - pr_s, std::min(1.0, idle * c.idle_per_patch));
  }

  bool finished(const State& s) const { return s.done == all_ && s.inflight.empty(); }

  void charge(std::size_t& states) const {
    if (++states > opt_.state_budget)
      throw BudgetExceededError("brute force exceeded the state budget of " + std::to_string(opt_.state_budget));
  }

  // A* on clocks with an admissible critical-path / shared-port bound.
  int search(std::size_t& states) {
    struct Entry {
      int f;
      int g;
      std::size_t idx;
    };
    auto cmp = [](const Entry& a, const Entry& b) { return std::tie(a.f, a.g) > std::tie(b.f, b.g); };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);
    std::vector<State> pool;
    std::unordered_map<std::string, int> best;
    State s0;
    s0.board = board0_;
    pool.push_back(s0);
    best[state_key(s0)] = 0;
    open.push({heuristic(s0), 0, 0});
    while (!open.empty()) {
      const Entry e = open.top();
      open.pop();
      const State cur = pool[e.idx];
      if (best[state_key(cur)] < e.g) continue;
      if (finished(cur)) return cur.clock;
      if (e.f > opt_.clock_budget)
        throw BudgetExceededError("no schedule within " + std::to_string(opt_.clock_budget) + " clocks");
      expand(cur, [&](const std::vector<Start>& starts) {
        State n = successor(cur, starts);
        charge(states);
        const std::string k = state_key(n);
        auto it = best.find(k);
        if (it != best.end() && it->second <= n.clock) return;
        best[k] = n.clock;
        const int f = n.clock + heuristic(n);
        if (f > opt_.clock_budget) return;
        pool.push_back(std::move(n));
        open.push({f, pool.back().clock, pool.size() - 1});
      });
    }
    throw BudgetExceededError("search space exhausted without finishing");
  }

  // Dijkstra on accumulated p_layer, bounded by the clock budget.
  double search_cost(std::size_t& states) {
    struct Entry {
      double cost;
      std::size_t idx;
    };
    auto cmp = [](const Entry& a, const Entry& b) { return a.cost > b.cost; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);
    std::vector<State> pool;
    std::unordered_map<std::string, double> best;
    State s0;
    s0.board = board0_;
    pool.push_back(s0);
    // Clock is part of the key because budgets are per clock count.
    auto key = [](const State& s) { return state_key(s) + "#" + std::to_string(s.clock); };
    best[key(s0)] = 0.0;
    open.push({0.0, 0});
    while (!open.empty()) {
      const Entry e = open.top();
      open.pop();
      const State cur = pool[e.idx];
      if (best[key(cur)] < e.cost) continue;
      if (finished(cur)) return cur.cost;
      if (cur.clock + heuristic(cur) > opt_.clock_budget) continue;
      expand(cur, [&](const std::vector<Start>& starts) {
        State n = successor(cur, starts);
        n.cost = cur.cost + layer_cost(cur, starts);
        charge(states);
        const std::string k = key(n);
        auto it = best.find(k);
        if (it != best.end() && it->second <= n.cost) return;
        best[k] = n.cost;
        pool.push_back(std::move(n));
        open.push({pool.back().cost, pool.size() - 1});
      });
    }
    throw BudgetExceededError("no schedule within " + std::to_string(opt_.clock_budget) + " clocks");
  }

  BruteForceOptions opt_;
  Board board0_;
  std::vector<PauliOperator> ops_;
  std::vector<std::uint32_t> preds_;
  std::vector<BusRequest> requests_;
  std::uint32_t all_ = 0;
};

}  // namespace

BruteForceResult brute_force_optimum(const PbcProgram& program, const Board& board, const QubitMap& map,
                                     const BruteForceOptions& options) {
  if (map.num_qubits() != program.num_qubits())
    throw ContractViolation("oracle", "mapping and program sizes differ");
  return Search(program, board, map, options).run();
}

}  // namespace latsurg
