#include "latsurg/schedule.hpp"

#include <algorithm>
#include <set>

#include "latsurg/errors.hpp"
#include "latsurg/layout_io.hpp"

namespace latsurg {

std::string instr_kind_name(InstrKind kind) {
  switch (kind) {
    case InstrKind::measure: return "measure";
    case InstrKind::move: return "move";
    case InstrKind::rotate: return "rotate";
  }
  return "?";
}

int Schedule::total_clocks() const {
  int t = 0;
  for (const auto& in : instructions) t = std::max(t, in.end());
  return t;
}

std::vector<std::vector<const Instruction*>> Schedule::slices() const {
  std::vector<std::vector<const Instruction*>> out(static_cast<std::size_t>(total_clocks()));
  for (const auto& in : instructions) out[static_cast<std::size_t>(in.start)].push_back(&in);
  return out;
}

ScheduleMetrics compute_metrics(const Schedule& s) {
  ScheduleMetrics m;
  m.clocks = s.total_clocks();
  long bus_sum = 0;
  for (const auto& in : s.instructions) {
    switch (in.kind) {
      case InstrKind::measure: {
        ++m.measurements;
        const int len = static_cast<int>(in.bus.size());
        m.bus_lengths.push_back(len);
        bus_sum += len;
        m.max_bus = std::max(m.max_bus, len);
        if (in.op >= 0 && static_cast<std::size_t>(in.op) < s.is_correction.size() && s.is_correction[in.op])
          ++m.corrections;
        break;
      }
      case InstrKind::move: ++m.moves; break;
      case InstrKind::rotate: ++m.rotations; break;
    }
  }
  m.mean_bus = m.measurements ? static_cast<double>(bus_sum) / m.measurements : 0.0;

  const int patches = static_cast<int>(s.initial.patch_count());
  m.idle_per_clock.assign(static_cast<std::size_t>(m.clocks), patches);
  std::vector<std::set<int>> busy(static_cast<std::size_t>(m.clocks));
  for (const auto& in : s.instructions) {
    std::vector<int> involved;
    if (in.kind == InstrKind::measure) {
      for (const auto& term : in.request.terminals) involved.push_back(term.patch);
    } else {
      involved.push_back(in.patch);
    }
    for (int t = in.start; t < in.end(); ++t)
      for (int p : involved) busy[static_cast<std::size_t>(t)].insert(p);
  }
  for (int t = 0; t < m.clocks; ++t)
    m.idle_per_clock[static_cast<std::size_t>(t)] = patches - static_cast<int>(busy[static_cast<std::size_t>(t)].size());
  return m;
}

namespace {

nlohmann::ordered_json coord_json(Coord c) { return nlohmann::ordered_json::array({c.r, c.c}); }

nlohmann::ordered_json coords_json(const std::vector<Coord>& cs) {
  auto a = nlohmann::ordered_json::array();
  for (Coord c : cs) a.push_back(coord_json(c));
  return a;
}

}  // namespace

nlohmann::ordered_json schedule_to_json(const Schedule& s) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json header;
  header["board"] = layout_to_json(s.initial);
  header["mapping"] = s.mapping.table();
  header["scheduler"] = s.scheduler;
  header["seed"] = s.seed;
  header["correction_policy"] = s.correction_policy;
  auto prog = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < s.program.size(); ++i) {
    nlohmann::ordered_json o;
    o["id"] = i;
    o["op"] = s.program[i].str();
    if (i < s.is_correction.size() && s.is_correction[i]) o["correction"] = true;
    prog.push_back(o);
  }
  header["program"] = prog;
  j["header"] = header;
  auto slices = nlohmann::ordered_json::array();
  const auto grouped = s.slices();
  for (std::size_t t = 0; t < grouped.size(); ++t) {
    if (grouped[t].empty()) continue;
    nlohmann::ordered_json slice;
    slice["t"] = t;
    auto list = nlohmann::ordered_json::array();
    for (const Instruction* in : grouped[t]) {
      nlohmann::ordered_json e;
      e["kind"] = instr_kind_name(in->kind);
      e["duration"] = in->duration;
      if (in->kind == InstrKind::measure) {
        e["op"] = in->op;
        auto terms = nlohmann::ordered_json::array();
        for (const auto& term : in->request.terminals)
          terms.push_back(nlohmann::ordered_json::array({term.patch, std::string(1, edge_char(term.edge))}));
        e["terminals"] = terms;
        e["magic"] = in->request.magic;
        e["ancilla"] = in->request.ancilla;
        e["bus"] = coords_json(in->bus);
      } else {
        e["patch"] = in->patch;
        if (in->kind == InstrKind::move) e["from"] = coord_json(in->from);
        e[in->kind == InstrKind::move ? "to" : "helper"] = coord_json(in->to);
      }
      list.push_back(e);
    }
    slice["instructions"] = list;
    slices.push_back(slice);
  }
  j["slices"] = slices;
  j["total_clocks"] = s.total_clocks();
  return j;
}

namespace {

Coord coord_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("schedule", "coordinate must be [row, col]");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

Schedule schedule_from_json(const nlohmann::json& j) {
  try {
    Schedule s;
    const auto& h = j.at("header");
    s.initial = layout_from_json(h.at("board"));
    s.mapping = QubitMap(h.at("mapping").get<std::vector<int>>());
    s.scheduler = h.at("scheduler").get<std::string>();
    s.seed = h.at("seed").get<std::uint64_t>();
    s.correction_policy = h.at("correction_policy").get<std::string>();
    s.program = PbcProgram(s.mapping.num_qubits());
    for (const auto& o : h.at("program")) {
      s.program.push_back(PauliOperator::parse(o.at("op").get<std::string>()));
      s.is_correction.push_back(o.value("correction", false));
    }
    // Held tiles and move sources are recomputed by replaying the board.
    Board b = s.initial;
    for (const auto& slice : j.at("slices")) {
      const int t = slice.at("t").get<int>();
      for (const auto& e : slice.at("instructions")) {
        Instruction in;
        in.start = t;
        in.duration = e.at("duration").get<int>();
        const std::string kind = e.at("kind").get<std::string>();
        if (kind == "measure") {
          in.kind = InstrKind::measure;
          in.op = e.at("op").get<int>();
          for (const auto& term : e.at("terminals")) {
            const std::string edge = term.at(1).get<std::string>();
            in.request.terminals.push_back({term.at(0).get<int>(), edge == "X" ? EdgeType::X : EdgeType::Z});
          }
          in.request.magic = e.at("magic").get<bool>();
          in.request.ancilla = e.at("ancilla").get<bool>();
          for (const auto& c : e.at("bus")) in.bus.push_back(coord_from(c));
          for (const auto& term : in.request.terminals)
            for (Coord c : b.patch(term.patch).tiles)
              if (std::find(in.tiles.begin(), in.tiles.end(), c) == in.tiles.end()) in.tiles.push_back(c);
          if (in.request.magic && b.magic()) in.tiles.push_back(*b.magic());
          if (in.request.ancilla && b.ancilla()) in.tiles.push_back(*b.ancilla());
          in.tiles.insert(in.tiles.end(), in.bus.begin(), in.bus.end());
        } else if (kind == "move" || kind == "rotate") {
          in.kind = kind == "move" ? InstrKind::move : InstrKind::rotate;
          in.patch = e.at("patch").get<int>();
          in.from = b.patch(in.patch).anchor();
          in.to = coord_from(e.at(kind == "move" ? "to" : "helper"));
          in.tiles = {in.from, in.to};
          b = apply_op(b, kind == "move" ? PatchOp::move(in.patch, in.to) : PatchOp::rotate(in.patch, in.to));
        } else {
          throw ParseError("schedule", "unknown instruction kind '" + kind + "'");
        }
        std::sort(in.tiles.begin(), in.tiles.end());
        s.instructions.push_back(std::move(in));
      }
    }
    s.final_board = b;
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("schedule", std::string("malformed schedule file: ") + e.what());
  }
}

nlohmann::ordered_json metrics_to_json(const ScheduleMetrics& m) {
  nlohmann::ordered_json j;
  j["clocks"] = m.clocks;
  j["measurements"] = m.measurements;
  j["corrections"] = m.corrections;
  j["rotations"] = m.rotations;
  j["moves"] = m.moves;
  j["mean_bus"] = m.mean_bus;
  j["max_bus"] = m.max_bus;
  return j;
}

}  // namespace latsurg
