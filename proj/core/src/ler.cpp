#include "latsurg/ler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "latsurg/errors.hpp"

namespace latsurg {

CalibrationTable default_calibration(int d, double p) {
  const double p_l = 0.1 * std::pow(p / 0.01, (d + 1) / 2.0);
  const double per_clock = std::min(1.0, d * p_l);
  CalibrationTable c;
  c.distance = d;
  c.ppm_per_bus_tile = per_clock;
  c.rotation_deformation = std::min(1.0, 2 * per_clock);
  c.rotation_corner = std::min(1.0, 2 * per_clock);
  c.rotation_movement = std::min(1.0, 2 * per_clock);
  c.move = std::min(1.0, 2 * per_clock);
  c.idle_per_patch = per_clock;
  c.provenance = "analytic model default, not measured data: p_L = 0.1*(p/0.01)^((d+1)/2), d=" + std::to_string(d) +
                 ", p=" + std::to_string(p);
  return c;
}

CalibrationTable zero_calibration(int d) {
  CalibrationTable c;
  c.distance = d;
  c.provenance = "all rates zero";
  return c;
}

namespace {

const char* const kRateKeys[] = {"ppm_per_bus_tile", "rotation_deformation", "rotation_corner",
                                 "rotation_movement", "move", "idle_per_patch"};

double* rate_field(CalibrationTable& c, const std::string& key) {
  if (key == "ppm_per_bus_tile") return &c.ppm_per_bus_tile;
  if (key == "rotation_deformation") return &c.rotation_deformation;
  if (key == "rotation_corner") return &c.rotation_corner;
  if (key == "rotation_movement") return &c.rotation_movement;
  if (key == "move") return &c.move;
  if (key == "idle_per_patch") return &c.idle_per_patch;
  return nullptr;
}

}  // namespace

CalibrationTable calibration_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw CalibrationError("calibration must be a JSON object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != CalibrationTable::kSchemaVersion)
    throw CalibrationError("calibration schema_version must be " + std::to_string(CalibrationTable::kSchemaVersion));
  if (!j.contains("distance") || !j["distance"].is_number_integer() || j["distance"].get<int>() < 1)
    throw CalibrationError("calibration needs a positive integer 'distance'");
  if (!j.contains("rates") || !j["rates"].is_object()) throw CalibrationError("calibration needs a 'rates' object");
  CalibrationTable c;
  c.distance = j["distance"].get<int>();
  const auto& rates = j["rates"];
  for (const char* key : kRateKeys) {
    if (!rates.contains(key) || !rates[key].is_number()) throw CalibrationError(std::string("missing rate '") + key + "'");
    const double v = rates[key].get<double>();
    if (!(v >= 0.0 && v <= 1.0)) throw CalibrationError(std::string("rate '") + key + "' is outside [0, 1]");
    *rate_field(c, key) = v;
  }
  for (auto it = rates.begin(); it != rates.end(); ++it)
    if (!rate_field(c, it.key())) throw CalibrationError("unknown rate '" + it.key() + "'");
  if (j.contains("provenance")) c.provenance = j["provenance"].get<std::string>();
  return c;
}

nlohmann::ordered_json calibration_to_json(const CalibrationTable& c) {
  nlohmann::ordered_json j;
  j["schema_version"] = CalibrationTable::kSchemaVersion;
  j["distance"] = c.distance;
  nlohmann::ordered_json rates;
  rates["ppm_per_bus_tile"] = c.ppm_per_bus_tile;
  rates["rotation_deformation"] = c.rotation_deformation;
  rates["rotation_corner"] = c.rotation_corner;
  rates["rotation_movement"] = c.rotation_movement;
  rates["move"] = c.move;
  rates["idle_per_patch"] = c.idle_per_patch;
  j["rates"] = rates;
  j["provenance"] = c.provenance;
  return j;
}

CalibrationTable load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CalibrationError("cannot open calibration file '" + path + "'");
  try {
    return calibration_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw CalibrationError(std::string("invalid calibration JSON: ") + e.what());
  }
}

double layer_probability(double ppm, double pr, double idle) { return 1.0 - (1.0 - ppm) * (1.0 - pr) * (1.0 - idle); }

LerReport estimate_ler(const Schedule& s, const CalibrationTable& c) {
  LerReport r;
  const int T = s.total_clocks();
  const auto metrics = compute_metrics(s);
  std::vector<double> ppm_survive(static_cast<std::size_t>(T), 1.0);
  std::vector<double> pr_survive(static_cast<std::size_t>(T), 1.0);
  const double rot_rates[3] = {c.rotation_deformation, c.rotation_corner, c.rotation_movement};
  for (const auto& in : s.instructions) {
    for (int t = in.start; t < in.end(); ++t) {
      const auto ti = static_cast<std::size_t>(t);
      switch (in.kind) {
        case InstrKind::measure:
          ppm_survive[ti] *= 1.0 - std::min(1.0, c.ppm_per_bus_tile * static_cast<double>(in.bus.size()));
          break;
        case InstrKind::rotate: pr_survive[ti] *= 1.0 - rot_rates[std::min(2, t - in.start)]; break;
        case InstrKind::move: pr_survive[ti] *= 1.0 - c.move; break;
      }
    }
  }
  for (int t = 0; t < T; ++t) {
    const auto ti = static_cast<std::size_t>(t);
    const double ppm = 1.0 - ppm_survive[ti];
    const double pr = 1.0 - pr_survive[ti];
    const double idle = std::min(1.0, metrics.idle_per_clock[ti] * c.idle_per_patch);
    const double layer = layer_probability(ppm, pr, idle);
    r.p_ppm.push_back(ppm);
    r.p_pr.push_back(pr);
    r.p_idle.push_back(idle);
    r.p_layer.push_back(layer);
    r.sum_ppm += ppm;
    r.sum_pr += pr;
    r.sum_idle += idle;
    r.p_total += layer;
  }
  r.resources = resource_estimate(s, c);
  return r;
}

ResourceStats resource_estimate(int tiles, int clocks, int d) {
  ResourceStats st;
  st.tiles = tiles;
  st.data_qubits = static_cast<long>(tiles) * d * d;
  st.measure_qubits = static_cast<long>(tiles) * (d * d - 1);
  st.clocks = clocks;
  st.cycles = static_cast<long>(clocks) * d;
  return st;
}

ResourceStats resource_estimate(const Schedule& s, const CalibrationTable& c) {
  return resource_estimate(s.initial.tile_count(), s.total_clocks(), c.distance);
}

double space_reduction_percent(int reference_tiles, int smaller_tiles) {
  if (reference_tiles <= 0) return 0.0;
  return 100.0 * (reference_tiles - smaller_tiles) / reference_tiles;
}

nlohmann::ordered_json ler_report_to_json(const LerReport& r) {
  nlohmann::ordered_json j;
  j["p_total"] = r.p_total;
  j["breakdown"] = {{"ppm", r.sum_ppm}, {"pr", r.sum_pr}, {"idle", r.sum_idle}};
  j["p_layer"] = r.p_layer;
  j["resources"] = {{"tiles", r.resources.tiles},
                    {"data_qubits", r.resources.data_qubits},
                    {"measure_qubits", r.resources.measure_qubits},
                    {"clocks", r.resources.clocks},
                    {"cycles", r.resources.cycles}};
  return j;
}

}  // namespace latsurg
