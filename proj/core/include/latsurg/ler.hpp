#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latsurg/schedule.hpp"

namespace latsurg {

// Per-clock logical failure probabilities of the atomic operations.
struct CalibrationTable {
  static constexpr int kSchemaVersion = 1;

  int distance = 9;
  double ppm_per_bus_tile = 0.0;      // one measurement, per routing tile
  double rotation_deformation = 0.0;  // rotation clock 1
  double rotation_corner = 0.0;       // rotation clock 2
  double rotation_movement = 0.0;     // rotation clock 3
  double move = 0.0;                  // one expand+shrink move
  double idle_per_patch = 0.0;        // one idle data patch for one clock
  std::string provenance;

  bool operator==(const CalibrationTable&) const = default;
};

// Analytic proxy p_L(d) = 0.1 (p / 0.01)^((d + 1) / 2) per tile-round,
// scaled by the d rounds of a clock. Rotations and moves touch two tiles.
CalibrationTable default_calibration(int distance = 9, double physical_error = 1e-3);
CalibrationTable zero_calibration(int distance = 9);

// Throws CalibrationError on a missing key, a version mismatch or a rate
// outside [0, 1].
CalibrationTable calibration_from_json(const nlohmann::json& j);
nlohmann::ordered_json calibration_to_json(const CalibrationTable& c);
CalibrationTable load_calibration(const std::string& path);

struct ResourceStats {
  int tiles = 0;
  long data_qubits = 0;     // tiles * d^2
  long measure_qubits = 0;  // tiles * (d^2 - 1)
  int clocks = 0;
  long cycles = 0;          // clocks * d
};

struct LerReport {
  double p_total = 0.0;
  std::vector<double> p_layer;
  std::vector<double> p_ppm;
  std::vector<double> p_pr;
  std::vector<double> p_idle;
  double sum_ppm = 0.0;
  double sum_pr = 0.0;
  double sum_idle = 0.0;
  ResourceStats resources;
};

// 1 - (1 - ppm)(1 - pr)(1 - idle).
double layer_probability(double ppm, double pr, double idle);

LerReport estimate_ler(const Schedule& schedule, const CalibrationTable& calib);
ResourceStats resource_estimate(const Schedule& schedule, const CalibrationTable& calib);
ResourceStats resource_estimate(int tiles, int clocks, int distance);

// Percent fewer tiles in `smaller` than in `reference`.
double space_reduction_percent(int reference_tiles, int smaller_tiles);

nlohmann::ordered_json ler_report_to_json(const LerReport& report);

}  // namespace latsurg
