#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "latsurg/errors.hpp"
#include "latsurg/layout_io.hpp"
#include "latsurg/layout_search.hpp"
#include "latsurg/ler.hpp"
#include "latsurg/pipeline.hpp"

namespace latsurg {
namespace {

CalibrationTable table(double ppm, double rot, double move, double idle) {
  CalibrationTable c = zero_calibration(9);
  c.ppm_per_bus_tile = ppm;
  c.rotation_deformation = c.rotation_corner = c.rotation_movement = rot;
  c.move = move;
  c.idle_per_patch = idle;
  return c;
}

Instruction measure(int start, std::vector<int> patches, std::vector<Coord> bus) {
  Instruction in;
  in.kind = InstrKind::measure;
  in.start = start;
  in.op = start;
  for (int p : patches) in.request.terminals.push_back({p, EdgeType::Z});
  in.bus = bus;
  in.tiles = std::move(bus);
  return in;
}

// Three data patches; patch 0 measured over one bus tile, patch 1 rotating.
Schedule one_slice() {
  Schedule s;
  s.initial = parse_layout_text("A . . M\nQ0h Q1h Q2h .\n. . . .\n");
  s.final_board = s.initial;
  s.instructions.push_back(measure(0, {0}, {{0, 0}}));
  Instruction rot;
  rot.kind = InstrKind::rotate;
  rot.patch = 1;
  rot.start = 0;
  rot.duration = 1;
  s.instructions.push_back(rot);
  return s;
}

Schedule compiled(std::mt19937_64& rng) {
  const std::size_t n = 2 + rng() % 4;
  const Board b = design_layout(n, 4, 4, {0.1 * static_cast<double>(rng() % 5)}).board;
  CompileOptions opt;
  opt.policy = CorrectionPolicy::never;
  return compile_program(testing::random_rotations(rng, n, 2 + rng() % 6, {1, -1, 2}), b, opt).schedule;
}

TEST(Ler, ZeroCalibrationGivesZero) {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(estimate_ler(compiled(rng), zero_calibration()).p_total, 0.0);
}

TEST(Ler, SingleSliceProductFormula) {
  const double expect = 1.0 - 0.999 * 0.998 * 0.9995;
  EXPECT_NEAR(layer_probability(0.001, 0.002, 0.0005), expect, 1e-12);
  const LerReport r = estimate_ler(one_slice(), table(0.001, 0.002, 0.0, 0.0005));
  ASSERT_EQ(r.p_layer.size(), 1u);
  EXPECT_NEAR(r.p_ppm[0], 0.001, 1e-15);
  EXPECT_NEAR(r.p_pr[0], 0.002, 1e-15);
  EXPECT_NEAR(r.p_idle[0], 0.0005, 1e-15);
  EXPECT_NEAR(r.p_total, expect, 1e-12);
  EXPECT_NEAR(r.p_total, 3.4965e-3, 1e-6);
}

TEST(Ler, BusTilesScalePpmLinearly) {
  Schedule s = one_slice();
  s.instructions[0].bus = {{0, 0}, {0, 1}, {0, 2}};
  const LerReport r = estimate_ler(s, table(0.001, 0.0, 0.0, 0.0));
  EXPECT_NEAR(r.p_ppm[0], 0.003, 1e-15);
}

TEST(Ler, ParallelMeasurementsComposeIndependently) {
  Schedule s = one_slice();
  s.instructions.push_back(measure(0, {2}, {{2, 2}, {2, 3}}));
  const LerReport r = estimate_ler(s, table(0.01, 0.0, 0.0, 0.0));
  EXPECT_NEAR(r.p_ppm[0], 1.0 - 0.99 * 0.98, 1e-15);
}

TEST(Ler, RotationUsesThreeSubRates) {
  Schedule s;
  s.initial = parse_layout_text("A . . M\nQ0h . . .\n");
  s.final_board = s.initial;
  Instruction rot;
  rot.kind = InstrKind::rotate;
  rot.patch = 0;
  rot.duration = 3;
  s.instructions.push_back(rot);
  CalibrationTable c = zero_calibration();
  c.rotation_deformation = 0.1;
  c.rotation_corner = 0.2;
  c.rotation_movement = 0.3;
  const LerReport r = estimate_ler(s, c);
  ASSERT_EQ(r.p_pr.size(), 3u);
  EXPECT_DOUBLE_EQ(r.p_pr[0], 0.1);
  EXPECT_DOUBLE_EQ(r.p_pr[1], 0.2);
  EXPECT_DOUBLE_EQ(r.p_pr[2], 0.3);
  EXPECT_NEAR(r.p_total, 0.6, 1e-15);
}

TEST(Ler, SliceDominanceOrdersTotals) {
  // Same length; A has fewer bus tiles and fewer idle patches every slice.
  Schedule a, b;
  a.initial = b.initial = parse_layout_text("A . . . M\nQ0h Q1h Q2h . .\n. . . . .\n");
  a.final_board = b.final_board = a.initial;
  a.instructions = {measure(0, {0, 1}, {{0, 0}}), measure(1, {0, 1, 2}, {{0, 0}, {0, 1}})};
  b.instructions = {measure(0, {0}, {{0, 0}, {0, 1}}), measure(1, {0, 1}, {{0, 0}, {0, 1}, {0, 2}})};
  const CalibrationTable c = default_calibration();
  EXPECT_LE(estimate_ler(a, c).p_total, estimate_ler(b, c).p_total);
}

TEST(Ler, PropertiesOnCompiledSchedules) {
  std::mt19937_64 rng(82);
  std::uniform_real_distribution<double> u(0.0, 0.05);
  for (int i = 0; i < 60; ++i) {
    const Schedule s = compiled(rng);
    const CalibrationTable c = table(u(rng), u(rng), u(rng), u(rng));
    const LerReport r = estimate_ler(s, c);
    ASSERT_EQ(static_cast<int>(r.p_layer.size()), s.total_clocks());
    double sum = 0.0;
    for (double p : r.p_layer) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
      sum += p;
    }
    EXPECT_EQ(sum, r.p_total);
    // Raising any single rate never lowers the total.
    for (int k = 0; k < 6; ++k) {
      CalibrationTable up = c;
      double* fields[] = {&up.ppm_per_bus_tile, &up.rotation_deformation, &up.rotation_corner,
                          &up.rotation_movement, &up.move, &up.idle_per_patch};
      *fields[k] += u(rng);
      EXPECT_GE(estimate_ler(s, up).p_total, r.p_total);
    }
  }
}

TEST(Ler, UniformIdleRateRanksByLength) {
  // sequential measurements: the longer schedule idles more patches
  const Board b = builtin_layout(LayoutStyle::compact, 4);
  CompileOptions opt;
  opt.policy = CorrectionPolicy::never;
  PbcProgram one(4), three(4);
  one.push_back(PauliOperator::parse("M ZIII"));
  for (const char* w : {"M ZIII", "M XIII", "M ZIII"}) three.push_back(PauliOperator::parse(w));
  const CompileResult short_run = compile_program(one, b, opt);
  const CompileResult long_run = compile_program(three, b, opt);
  ASSERT_LT(short_run.schedule.total_clocks(), long_run.schedule.total_clocks());
  const CalibrationTable c = table(0.0, 0.0, 0.0, 1e-4);
  EXPECT_LT(estimate_ler(short_run.schedule, c).p_total, estimate_ler(long_run.schedule, c).p_total);
}

TEST(Resources, DataQubitsAndCycles) {
  const ResourceStats st = resource_estimate(25, 7, 9);
  EXPECT_EQ(st.data_qubits, 2025);
  EXPECT_EQ(st.measure_qubits, 25 * 80);
  EXPECT_EQ(st.cycles, 63);
  EXPECT_EQ(resource_estimate(25, 0, 9).cycles, 0);
  Schedule s;
  s.initial = Board(5, 5);
  EXPECT_EQ(resource_estimate(s, default_calibration(9)).data_qubits, 2025);
  EXPECT_EQ(resource_estimate(s, default_calibration(9)).cycles, 0);
  EXPECT_EQ(estimate_ler(s, default_calibration()).p_total, 0.0);
}

TEST(Resources, SpaceReductionPercent) {
  EXPECT_DOUBLE_EQ(space_reduction_percent(135, 72), 100.0 * 63 / 135);
  EXPECT_DOUBLE_EQ(space_reduction_percent(100, 100), 0.0);
  EXPECT_DOUBLE_EQ(space_reduction_percent(0, 5), 0.0);
}

TEST(Calibration, DefaultTableFollowsTheProxy) {
  const CalibrationTable c = default_calibration(9, 1e-3);
  const double p_l = 0.1 * std::pow(0.1, 5.0);
  EXPECT_NEAR(c.ppm_per_bus_tile, 9 * p_l, 1e-18);
  EXPECT_NEAR(c.idle_per_patch, 9 * p_l, 1e-18);
  EXPECT_NE(c.provenance.find("not measured"), std::string::npos);
  for (int d : {3, 5, 7, 9}) EXPECT_GT(default_calibration(d).ppm_per_bus_tile, default_calibration(d + 2).ppm_per_bus_tile);
}

TEST(Calibration, JsonRoundTripAndErrors) {
  const CalibrationTable c = default_calibration(7);
  EXPECT_EQ(calibration_from_json(nlohmann::json::parse(calibration_to_json(c).dump())), c);
  auto broken = [&](auto edit) {
    nlohmann::json j = nlohmann::json::parse(calibration_to_json(c).dump());
    edit(j);
    return j;
  };
  EXPECT_THROW(calibration_from_json(broken([](auto& j) { j["schema_version"] = 2; })), CalibrationError);
  EXPECT_THROW(calibration_from_json(broken([](auto& j) { j.erase("distance"); })), CalibrationError);
  EXPECT_THROW(calibration_from_json(broken([](auto& j) { j["rates"].erase("move"); })), CalibrationError);
  EXPECT_THROW(calibration_from_json(broken([](auto& j) { j["rates"]["move"] = 1.5; })), CalibrationError);
  EXPECT_THROW(calibration_from_json(broken([](auto& j) { j["rates"]["move"] = -0.1; })), CalibrationError);
  EXPECT_THROW(calibration_from_json(broken([](auto& j) { j["rates"]["extra"] = 0.1; })), CalibrationError);
  EXPECT_THROW(calibration_from_json(nlohmann::json::array()), CalibrationError);
  EXPECT_THROW(load_calibration("/nonexistent/calib.json"), CalibrationError);
}

TEST(Calibration, EnvironmentVariableSuppliesTheDefault) {
  const auto path = std::filesystem::temp_directory_path() / "latsurg_test_calib.json";
  CalibrationTable c = zero_calibration(5);
  c.move = 0.25;
  std::ofstream(path) << calibration_to_json(c).dump();
  RunConfig config;
  config.distance = 3;
  ::setenv("LATSURG_CALIBRATION", path.c_str(), 1);
  EXPECT_EQ(resolve_calibration(config), c);
  config.calibration_path = "/nonexistent/calib.json";
  EXPECT_THROW(resolve_calibration(config), CalibrationError);
  ::unsetenv("LATSURG_CALIBRATION");
  config.calibration_path.clear();
  EXPECT_EQ(resolve_calibration(config), default_calibration(3));
  std::filesystem::remove(path);
}

TEST(Ler, ReportJsonFields) {
  const LerReport r = estimate_ler(one_slice(), table(0.001, 0.002, 0.0, 0.0005));
  const auto j = ler_report_to_json(r);
  EXPECT_DOUBLE_EQ(j.at("p_total").get<double>(), r.p_total);
  EXPECT_EQ(j.at("p_layer").size(), 1u);
  EXPECT_EQ(j.at("resources").at("tiles").get<int>(), 12);
}

}  // namespace
}  // namespace latsurg
