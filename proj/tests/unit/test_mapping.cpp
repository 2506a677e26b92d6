#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "latsurg/errors.hpp"
#include "latsurg/layout_io.hpp"
#include "latsurg/layout_search.hpp"
#include "latsurg/mapping.hpp"

namespace latsurg {
namespace {

PbcProgram prog(std::size_t n, std::initializer_list<const char*> ops) {
  PbcProgram p(n);
  for (const char* s : ops) p.push_back(PauliOperator::parse(s));
  return p;
}

void expect_bijection(const QubitMap& m, const Board& b) {
  std::set<int> used;
  for (std::size_t q = 0; q < m.num_qubits(); ++q) {
    EXPECT_TRUE(b.has_patch(m.patch_of(q)));
    EXPECT_TRUE(used.insert(m.patch_of(q)).second);
    EXPECT_EQ(m.qubit_of(m.patch_of(q)), static_cast<int>(q));
  }
}

// Exposure class and ancilla distance of the patch assigned to each qubit.
std::vector<std::pair<int, int>> assigned_ranks(const QubitMap& m, const Board& b) {
  const BoardAnalysis a = analyze(b);
  std::vector<std::pair<int, int>> out;
  for (std::size_t q = 0; q < m.num_qubits(); ++q) {
    const int id = m.patch_of(q);
    const auto& e = a.exposure.at(id);
    out.push_back({(e.x && e.z) ? 0 : (e.x || e.z) ? 1 : 2, manhattan(b.patch(id).anchor(), *b.ancilla())});
  }
  return out;
}

TEST(MappingKind, Names) {
  for (MappingKind k : {MappingKind::edge_aware, MappingKind::greedy, MappingKind::identity})
    EXPECT_EQ(parse_mapping_kind(mapping_kind_name(k)), k);
  EXPECT_THROW(parse_mapping_kind("random"), ConfigError);
}

TEST(EdgeAware, HighDemandQubitGetsTheBothEdgesPatch) {
  // Patch 0 exposes only X; patch 1 exposes both.
  const Board b = parse_layout_text("A . Q1h .\n. . . M\nQ0v # # #\n");
  const BoardAnalysis a = analyze(b);
  ASSERT_TRUE(a.exposure.at(1).x && a.exposure.at(1).z);
  ASSERT_FALSE(a.exposure.at(0).x && a.exposure.at(0).z);
  // Qubit 1 alternates X and Z five times; qubit 0 never rotates.
  const PbcProgram p = prog(2, {"pi/8 IX", "pi/8 IZ", "pi/8 IX", "pi/8 IZ", "pi/8 IX", "pi/8 IZ", "M ZZ"});
  const PDag dag = build_pdag(p);
  const auto demand = rotation_demand(dag);
  ASSERT_EQ(demand[1], 5u);
  ASSERT_EQ(demand[0], 0u);
  const QubitMap m = edge_aware_map(dag, b);
  EXPECT_EQ(m.patch_of(1), 1);
  EXPECT_EQ(m.patch_of(0), 0);
}

TEST(EdgeAware, SparseLayoutOrdersByAncillaDistance) {
  const Board b = builtin_layout(LayoutStyle::sparse, 4);
  const PbcProgram p = prog(4, {"pi/8 XIII", "pi/8 ZIII", "pi/8 IIXI", "pi/8 IIZI", "pi/8 IIXI", "M ZZZZ"});
  const QubitMap m = edge_aware_map(build_pdag(p), b);
  expect_bijection(m, b);
  // Qubit 2 has the highest demand, then qubit 0.
  const auto ranks = assigned_ranks(m, b);
  EXPECT_LE(ranks[2].second, ranks[0].second);
  EXPECT_LE(ranks[0].second, ranks[1].second);
  EXPECT_LE(ranks[0].second, ranks[3].second);
  EXPECT_EQ(b.patch(m.patch_of(2)).anchor(), (Coord{1, 1}));
}

TEST(EdgeAware, ZeroDemandFollowsPatchOrder) {
  const Board b = builtin_layout(LayoutStyle::standard, 4);
  const QubitMap m = edge_aware_map(build_pdag(prog(4, {"M ZZZZ"})), b);
  const auto ranks = assigned_ranks(m, b);
  EXPECT_TRUE(std::is_sorted(ranks.begin(), ranks.end()));
}

TEST(EdgeAware, RankPairingMatchesOracle) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    const Board b = design_layout(n, 4, 4, {0.1 * static_cast<double>(rng() % 5)}).board;
    PbcProgram p = testing::random_rotations(rng, n, 1 + rng() % 15, {1, -1});
    const PDag dag = build_pdag(p);
    const QubitMap m = edge_aware_map(dag, b);
    expect_bijection(m, b);
    const auto demand = rotation_demand(dag);
    const auto ranks = assigned_ranks(m, b);
    // Higher demand never gets a strictly worse (class, distance) rank.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (demand[i] > demand[j]) {
          EXPECT_LE(ranks[i], ranks[j]);
        }
  }
}

TEST(EdgeAware, InvariantUnderRelabelingOfEquivalentPatches) {
  const Board b = builtin_layout(LayoutStyle::sparse, 9);
  // Relabel patches by reversing ids.
  Board r(b.rows(), b.cols());
  r.place_ancilla(*b.ancilla());
  r.place_magic(*b.magic());
  for (const auto& [id, p] : b.patches()) r.add_patch(8 - id, p.anchor(), p.orientation);
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const PDag dag = build_pdag(testing::random_rotations(rng, 9, 12, {1, -1}));
    EXPECT_EQ(assigned_ranks(edge_aware_map(dag, b), b), assigned_ranks(edge_aware_map(dag, r), r));
  }
}

TEST(Greedy, JointOperatorUsesTheClosestPatches) {
  const Board b = parse_layout_text("A . . . .\n. Q0h Q1h . Q2h\n. . . . M\n");
  const QubitMap m = greedy_map(build_pdag(prog(2, {"pi/8 ZZ", "M ZZ"})), b);
  expect_bijection(m, b);
  EXPECT_EQ(manhattan(b.patch(m.patch_of(0)).anchor(), b.patch(m.patch_of(1)).anchor()), 1);
}

TEST(Greedy, DisjointPairsAreColocated) {
  const Board b = builtin_layout(LayoutStyle::standard, 4);
  const PbcProgram p = prog(4, {"pi/8 ZIZI", "pi/8 XIXI", "pi/8 ZIZI", "pi/8 IZIZ", "pi/8 IXIX", "M ZZZZ"});
  const QubitMap m = greedy_map(build_pdag(p), b);
  expect_bijection(m, b);
  auto dist = [&](std::size_t a, std::size_t c) {
    return manhattan(b.patch(m.patch_of(a)).anchor(), b.patch(m.patch_of(c)).anchor());
  };
  EXPECT_EQ(dist(0, 2), 1);
  EXPECT_EQ(dist(1, 3), 1);
}

TEST(Greedy, SingleQubitNearestAncilla) {
  const Board b = builtin_layout(LayoutStyle::standard, 6);
  const QubitMap m = greedy_map(build_pdag(prog(1, {"pi/8 Z"})), b);
  int best = 1 << 20;
  for (const auto& [id, p] : b.patches()) best = std::min(best, manhattan(p.anchor(), *b.ancilla()));
  EXPECT_EQ(manhattan(b.patch(m.patch_of(0)).anchor(), *b.ancilla()), best);
}

TEST(Greedy, DeterministicBijection) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const Board b = builtin_layout(trial % 2 ? LayoutStyle::compact : LayoutStyle::standard, n + rng() % 3);
    const PDag dag = build_pdag(testing::random_rotations(rng, n, 10, {1, -1, 2}));
    const QubitMap a = greedy_map(dag, b);
    expect_bijection(a, b);
    EXPECT_EQ(a, greedy_map(dag, b));
    expect_bijection(identity_map(n, b), b);
    expect_bijection(make_map(MappingKind::edge_aware, dag, b), b);
  }
}

TEST(Mapping, CapacityError) {
  const Board b = builtin_layout(LayoutStyle::compact, 2);
  const PDag dag = build_pdag(prog(3, {"M ZZZ"}));
  EXPECT_THROW(edge_aware_map(dag, b), CapacityError);
  EXPECT_THROW(greedy_map(dag, b), CapacityError);
  EXPECT_THROW(identity_map(3, b), CapacityError);
}

TEST(Mapping, CheckMapRejectsNonBijections) {
  const Board b = builtin_layout(LayoutStyle::compact, 3);
  EXPECT_NO_THROW(check_map(QubitMap({2, 0, 1}), b));
  EXPECT_THROW(check_map(QubitMap({0, 0, 1}), b), ValidationError);
  EXPECT_THROW(check_map(QubitMap({0, 1, 7}), b), ValidationError);
}

TEST(Mapping, YAccessFollowsExposure) {
  const Board b = parse_layout_text("A . Q1h .\n. . . M\nQ0v # # #\n");
  const YAccess acc = y_access(b, QubitMap({1, 0}));
  EXPECT_TRUE(acc.y_capable[0]);
  EXPECT_FALSE(acc.y_capable[1]);
}

}  // namespace
}  // namespace latsurg
