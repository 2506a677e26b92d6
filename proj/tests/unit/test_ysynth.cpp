#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "latsurg/errors.hpp"
#include "latsurg/oracle.hpp"
#include "latsurg/pdag.hpp"
#include "latsurg/ysynth.hpp"

namespace latsurg {
namespace {

PbcProgram prog(std::size_t n, std::initializer_list<const char*> ops) {
  PbcProgram p(n);
  for (const char* s : ops) p.push_back(PauliOperator::parse(s));
  return p;
}

using Group = QubitGroup;

bool any_restricted_y(const PbcProgram& p, const YAccess& access) {
  for (const auto& op : p.ops())
    if (!restricted_y_indices(op, access).empty()) return true;
  return false;
}

TEST(YMode, Names) {
  for (YMode m : {YMode::bipartite, YMode::naive, YMode::off}) EXPECT_EQ(parse_y_mode(y_mode_name(m)), m);
  EXPECT_THROW(parse_y_mode("fancy"), ConfigError);
}

TEST(DecomposeY, OddGroupSequenceIsEquivalent) {
  const PauliOperator op = PauliOperator::parse("pi/8 YZYY");
  const YDecomposition d = decompose_y(op, {0, 2, 3}, {});
  EXPECT_EQ(d.b1, (Group{0, 2, 3}));
  EXPECT_TRUE(d.b2.empty());
  EXPECT_EQ(d.left.size(), 1u);
  EXPECT_EQ(d.right.size(), 1u);
  EXPECT_EQ(d.core.word().str().find('Y'), std::string::npos);
  EXPECT_TRUE(equivalent_up_to_phase(program_unitary(PbcProgram(4, d.sequence())), program_unitary(PbcProgram(4, {op}))));
}

TEST(DecomposeY, PartialRewriteKeepsOtherYLetters) {
  const PauliOperator op = PauliOperator::parse("pi/8 YY");
  const YDecomposition d = decompose_y(op, {0}, {});
  EXPECT_EQ(d.core.word().get(1), Letter::Y);
  EXPECT_NE(d.core.word().get(0), Letter::Y);
  EXPECT_TRUE(equivalent_up_to_phase(program_unitary(PbcProgram(2, d.sequence())), program_unitary(PbcProgram(2, {op}))));
}

TEST(DecomposeY, InvariantsOnAllEvenSplits) {
  const PauliOperator op = PauliOperator::parse("-pi/8 YYYY");
  for (const auto& [b1, b2] : std::vector<std::pair<Group, Group>>{{{0}, {1, 2, 3}}, {{1}, {0, 2, 3}}, {{0, 1, 2}, {3}}}) {
    const YDecomposition d = decompose_y(op, b1, b2);
    EXPECT_EQ(d.b1.size() % 2, 1u);
    EXPECT_EQ(d.b2.size() % 2, 1u);
    EXPECT_EQ(d.core.word().str(), "XXXX");
    EXPECT_EQ(d.core.eighths() * d.core.eighths(), 1);
    EXPECT_TRUE(equivalent_up_to_phase(program_unitary(PbcProgram(4, d.sequence())), program_unitary(PbcProgram(4, {op}))));
  }
}

TEST(DecomposeY, RejectsEvenGroups) {
  EXPECT_THROW(decompose_y(PauliOperator::parse("pi/8 YY"), {0, 1}, {}), ContractViolation);
}

TEST(ChooseBipartition, FallbackIsLexicographic) {
  const auto [b1, b2] = choose_bipartition({0, 1}, {});
  EXPECT_EQ(b1, (Group{0}));
  EXPECT_EQ(b2, (Group{1}));
}

TEST(ChooseBipartition, PredecessorAbsorbsLoneGroup) {
  BipartitionContext ctx;
  ctx.before.push_back({2});
  const auto [b1, b2] = choose_bipartition({0, 1, 2, 3}, ctx);
  EXPECT_TRUE(b1 == Group{2} || b2 == Group{2});
  EXPECT_GE(absorbed_count(b1, b2, ctx), 1u);
}

TEST(ChooseBipartition, SuccessorAlignment) {
  BipartitionContext ctx;
  ctx.after.push_back({1, 2, 3});
  const auto [b1, b2] = choose_bipartition({0, 1, 2, 3}, ctx);
  EXPECT_TRUE(b1 == (Group{1, 2, 3}) || b2 == (Group{1, 2, 3}));
}

TEST(ChooseBipartition, OddSetIsContractViolation) {
  EXPECT_THROW(choose_bipartition({0, 1, 2}, {}), ContractViolation);
}

TEST(PauliSynthesis, ExactCancellation) { EXPECT_TRUE(pauli_synthesis(prog(1, {"pi/4 Z", "-pi/4 Z"})).empty()); }

TEST(PauliSynthesis, TwoTsMakeS) {
  const PbcProgram r = pauli_synthesis(prog(1, {"pi/8 Z", "pi/8 Z"}));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].str(), "pi/4 Z");
}

TEST(PauliSynthesis, MergesAcrossDisjointOperator) {
  const PbcProgram p = prog(2, {"pi/8 ZI", "pi/8 IX", "pi/8 ZI"});
  const PbcProgram r = pauli_synthesis(p);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].str(), "pi/4 ZI");
  EXPECT_EQ(r[1].str(), "pi/8 IX");
  EXPECT_TRUE(equivalent_up_to_phase(program_unitary(r), program_unitary(p)));
}

TEST(PauliSynthesis, DoesNotMergeAcrossOverlappingOperator) {
  const PbcProgram p = prog(1, {"pi/8 Z", "pi/8 X", "pi/8 Z"});
  EXPECT_EQ(pauli_synthesis(p), p);
}

TEST(PauliSynthesis, QuarterPairBecomesFrameFlip) {
  const PbcProgram p = prog(1, {"pi/4 Z", "pi/4 Z", "pi/8 X", "M X"});
  const PbcProgram r = pauli_synthesis(p);
  for (const auto& op : r.ops()) EXPECT_FALSE(op.is_quarter());
  EXPECT_LT(distribution_distance(outcome_distribution(r), outcome_distribution(p)), 1e-12);
}

TEST(YSynthesize, YFreeProgramOnlySynthesized) {
  const PbcProgram p = prog(2, {"pi/8 ZX", "pi/8 ZX", "M ZZ"});
  EXPECT_EQ(y_synthesize(p, YAccess::none(2)), pauli_synthesis(p));
}

TEST(YSynthesize, UnrestrictedQubitsKeepY) {
  const PbcProgram p = prog(2, {"pi/8 YY"});
  EXPECT_EQ(y_synthesize(p, YAccess::all(2)), p);
}

TEST(YSynthesize, EvenYWordBecomesXCoreWithOddGroups) {
  for (std::size_t n : {2u, 4u}) {
    PbcProgram p(n);
    p.push_back(PauliOperator::rotation(PauliWord::from_string(std::string(n, 'Y')), 1));
    const PbcProgram r = y_synthesize(p, YAccess::none(n));
    ASSERT_EQ(r.size(), 5u);
    EXPECT_EQ(r[2].word().str(), std::string(n, 'X'));
    EXPECT_TRUE(r[2].is_t_like());
    std::size_t covered = 0;
    for (std::size_t i : {0u, 1u}) {
      EXPECT_TRUE(r[i].is_quarter());
      EXPECT_TRUE(r[i].word().is_z_type());
      EXPECT_EQ(r[i].word().weight() % 2, 1u);
      covered += r[i].word().weight();
    }
    EXPECT_EQ(covered, n);
    EXPECT_FALSE(any_restricted_y(r, YAccess::none(n)));
    EXPECT_TRUE(equivalent_up_to_phase(program_unitary(r), program_unitary(p)));
  }
}

TEST(YSynthesize, AdjacentZRotationAbsorbsConjugation) {
  // A Z-type quarter rotation before the Y word cancels one left rotation.
  const PbcProgram p = prog(4, {"pi/4 IIIZ", "pi/8 YYYY", "-pi/4 IIIZ"});
  const YAccess none = YAccess::none(4);
  const PbcProgram smart = y_synthesize(p, none);
  const PbcProgram naive = naive_y_decompose(p, none);
  EXPECT_LT(smart.size(), naive.size());
  EXPECT_TRUE(equivalent_up_to_phase(program_unitary(smart), program_unitary(p)));
  EXPECT_TRUE(equivalent_up_to_phase(program_unitary(naive), program_unitary(p)));
}

TEST(YSynthesize, ConsecutiveYWordsShareConjugations) {
  const PbcProgram p = prog(3, {"pi/8 YYI", "pi/8 YYX"});
  const YAccess none = YAccess::none(3);
  const PbcProgram smart = y_synthesize(p, none);
  const PbcProgram naive = naive_y_decompose(p, none);
  EXPECT_LT(smart.size(), naive.size());
  EXPECT_TRUE(equivalent_up_to_phase(program_unitary(smart), program_unitary(p)));
}

TEST(YSynthesize, ApplyYModeDispatch) {
  const PbcProgram p = prog(2, {"pi/8 YY"});
  const YAccess none = YAccess::none(2);
  EXPECT_EQ(apply_y_mode(p, none, YMode::off), p);
  EXPECT_EQ(apply_y_mode(p, none, YMode::naive), naive_y_decompose(p, none));
  EXPECT_EQ(apply_y_mode(p, none, YMode::bipartite), y_synthesize(p, none));
}

// Random rotation programs on up to four qubits with random Y access.
TEST(YSynthesize, PropertySuite) {
  std::mt19937_64 rng(321);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng() % 4;
    const PbcProgram p = testing::random_rotations(rng, n, 1 + rng() % 10, {1, -1, 2, -2});
    YAccess access = YAccess::none(n);
    for (std::size_t q = 0; q < n; ++q) access.y_capable[q] = rng() % 3 == 0;
    const PbcProgram smart = y_synthesize(p, access);
    const PbcProgram naive = naive_y_decompose(p, access);
    const DenseUnitary u = program_unitary(p);
    ASSERT_TRUE(equivalent_up_to_phase(program_unitary(smart), u)) << "case " << i;
    ASSERT_TRUE(equivalent_up_to_phase(program_unitary(naive), u)) << "case " << i;
    EXPECT_FALSE(any_restricted_y(smart, access));
    EXPECT_FALSE(any_restricted_y(naive, access));
    EXPECT_LE(smart.size(), naive.size()) << "case " << i;
  }
}

TEST(YSynthesize, MeasurementProgramsKeepDistributions) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 4;
    PbcProgram p = testing::random_rotations(rng, n, rng() % 8, {1, -1});
    for (std::size_t q = 0; q < n; ++q) p.push_back(PauliOperator::measurement(testing::random_word(rng, n)));
    const YAccess none = YAccess::none(n);
    const PbcProgram r = y_synthesize(p, none);
    EXPECT_LT(distribution_distance(outcome_distribution(r), outcome_distribution(p)), 1e-9) << "case " << i;
  }
}

}  // namespace
}  // namespace latsurg
