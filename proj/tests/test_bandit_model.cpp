#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "gittins/bandit_model.hpp"
#include "test_support.hpp"

namespace gittins {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("gittins_model_" + name);
}

TEST(ValidateInstance, AcceptsSingleAbsorbingState) {
  EXPECT_NO_THROW(testing::single_state());
}

TEST(ValidateInstance, AcceptsStochasticMatrix) {
  EXPECT_NO_THROW(testing::two_state());
}

TEST(ValidateInstance, RejectsRowThatDoesNotSumToOne) {
  BanditInstance raw;
  raw.P = Matrix(2, 2, 0.5);
  raw.P(0, 0) = 0.6;
  raw.R = {1.0, 0.0};
  raw.beta = 0.5;
  try {
    validate_instance(raw);
    FAIL() << "expected NonStochasticRow";
  } catch (const NonStochasticRow& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_NEAR(e.deviation(), 0.1, 1e-12);
  }
}

TEST(ValidateInstance, DoesNotRenormalize) {
  BanditInstance raw = testing::two_state();
  raw.P(1, 0) = 0.5 + 5e-10;  // inside the 1e-9 tolerance
  const BanditInstance ok = validate_instance(raw);
  EXPECT_EQ(ok.P(1, 0), 0.5 + 5e-10);
}

TEST(ValidateInstance, RejectsNegativeProbability) {
  BanditInstance raw;
  raw.P = Matrix(2, 2);
  raw.P(0, 0) = 1.2;
  raw.P(0, 1) = -0.2;
  raw.P(1, 1) = 1.0;
  raw.R = {0.0, 0.0};
  raw.beta = 0.5;
  try {
    validate_instance(raw);
    FAIL() << "expected NegativeProbability";
  } catch (const NegativeProbability& e) {
    EXPECT_EQ(e.i(), 1u);
    EXPECT_EQ(e.j(), 2u);
  }
}

TEST(ValidateInstance, RejectsDiscountOutsideUnitInterval) {
  for (double beta : {0.0, -0.5, 1.0000001}) {
    BanditInstance raw = testing::two_state();
    raw.beta = beta;
    EXPECT_THROW(validate_instance(raw), BadDiscount) << beta;
  }
  BanditInstance undiscounted = testing::two_state();
  undiscounted.beta = 1.0;
  EXPECT_NO_THROW(validate_instance(undiscounted));
}

TEST(ValidateInstance, RejectsDimensionMismatch) {
  BanditInstance raw = testing::two_state();
  raw.R.push_back(3.0);
  EXPECT_THROW(validate_instance(raw), DimensionMismatch);

  StoppingInstance stop{testing::two_state(), {1.0}, 0.0};
  EXPECT_THROW(validate_instance(stop), DimensionMismatch);
}

TEST(RandomInstance, DeterministicForFixedSeed) {
  const RandomInstanceOptions opts{5, 1.0, 0.0, 1.0, 0.9, 42};
  const BanditInstance a = random_instance(opts);
  const BanditInstance b = random_instance(opts);
  EXPECT_EQ(a.P, b.P);
  EXPECT_EQ(a.R, b.R);
  EXPECT_EQ(a.beta, b.beta);
}

TEST(RandomInstance, DifferentSeedsDiffer) {
  const BanditInstance a = random_instance({5, 1.0, 0.0, 1.0, 0.9, 1});
  const BanditInstance b = random_instance({5, 1.0, 0.0, 1.0, 0.9, 2});
  EXPECT_FALSE(a.P == b.P && a.R == b.R);
}

TEST(RandomInstance, SparseLargeInstanceIsValid) {
  const BanditInstance inst = random_instance({200, 0.1, 0.0, 1.0, 0.9, 1});
  EXPECT_NO_THROW(validate_instance(inst));
  for (std::size_t i = 0; i < inst.n(); ++i) {
    std::size_t nonzero = 0;
    for (double p : inst.P.row(i)) nonzero += p > 0.0;
    EXPECT_EQ(nonzero, 20u);
  }
}

TEST(RandomInstance, DegenerateRewardRange) {
  const BanditInstance inst = random_instance({3, 1.0, 5.0, 5.0, 0.5, 7});
  for (double r : inst.R) EXPECT_EQ(r, 5.0);
}

TEST(RandomInstance, TinyDensityKeepsOneEntryPerRow) {
  const BanditInstance inst = random_instance({10, 0.01, 0.0, 1.0, 0.9, 3});
  for (std::size_t i = 0; i < inst.n(); ++i) {
    std::size_t nonzero = 0;
    for (double p : inst.P.row(i)) nonzero += p > 0.0;
    EXPECT_EQ(nonzero, 1u);
  }
}

TEST(RandomInstance, PropertyInvariantsAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 1 + seed % 17;
    const double density = 0.05 + 0.95 * static_cast<double>(seed % 7) / 6.0;
    const double beta = seed % 5 == 0 ? 1.0 : 0.1 + 0.8 * static_cast<double>(seed % 9) / 8.0;
    const BanditInstance inst = random_instance({n, density, -1.0, 2.0, beta, seed});
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (double p : inst.P.row(i)) {
        EXPECT_GE(p, 0.0);
        sum += p;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
      EXPECT_GE(inst.R[i], -1.0);
      EXPECT_LE(inst.R[i], 2.0);
    }
    EXPECT_GT(inst.beta, 0.0);
    EXPECT_LE(inst.beta, 1.0);
  }
}

TEST(InstanceFile, RoundTripIsBitExact) {
  const auto path = temp_file("roundtrip.json");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BanditInstance inst = testing::random_dense(6, 0.37, seed, 0.5);
    save_instance(inst, path);
    const AnyInstance back = load_instance(path);
    ASSERT_TRUE(std::holds_alternative<BanditInstance>(back));
    const auto& b = std::get<BanditInstance>(back);
    EXPECT_EQ(b.P, inst.P);
    EXPECT_EQ(b.R, inst.R);
    EXPECT_EQ(b.beta, inst.beta);
  }
  fs::remove(path);
}

TEST(InstanceFile, TwoStateRoundTrip) {
  const auto path = temp_file("two_state.json");
  save_instance(testing::two_state(), path);
  const BanditInstance b = load_bandit(path);
  EXPECT_EQ(b.P, testing::two_state().P);
  EXPECT_EQ(b.R, testing::two_state().R);
  fs::remove(path);
}

TEST(InstanceFile, MissingTransitionMatrixNamesField) {
  try {
    parse_instance(R"({"n": 2, "beta": 0.5, "R": [1, 0]})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "P");
  }
}

TEST(InstanceFile, QMarksStoppingInstance) {
  const AnyInstance any = parse_instance(
      R"({"n": 2, "beta": 0.5, "P": [[0.5, 0.5], [0.5, 0.5]], "R": [1, 0], "Q": [2, 4], "nu": 0.25})");
  ASSERT_TRUE(std::holds_alternative<StoppingInstance>(any));
  const auto& s = std::get<StoppingInstance>(any);
  EXPECT_EQ(s.Q, (Vector{2.0, 4.0}));
  EXPECT_EQ(s.nu, 0.25);

  const auto path = temp_file("stop.json");
  save_instance(s, path);
  const StoppingInstance back = load_stopping(path);
  EXPECT_EQ(back.Q, s.Q);
  EXPECT_EQ(back.nu, s.nu);
  fs::remove(path);
}

TEST(InstanceFile, ValidationErrorsSurfaceOnLoad) {
  EXPECT_THROW(parse_instance(R"({"n": 2, "beta": 0.5, "P": [[0.6, 0.5], [0.5, 0.5]], "R": [1, 0]})"),
               NonStochasticRow);
  EXPECT_THROW(parse_instance(R"({"n": 2, "beta": 0.5, "P": [[1, 0]], "R": [1, 0]})"),
               DimensionMismatch);
  EXPECT_THROW(parse_instance(R"({"n": 2, "beta": "x", "P": [[1, 0], [0, 1]], "R": [1, 0]})"),
               ParseError);
  EXPECT_THROW(parse_instance("{not json"), ParseError);
}

}  // namespace
}  // namespace gittins
