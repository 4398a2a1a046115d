#include <gtest/gtest.h>

#include "sicframe/sicsearch.hpp"

using namespace sicframe;

namespace {

SearchConfig config(int dim, SpaceLabel space = SpaceLabel::Full, SearchMode mode = SearchMode::Minimize) {
  SearchConfig c;
  c.dim = dim;
  c.space = space;
  c.mode = mode;
  return c;
}

}  // namespace

TEST(VerifySic, Examples) {
  CVector sic3(3);
  sic3 << 0.0, 1.0, -1.0;
  sic3 /= std::sqrt(2.0);
  const auto ok = verify_sic(sic3, 1e-12);
  EXPECT_TRUE(ok.is_sic);
  EXPECT_LE(ok.max_deviation, 1e-12);

  const auto bad = verify_sic(basis_vector(5, 0), 1e-6);
  EXPECT_FALSE(bad.is_sic);
  EXPECT_NEAR(bad.max_deviation, 5.0 / 6.0, 1e-15);

  EXPECT_THROW(verify_sic(CVector::Ones(4), 1e-6), NormError);
}

TEST(VerifySic, AgreesWithPotentialOnRandomVectors) {
  // f_H = 0 exactly when every overlap equals 1/(N+1); away from SICs both
  // criteria are positive.
  RngStream rng(51);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 20; ++k) {
      const CVector psi = sample_fs(n, rng);
      EXPECT_GT(verify_sic(psi, 1e-6).max_deviation, 1e-6);
      EXPECT_GT(f_H_fast(psi), 1e-10);
    }
  }
}

TEST(Search, FindsSicsInSmallDimensions) {
  for (int n = 2; n <= 5; ++n) {
    const auto res = search(config(n));
    EXPECT_TRUE(res.converged) << n;
    EXPECT_LE(res.best_value, 1e-10) << n;
    EXPECT_LE(res.restarts_used, 50);
    EXPECT_LE(verify_sic(res.best_vector, 1e-6).max_deviation, 1e-6) << n;
    EXPECT_TRUE(is_unit(res.best_vector));
  }
}

TEST(Search, ReachesLargerDimensions) {
  for (int n : {6, 7}) {
    const auto res = search(config(n));
    EXPECT_LE(res.best_value, 1e-8) << n;
    EXPECT_LE(verify_sic(res.best_vector, 1e-6).max_deviation, 1e-6) << n;
  }
}

TEST(Search, RecoversThreeDimensionalMinusRay) {
  const auto res = search(config(3, SpaceLabel::HMinus));
  CVector expected(3);
  expected << 0.0, 1.0, -1.0;
  expected /= std::sqrt(2.0);
  EXPECT_NEAR(std::abs(inner(expected, res.best_vector)), 1.0, 1e-14);
  EXPECT_LE(std::abs(res.best_value), 1e-12);
}

TEST(Search, FindsZaunerFiducialInSevenDimensions) {
  const auto res = search(config(7, SpaceLabel::Zauner1));
  EXPECT_LE(res.best_value, 1e-8);
  const auto u = zauner7_operator();
  EXPECT_LE((u.matrix * res.best_vector - res.best_vector).norm(), 1e-12);
}

TEST(Search, MaximumInSevenDimensions) {
  auto c = config(7, SpaceLabel::Full, SearchMode::Maximize);
  c.restarts = 16;
  const auto res = search(c);
  EXPECT_NEAR(res.best_value, 128.625, 0.01);
  EXPECT_TRUE(res.converged);
  EXPECT_EQ(res.restarts_used, 16);
}

TEST(Search, MinusSpaceExtremaInSevenDimensions) {
  auto c = config(7, SpaceLabel::HMinus);
  c.restarts = 16;
  EXPECT_NEAR(search(c).best_value, 4.764, 0.05);
  c.mode = SearchMode::Maximize;
  EXPECT_NEAR(search(c).best_value, 42.88, 0.05);
}

TEST(Search, DeterministicAcrossRunsAndThreads) {
  auto c = config(5);
  c.seed = 123;
  const auto a = search(c, 1);
  const auto b = search(c, 1);
  const auto d = search(c, 4);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_vector, b.best_vector);
  EXPECT_EQ(a.best_vector, d.best_vector);
  EXPECT_EQ(a.iterations, d.iterations);
  c.seed = 124;
  EXPECT_NE(search(c).best_vector, a.best_vector);
}

TEST(Search, HistoryCoversEveryRestart) {
  auto c = config(4, SpaceLabel::Full, SearchMode::Maximize);
  c.restarts = 11;
  const auto res = search(c);
  ASSERT_EQ(res.history.size(), 11u);
  for (std::size_t k = 0; k < res.history.size(); ++k) {
    EXPECT_EQ(res.history[k].restart, static_cast<int>(k));
    EXPECT_LE(res.history[k].value, res.best_value + 1e-9);
  }
}

TEST(Descend, ObjectiveNeverIncreases) {
  const detail::SearchObjective obj(6, std::nullopt, 1.0);
  RngStream rng(52);
  const CVector x0 = sample_fs(6, rng);
  double prev = obj.value(x0);
  for (int iters = 1; iters <= 40; ++iters) {
    auto c = config(6);
    c.max_iters = iters;
    const auto r = detail::descend(obj, x0, c, 0.0);
    EXPECT_LE(r.value, prev + 1e-12) << iters;
    prev = r.value;
  }
}

TEST(Search, ValidatesConfig) {
  auto c = config(5);
  c.restarts = 0;
  EXPECT_THROW(search(c), Error);
  c = config(5);
  c.tol_value = 0.0;
  EXPECT_THROW(search(c), Error);
  EXPECT_THROW(search(config(1)), UnsupportedDimensionError);
  EXPECT_THROW(search(config(4, SpaceLabel::HPlus)), UnsupportedSubspaceError);
}

TEST(VerifySic, BoundsThePotentialBothWays) {
  RngStream rng(53);
  for (int n = 2; n <= 6; ++n) {
    const CVector fid = search(config(n)).best_vector;
    const double bound = n * n * (n * n - 1) / 2.0;
    for (double eps : {0.0, 1e-6, 1e-4, 1e-2}) {
      CVector psi = fid + eps * sample_fs(n, rng);
      psi /= psi.norm();
      const double dev = verify_sic(psi, 1.0).max_deviation;
      const double fh = f_H_direct(HWGroup(n), psi);
      EXPECT_LE(fh, bound * dev * dev * (1 + 1e-9) + 1e-14) << n << " " << eps;
      EXPECT_LE(dev * dev, fh * (1 + 1e-9) + 1e-14) << n << " " << eps;
    }
  }
}
