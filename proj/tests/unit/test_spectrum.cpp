#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "crw/errors.hpp"
#include "crw/params.hpp"
#include "crw/spectrum.hpp"
#include "reference.hpp"

namespace crw {
namespace {

constexpr double kPi = std::numbers::pi;

bool in_strip(Complex z, int n) {
  return z.real() > n * kPi && z.real() < (n + 0.5) * kPi && z.imag() > 0.0;
}

TEST(ModelParams, RejectsNonPositiveOrNonFiniteS) {
  EXPECT_THROW(ModelParams(0.0), std::invalid_argument);
  EXPECT_THROW(ModelParams(-1.0), std::invalid_argument);
  EXPECT_THROW(ModelParams(std::nan("")), std::invalid_argument);
  EXPECT_THROW(ModelParams(std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_DOUBLE_EQ(ModelParams(0.3).S(), 0.3);
  EXPECT_FALSE(ModelParams(0.3).dimensional().has_value());
}

TEST(ModelParams, DimensionalTripleMapsToS) {
  const auto p = ModelParams::from_dimensional(2.0, 4.0, 0.5);
  EXPECT_EQ(p.S(), 1.0);
  ASSERT_TRUE(p.dimensional().has_value());
  EXPECT_EQ(p.dimensional()->gamma, 2.0);
  EXPECT_EQ(p.dimensional()->mu, 4.0);
  EXPECT_EQ(p.dimensional()->length, 0.5);
  const auto q = ModelParams::from_dimensional(3.0, 7.0, 1.3);
  EXPECT_NEAR(q.S(), 3.0 / (7.0 * 1.3), 1e-12 * q.S());
  EXPECT_THROW(ModelParams::from_dimensional(0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(ModelParams::from_dimensional(1.0, -1.0, 1.0), std::invalid_argument);
}

TEST(Parity, FollowsIndexParity) {
  EXPECT_EQ(parity_of_index(0), Parity::Symmetric);
  EXPECT_EQ(parity_of_index(1), Parity::Antisymmetric);
  EXPECT_EQ(parity_of_index(6), Parity::Symmetric);
  EXPECT_EQ(parity_sign(Parity::Symmetric), 1.0);
  EXPECT_EQ(parity_sign(Parity::Antisymmetric), -1.0);
}

TEST(Hsqrt, BranchHasArgumentInHalfOpenRightHalfPlane) {
  EXPECT_EQ(hsqrt(Complex{0.0, 0.0}), Complex(0.0, 0.0));
  EXPECT_EQ(hsqrt(Complex{4.0, 0.0}), Complex(2.0, 0.0));
  EXPECT_EQ(hsqrt(Complex{-4.0, 0.0}), Complex(0.0, 2.0));
  EXPECT_EQ(hsqrt(Complex{-4.0, -0.0}), Complex(0.0, 2.0));
  for (double a = -3.0; a <= 3.0; a += 0.37) {
    for (double b = -3.0; b <= 3.0; b += 0.41) {
      const Complex z{a, b};
      const Complex r = hsqrt(z);
      EXPECT_NEAR(std::abs(r * r - z), 0.0, 1e-14 * (1.0 + std::abs(z)));
      EXPECT_GT(std::arg(r), -kPi / 2);
      EXPECT_LE(std::arg(r), kPi / 2);
    }
  }
}

TEST(CriticalS, MatchesFrozenHighPrecisionValues) {
  for (const auto& f : testref::frozen_critical()) {
    const CriticalS c = critical_s(f.m);
    EXPECT_EQ(c.m, f.m);
    EXPECT_NEAR(c.nu_m, f.nu, 4e-16 * f.nu) << "m=" << f.m;
    EXPECT_NEAR(c.S_m, f.S, 1e-13) << "m=" << f.m;
  }
}

TEST(CriticalS, FirstValueIsSCrit) {
  const CriticalS c = critical_s(1);
  EXPECT_NEAR(c.S_m, 0.2172, 5e-4);
  const double oracle = static_cast<double>(testref::tan_fixed_point(1));
  EXPECT_NEAR(c.nu_m, oracle, 1e-14);
  EXPECT_NEAR(c.S_m, std::abs(std::cos(oracle)), 1e-10);
}

TEST(CriticalS, SequenceIsBracketedDecreasingAndAccurate) {
  double previous = 1.0;
  for (int m = 1; m <= 60; ++m) {
    const CriticalS c = critical_s(m);
    EXPECT_GT(c.nu_m, m * kPi);
    EXPECT_LT(c.nu_m, (m + 0.5) * kPi);
    EXPECT_LT(critical_residual(c.nu_m), 1e-12) << "m=" << m;
    EXPECT_NEAR(c.S_m, std::abs(std::cos(c.nu_m)), 1e-15);
    EXPECT_NEAR(c.nu_m, static_cast<double>(testref::tan_fixed_point(m)), 4e-16 * c.nu_m) << "m=" << m;
    EXPECT_LT(c.S_m, previous);
    previous = c.S_m;
  }
  EXPECT_LT(critical_s(1000).S_m, 1e-3);
  EXPECT_THROW(critical_s(0), std::invalid_argument);
}

TEST(NuZero, SpecialValues) {
  const NuZero at_two_over_pi = nu_zero(ModelParams(2.0 / kPi));
  ASSERT_TRUE(std::holds_alternative<NuRoot>(at_two_over_pi));
  EXPECT_NEAR(std::get<NuRoot>(at_two_over_pi).value.real(), kPi / 2, 1e-14);

  EXPECT_TRUE(std::holds_alternative<DoubleRootAtSOne>(nu_zero(ModelParams(1.0))));

  const auto half = std::get<NuRoot>(nu_zero(ModelParams(0.5)));
  EXPECT_TRUE(half.is_real);
  EXPECT_EQ(half.n, 0);
  EXPECT_EQ(half.parity, Parity::Symmetric);
  EXPECT_NEAR(half.value.real(), testref::kNuZeroHalf, 1e-15);
  EXPECT_LT(characteristic_residual(ModelParams(0.5), half), 1e-12);

  const auto two = std::get<NuRoot>(nu_zero(ModelParams(2.0)));
  EXPECT_FALSE(two.is_real);
  EXPECT_EQ(two.value.real(), 0.0);
  EXPECT_NEAR(two.value.imag(), testref::kYZeroTwo, 1e-14);
}

TEST(NuZero, StaysAccurateNextToSOne) {
  for (double delta : {1e-9, 1e-6, 1e-3}) {
    const auto below = std::get<NuRoot>(nu_zero(ModelParams(1.0 - delta)));
    const auto above = std::get<NuRoot>(nu_zero(ModelParams(1.0 + delta)));
    EXPECT_TRUE(below.is_real);
    EXPECT_FALSE(above.is_real);
    // sin x / x = 1 - x^2/6 + ..., so x ~ sqrt(6 delta) on both sides.
    EXPECT_NEAR(below.value.real(), std::sqrt(6.0 * delta), 0.5 * delta + 1e-12);
    EXPECT_NEAR(above.value.imag(), std::sqrt(6.0 * delta), 0.5 * delta + 1e-12);
    EXPECT_LT(characteristic_residual(ModelParams(1.0 - delta), below), 1e-15);
  }
}

TEST(NuRoot, RealRegimeAtSmallS) {
  const ModelParams p(0.05);
  const auto r11 = nu_root(p, 1, 1);
  const auto r12 = nu_root(p, 1, 2);
  const auto r21 = nu_root(p, 2, 1);
  const auto r22 = nu_root(p, 2, 2);
  for (const auto& r : {r11, r12, r21, r22}) {
    EXPECT_TRUE(r.is_real);
    EXPECT_EQ(r.value.imag(), 0.0);
    EXPECT_GT(r.value.real(), r.n * kPi);
    EXPECT_LT(r.value.real(), (r.n + 1) * kPi);
    EXPECT_LE(characteristic_residual(p, r), 1e-12 * (1.0 + std::abs(r.value)));
  }
  EXPECT_NEAR(r11.value.real(), testref::kNu11Twentieth, 1e-14);
  EXPECT_NEAR(r12.value.real(), testref::kNu12Twentieth, 1e-14);
  EXPECT_NEAR(r21.value.real(), testref::kNu21Twentieth, 1e-14);
  EXPECT_NEAR(r22.value.real(), testref::kNu22Twentieth, 1e-14);
  EXPECT_LT(r11.value.real(), r12.value.real());
  EXPECT_EQ(r11.parity, Parity::Antisymmetric);
  EXPECT_EQ(r21.parity, Parity::Symmetric);

  // Independent bisection on the same sub-brackets.
  const double e1 = critical_s(1).nu_m;
  EXPECT_NEAR(r11.value.real(), static_cast<double>(testref::sin_root(0.05, -1, kPi + 1e-9, e1)), 1e-14);
  EXPECT_NEAR(r12.value.real(), static_cast<double>(testref::sin_root(0.05, -1, e1, 2 * kPi - 1e-9)), 1e-14);
}

TEST(NuRoot, MatchesFrozenComplexRoots) {
  for (const auto& f : testref::frozen_complex_roots()) {
    const ModelParams p(f.S);
    const auto r1 = nu_root(p, f.n, 1);
    const auto r2 = nu_root(p, f.n, 2);
    EXPECT_FALSE(r1.is_real);
    EXPECT_NEAR(std::abs(r1.value - f.nu), 0.0, 2e-15 * std::abs(f.nu)) << "S=" << f.S << " n=" << f.n;
    EXPECT_EQ(r2.value, std::conj(r1.value));
    EXPECT_TRUE(in_strip(r1.value, f.n));
    const EigenPair e = lambda_from_nu(p, r1);
    EXPECT_NEAR(std::abs(e.lambda - f.lambda), 0.0, 1e-13 * std::abs(f.lambda)) << "S=" << f.S << " n=" << f.n;
  }
}

TEST(NuRoot, AsymptoticSeedIsCloseAtLargeN) {
  const ModelParams p(0.8);
  const Complex seed = asymptotic_nu(p, 50, 1);
  EXPECT_LT(std::abs(nu_root(p, 50, 1).value - seed), 0.05);
}

TEST(NuRoot, RejectsBadIndices) {
  const ModelParams p(0.8);
  EXPECT_THROW(nu_root(p, 0, 1), std::invalid_argument);
  EXPECT_THROW(nu_root(p, 1, 0), std::invalid_argument);
  EXPECT_THROW(nu_root(p, 1, 3), std::invalid_argument);
}

TEST(NuRoot, DoubleRootAtCriticalS) {
  for (int m : {1, 2, 5}) {
    const CriticalS c = critical_s(m);
    const ModelParams p(c.S_m);
    const auto r1 = nu_root(p, m, 1);
    const auto r2 = nu_root(p, m, 2);
    EXPECT_TRUE(r1.is_real);
    EXPECT_EQ(r1.value, Complex(c.nu_m, 0.0));
    EXPECT_EQ(r2.value, r1.value);
    const EigenPair e = lambda_from_nu(p, r1);
    EXPECT_TRUE(e.sqrt_form_applies);
    EXPECT_LE(e.sqrt_form_gap, 1e-9);
  }
}

TEST(NuRoot, ContinuousThroughTheCollision) {
  const CriticalS c = critical_s(1);
  for (double delta : {1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-3}) {
    const ModelParams below(c.S_m - delta);
    const ModelParams above(c.S_m + delta);
    const auto lo1 = nu_root(below, 1, 1);
    const auto lo2 = nu_root(below, 1, 2);
    const auto hi1 = nu_root(above, 1, 1);
    // Quadratic model: distance to e_1 ~ sqrt(2 delta / S_1).
    const double d = std::sqrt(2.0 * delta / c.S_m);
    EXPECT_TRUE(lo1.is_real) << delta;
    EXPECT_TRUE(lo2.is_real) << delta;
    EXPECT_LT(lo1.value.real(), c.nu_m);
    EXPECT_GT(lo2.value.real(), c.nu_m);
    EXPECT_FALSE(hi1.is_real) << delta;
    EXPECT_GT(hi1.value.imag(), 0.0);
    EXPECT_NEAR(std::abs(lo1.value - c.nu_m), d, 0.2 * d) << delta;
    EXPECT_NEAR(std::abs(hi1.value - c.nu_m), d, 0.2 * d) << delta;
    EXPECT_LE(characteristic_residual(below, lo1), 1e-12 * (1.0 + c.nu_m));
    EXPECT_LE(characteristic_residual(above, hi1), 1e-12 * (1.0 + c.nu_m));
  }
}

TEST(LambdaFromNu, GoldenValues) {
  EXPECT_NEAR(dominant(ModelParams(1.0)).lambda.real(), -2.0, 1e-15);
  EXPECT_TRUE(dominant(ModelParams(1.0)).is_double_root_at_s_one());
  EXPECT_NEAR(dominant(ModelParams(2.0 / kPi)).lambda.real(), -1.0, 1e-15);
  EXPECT_NEAR(dominant(ModelParams(0.5)).lambda.real(), testref::kLambdaZeroHalf, 1e-15);
  EXPECT_NEAR(dominant(ModelParams(0.8)).lambda.real(), testref::kLambdaZeroPointEight, 1e-15);
  EXPECT_NEAR(dominant(ModelParams(2.0)).lambda.real(), testref::kLambdaZeroTwo, 1e-13);
  EXPECT_NEAR(dominant(ModelParams(5.0)).lambda.real(), testref::kLambdaZeroFive, 1e-13);
  EXPECT_NEAR(dominant(ModelParams(0.05)).lambda.real(), testref::kLambdaZeroTwentieth, 1e-16);
  EXPECT_EQ(dominant(ModelParams(2.0)).lambda.imag(), 0.0);
}

TEST(LambdaFromNu, ConjugateRootsGiveConjugateEigenvalues) {
  const ModelParams p(0.8);
  for (int n = 1; n <= 5; ++n) {
    const EigenPair a = lambda_from_nu(p, nu_root(p, n, 1));
    const EigenPair b = lambda_from_nu(p, nu_root(p, n, 2));
    EXPECT_EQ(b.lambda, std::conj(a.lambda));
    EXPECT_GT(a.lambda.imag(), 0.0);
    EXPECT_EQ(a.n, n);
    EXPECT_EQ(b.j, 2);
  }
}

TEST(LambdaFromNu, SquareRootFormAgreesForNonRealRoots) {
  for (double S : testref::s_grid()) {
    const ModelParams p(S);
    for (int n = 1; n <= 10; ++n) {
      const EigenPair e = lambda_from_nu(p, nu_root(p, n, 1));
      if (!e.sqrt_form_applies) continue;
      EXPECT_LE(e.sqrt_form_gap, 1e-9 * (1.0 + std::abs(e.lambda))) << "S=" << S << " n=" << n;
    }
  }
}

TEST(SpectrumSlice, ShapeAndOrdering) {
  const auto one = spectrum_slice(ModelParams(1.0), 0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].lambda, Complex(-2.0, 0.0));

  const auto s = spectrum_slice(ModelParams(0.8), 3);
  ASSERT_EQ(s.size(), 7u);
  EXPECT_EQ(s[0].n, 0);
  for (std::size_t k = 1; k < s.size(); ++k) {
    EXPECT_EQ(s[k].n, static_cast<int>((k + 1) / 2));
    EXPECT_EQ(s[k].j, k % 2 == 1 ? 1 : 2);
    EXPECT_LT(s[k].lambda.real(), s[0].lambda.real());
  }
  EXPECT_THROW(spectrum_slice(ModelParams(0.8), -1), std::invalid_argument);
}

TEST(Dominant, LimitsInS) {
  EXPECT_GT(dominant(ModelParams(1e-3)).lambda.real(), -1e-4);
  EXPECT_LT(dominant(ModelParams(50.0)).lambda.real(), -100.0);
}

TEST(Asymptotics, FormulaAndConjugation) {
  const ModelParams p(0.8);
  const double a = 50.5 * kPi;
  const double l = std::log(2 * 0.8 * a);
  EXPECT_NEAR(std::abs(asymptotic_nu(p, 50, 1) - Complex(a, l)), 0.0, 1e-13);
  EXPECT_EQ(asymptotic_nu(p, 50, 2), std::conj(asymptotic_nu(p, 50, 1)));
  EXPECT_NEAR(std::abs(asymptotic_lambda(p, 50, 2) - Complex(-1 - 0.8 * l, -0.8 * a)), 0.0, 1e-12);
  EXPECT_EQ(asymptotic_lambda(p, 7, 2), std::conj(asymptotic_lambda(p, 7, 1)));
}

TEST(Asymptotics, GapShrinksWithN) {
  const ModelParams p(0.8);
  auto nu_gap = [&](int n) { return std::abs(nu_root(p, n, 1).value - asymptotic_nu(p, n, 1)); };
  auto lambda_gap = [&](int n) {
    return std::abs(lambda_from_nu(p, nu_root(p, n, 1)).lambda - asymptotic_lambda(p, n, 1));
  };
  double previous_nu = nu_gap(5);
  double previous_lambda = lambda_gap(5);
  for (int n : {10, 20, 50, 100, 200, 400}) {
    EXPECT_LT(nu_gap(n), previous_nu) << n;
    EXPECT_LT(lambda_gap(n), previous_lambda) << n;
    previous_nu = nu_gap(n);
    previous_lambda = lambda_gap(n);
  }
  EXPECT_LT(nu_gap(200), 0.02);
  EXPECT_LT(lambda_gap(200), 0.02);
}

// Properties over 40 log-spaced S in [0.01, 5] and n <= 30.
class SpectrumProperties : public ::testing::TestWithParam<double> {};

TEST_P(SpectrumProperties, RootsSatisfyEveryInvariant) {
  const double S = GetParam();
  const ModelParams p(S);
  const EigenPair zero = dominant(p);
  const double lambda0 = zero.lambda.real();
  EXPECT_EQ(zero.lambda.imag(), 0.0);
  EXPECT_NEAR(lambda0, testref::dominant_lambda(S), 1e-13 * (1.0 + std::abs(lambda0)));
  if (S <= 1.0) {
    EXPECT_GE(lambda0, -1.0 - S);
    EXPECT_LT(lambda0, 0.0);
  }

  for (int n = 1; n <= 30; ++n) {
    const double S_n = critical_s(n).S_m;
    const auto r1 = nu_root(p, n, 1);
    const auto r2 = nu_root(p, n, 2);
    for (const auto& r : {r1, r2}) {
      EXPECT_LE(characteristic_residual(p, r), 1e-12 * (1.0 + std::abs(r.value))) << "S=" << S << " n=" << n;
      EXPECT_EQ(r.parity, parity_of_index(n));
      EXPECT_NE(r.value, Complex{});
    }
    EXPECT_EQ(r1.is_real, S <= S_n) << "S=" << S << " n=" << n;
    if (r1.is_real) {
      EXPECT_GT(r1.value.real(), n * kPi);
      EXPECT_LT(r2.value.real(), (n + 1) * kPi);
      EXPECT_LT(r1.value.real(), r2.value.real());
    } else {
      EXPECT_TRUE(in_strip(r1.value, n)) << "S=" << S << " n=" << n << " nu=" << r1.value;
      EXPECT_EQ(r2.value, std::conj(r1.value));
    }
    const EigenPair e1 = lambda_from_nu(p, r1);
    const EigenPair e2 = lambda_from_nu(p, r2);
    for (const auto& e : {e1, e2}) {
      EXPECT_LT(e.lambda.real(), lambda0) << "S=" << S << " n=" << n;
      if (!e.is_real()) EXPECT_LT(e.lambda.real(), -1.0 - S) << "S=" << S << " n=" << n;
    }
    if (!r1.is_real) {
      EXPECT_GT(e1.lambda.imag(), 0.0);
      EXPECT_EQ(e2.lambda, std::conj(e1.lambda));
    } else {
      EXPECT_EQ(e1.lambda.imag(), 0.0);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(LogGrid, SpectrumProperties, ::testing::ValuesIn(testref::s_grid()));

TEST(SpectrumProperties, DominantIsDecreasingInS) {
  double previous = 0.0;
  for (double S : testref::s_grid()) {
    const double l = dominant(ModelParams(S)).lambda.real();
    EXPECT_LT(l, previous) << S;
    previous = l;
  }
}

TEST(SpectrumProperties, CountingBetweenCriticalValues) {
  // For S in (S_{m+1}, S_m] exactly the strips n <= m carry real roots.
  for (int m = 1; m <= 12; ++m) {
    const double hi = critical_s(m).S_m;
    const double lo = critical_s(m + 1).S_m;
    for (double t : {0.001, 0.5, 0.999}) {
      const ModelParams p(lo + t * (hi - lo));
      for (int n = 1; n <= m + 3; ++n) {
        EXPECT_EQ(nu_root(p, n, 1).is_real, n <= m) << "m=" << m << " n=" << n << " t=" << t;
      }
    }
  }
}

}  // namespace
}  // namespace crw
