#include "eulercf/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace eulercf;
using namespace eulercf::oracle;

namespace {

BigRational q(long long num, long long den = 1) { return BigRational(num) / BigRational(den); }
ScalarValue rq(long long num, long long den = 1) { return ScalarValue(q(num, den)); }

TEST(BinomialPower, ExactForIntegerExponent) {
  const auto r = binomial_power(Exponent(2), rq(1, 2));
  EXPECT_EQ(r.method, Method::exact_rational);
  EXPECT_EQ(r.value.as_rational(), q(9, 4));
  EXPECT_EQ(binomial_power(Exponent(-1), rq(1, 3)).value.as_rational(), q(3, 4));
  EXPECT_EQ(binomial_power(Exponent(0), rq(5, 7)).value.as_rational(), q(1));
}

TEST(BinomialPower, ClosedFormOtherwise) {
  const auto r = binomial_power(Exponent(0.5), ScalarValue(0.2));
  EXPECT_EQ(r.method, Method::closed_form);
  EXPECT_EQ(r.real(), std::sqrt(1.2));
  EXPECT_EQ(binomial_power(Exponent(q(1, 2)), rq(1, 5)).method, Method::closed_form);
}

TEST(BinomialPower, DomainErrors) {
  EXPECT_THROW(binomial_power(Exponent(-2), rq(-1)), domain_error);
  EXPECT_THROW(binomial_power(Exponent(0.5), ScalarValue(-1.5)), domain_error);
  EXPECT_THROW(binomial_power(Exponent(q(1, 3)), rq(-2)), domain_error);
}

TEST(SymmetricLhs, Examples) {
  EXPECT_EQ(symmetric_lhs(Exponent(2), rq(1, 3)).value.as_rational(), q(10, 9));
  EXPECT_EQ(symmetric_lhs(Exponent(3), rq(1, 2)).value.as_rational(), q(21, 13));
  EXPECT_EQ(symmetric_lhs(Exponent(3), rq(1, 2)).method, Method::exact_rational);
}

TEST(SymmetricLhs, EvenInNExactly) {
  for (int n = 1; n <= 9; ++n) {
    for (const BigRational& z : {q(1, 3), q(-3, 4), q(1, 100)}) {
      EXPECT_EQ(symmetric_lhs(Exponent(n), ScalarValue(z)).value.as_rational(),
                symmetric_lhs(Exponent(-n), ScalarValue(z)).value.as_rational());
    }
  }
}

TEST(SymmetricLhs, Limits) {
  EXPECT_THROW(symmetric_lhs(Exponent(2), rq(0)), domain_error);
  EXPECT_EQ(symmetric_lhs(Exponent(2), rq(0), Limit::allow).value.as_rational(), q(1));
  EXPECT_EQ(symmetric_lhs(Exponent(2.0), ScalarValue(0.0), Limit::allow).real(), 1.0);
  EXPECT_THROW(symmetric_lhs(Exponent(0), rq(1, 2)), domain_error);
  EXPECT_THROW(symmetric_lhs(Exponent(2), rq(1)), domain_error);
  EXPECT_THROW(symmetric_lhs(Exponent(2.0), ScalarValue(-1.5)), domain_error);
}

TEST(SymmetricLhs, ImaginaryArgumentIsReal) {
  const double n = 2.5, t = 0.4;
  const Complex v = symmetric_lhs(Exponent(n), ScalarValue(Complex(0.0, t))).value.as_complex();
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
  EXPECT_NEAR(v.real(), n * t / std::tan(n * std::atan(t)), 1e-13);
}

TEST(TanMultipleLhs, ExactExamples) {
  EXPECT_EQ(tan_multiple_lhs(Exponent(3), rq(1, 5)).value.as_rational(), q(37, 55));
  EXPECT_EQ(tan_multiple_lhs(Exponent(2), rq(1, 4)).value.as_rational(), q(8, 15));
  EXPECT_EQ(tan_multiple_lhs(Exponent(-2), rq(1, 4)).value.as_rational(), q(-8, 15));
  EXPECT_EQ(tan_multiple_lhs(Exponent(1), rq(7, 3)).value.as_rational(), q(7, 3));
  EXPECT_THROW(tan_multiple_lhs(Exponent(2), rq(1)), pole_error);
}

TEST(TanMultipleLhs, AgreesWithLibm) {
  for (int n = 1; n <= 7; ++n) {
    for (const BigRational& t : {q(1, 5), q(2, 3), q(-5, 2)}) {
      const double expected = std::tan(n * std::atan(to_double(t)));
      const double exact_value = to_double(tan_multiple_lhs(Exponent(n), ScalarValue(t)).value.as_rational());
      EXPECT_NEAR(exact_value, expected, 1e-12 * std::max(1.0, std::fabs(expected)));
    }
  }
  EXPECT_EQ(tan_multiple_lhs(Exponent(2.5), ScalarValue(0.2)).real(), std::tan(2.5 * std::atan(0.2)));
}

TEST(ElementaryLhs, Values) {
  EXPECT_EQ(arctan_lhs(ScalarValue(2.0)).real(), std::atan(2.0));
  EXPECT_EQ(tan_lhs(ScalarValue(1.0)).real(), std::tan(1.0));
  EXPECT_THROW(tan_lhs(ScalarValue(std::numbers::pi / 2)), pole_error);
  EXPECT_NEAR(log_ratio_lhs(rq(1, 3)).real(), std::log(2.0), 1e-16);
  EXPECT_THROW(log_ratio_lhs(ScalarValue(1.5)), domain_error);
  EXPECT_THROW(log_ratio_lhs(rq(-1)), domain_error);
}

TEST(CothScaledLhs, Values) {
  EXPECT_NEAR(coth_scaled_lhs(ScalarValue(1.0)).real(), 1.0 / std::tanh(1.0), 1e-15);
  EXPECT_NEAR(coth_scaled_lhs(ScalarValue(0.5)).real(), 0.5 / std::tanh(0.5), 1e-15);
  EXPECT_EQ(coth_scaled_lhs(ScalarValue(-0.7)).real(), coth_scaled_lhs(ScalarValue(0.7)).real());
  EXPECT_NEAR(coth_scaled_lhs(ScalarValue(1e-9)).real(), 1.0, 1e-15);
  EXPECT_THROW(coth_scaled_lhs(ScalarValue(0.0)), domain_error);
  EXPECT_EQ(coth_scaled_lhs(rq(0), Limit::allow).value.as_rational(), q(1));
}

TEST(SeriesRatioCoth, ThreeTermFixture) {
  // (1 + 1/8 + 1/384) / (1 + 1/24 + 1/1920) = 2165/2001.
  const auto r = series_ratio_coth(rq(1, 2), 3);
  EXPECT_EQ(r.value.as_rational(), q(2165, 2001));
  EXPECT_EQ(r.method, Method::truncated_series);
  EXPECT_EQ(r.terms_used, 3u);
  EXPECT_EQ(series_ratio_coth(rq(1, 2), 1).value.as_rational(), q(1));
  EXPECT_THROW(series_ratio_coth(rq(1, 2), 0), domain_error);
}

TEST(SeriesRatioCoth, ConvergesToClosedForm) {
  EXPECT_NEAR(series_ratio_coth(ScalarValue(0.5), 20).real(), 0.5 / std::tanh(0.5), 1e-15);
  EXPECT_NEAR(series_ratio_coth(ScalarValue(1.0), 20).real(), 1.3130352854993312, 1e-15);
}

TEST(SeriesRatioCoth, AccuracyImprovesMonotonically) {
  // Down to the rounding floor of double arithmetic.
  const double noise = 4 * std::numeric_limits<double>::epsilon();
  for (double v : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    const double target = coth_scaled_lhs(ScalarValue(v)).real();
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m <= 30; ++m) {
      const double err = std::fabs(series_ratio_coth(ScalarValue(v), m).real() - target) / target;
      if (previous > noise) {
        EXPECT_LE(err, previous + noise) << "v=" << v << " m=" << m;
      }
      previous = err;
    }
    EXPECT_LT(previous, noise);
  }
}

TEST(FamilyOracle, Dispatch) {
  EXPECT_EQ(family_oracle({Family::symmetric_binomial, rq(2), rq(1, 3)}).value.as_rational(), q(10, 9));
  EXPECT_EQ(family_oracle({Family::lagrange_binomial, rq(2), rq(1, 2)}).value.as_rational(), q(9, 4));
  EXPECT_EQ(family_oracle({Family::tan_multiple, rq(3), rq(1, 5)}).value.as_rational(), q(37, 55));
  EXPECT_EQ(family_oracle({Family::arctan, std::nullopt, ScalarValue(1.0)}).real(), std::atan(1.0));
  EXPECT_THROW(family_oracle({Family::arctan, ScalarValue(1.0), ScalarValue(1.0)}), domain_error);
}

TEST(Method, Names) {
  EXPECT_EQ(method_name(Method::closed_form), "closed-form");
  EXPECT_EQ(method_name(Method::exact_rational), "exact-rational");
  EXPECT_EQ(method_name(Method::truncated_series), "truncated-series");
}

}  // namespace
