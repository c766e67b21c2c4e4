#ifndef EULERCF_ORACLE_HPP
#define EULERCF_ORACLE_HPP

// Reference values for the left-hand sides the continued fractions represent.
// Nothing here evaluates a continued fraction: exact results come from
// rational powers and binomial sums, inexact ones from <cmath>/<complex>.

#include "eulercf/families.hpp"
#include "eulercf/numeric.hpp"

#include <cmath>
#include <complex>
#include <optional>

namespace eulercf::oracle {

enum class Method { closed_form, exact_rational, truncated_series };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed-form";
    case Method::exact_rational: return "exact-rational";
    case Method::truncated_series: return "truncated-series";
  }
  return "?";
}

struct OracleResult {
  ScalarValue value;
  Method method = Method::closed_form;
  std::size_t terms_used = 0;

  double real() const { return value.to_real(); }
};

/// Opt-in for removable singularities (z = 0, v = 0): return the limit value.
enum class Limit { reject, allow };

namespace detail {

inline BigRational ipow(const BigRational& base, const BigInteger& exponent) {
  BigInteger e = abs(exponent);
  BigRational result(1);
  BigRational b = base;
  while (e > 0) {
    if ((e & 1) != 0) result *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  if (exponent < 0) {
    if (result == 0) throw domain_error("zero raised to a negative power");
    result = 1 / result;
  }
  return result;
}

inline OracleResult exact(BigRational v) { return {ScalarValue(std::move(v)), Method::exact_rational, 0}; }
inline OracleResult closed(double v) { return {ScalarValue(v), Method::closed_form, 0}; }
inline OracleResult closed(const Complex& v) { return {ScalarValue(v), Method::closed_form, 0}; }

inline double as_double(const BigRational& n) { return to_double(n); }

}  // namespace detail

/// (1+x)^n. Exact for integer n and rational x.
inline OracleResult binomial_power(const Exponent& n, const ScalarValue& x) {
  const double nd = detail::as_double(n.value());
  switch (x.mode()) {
    case Mode::big_rational: {
      const BigRational base = 1 + x.as_rational();
      if (n.is_integer()) {
        if (base == 0 && n.integer() < 0) throw domain_error("binomial_power: x = -1 with negative integer n");
        return detail::exact(detail::ipow(base, n.integer()));
      }
      if (base <= 0) throw domain_error("binomial_power: requires 1 + x > 0 for non-integer n");
      return detail::closed(std::pow(to_double(base), nd));
    }
    case Mode::float64: {
      const double base = 1.0 + x.as_float();
      if (n.is_integer()) {
        if (base == 0.0 && n.integer() < 0) throw domain_error("binomial_power: x = -1 with negative integer n");
      } else if (!(base > 0.0)) {
        throw domain_error("binomial_power: requires 1 + x > 0 for non-integer n");
      }
      if (n.value() == 0) return detail::closed(1.0);
      return detail::closed(std::pow(base, nd));
    }
    case Mode::complex64: {
      const Complex base = 1.0 + x.as_complex();
      if (base == Complex(0.0, 0.0)) throw domain_error("binomial_power: x = -1");
      return detail::closed(std::pow(base, nd));
    }
  }
  throw domain_error("binomial_power: unknown mode");
}

/// nz[(1+z)^n + (1-z)^n] / [(1+z)^n - (1-z)^n]. Exact for integer n and rational z.
inline OracleResult symmetric_lhs(const Exponent& n, const ScalarValue& z, Limit limit = Limit::reject) {
  if (n.value() == 0) throw domain_error("symmetric_lhs: n = 0 is 0/0; use log_ratio_lhs for that limit");
  if (is_zero(z)) {
    if (limit == Limit::reject) throw domain_error("symmetric_lhs: z = 0 (limit 1 only on request)");
    return {constant_like(z, BigRational(1)), z.mode() == Mode::big_rational ? Method::exact_rational
                                                                              : Method::closed_form};
  }
  if (!(magnitude(z) < 1.0)) throw domain_error("symmetric_lhs: requires |z| < 1");
  const double nd = detail::as_double(n.value());
  switch (z.mode()) {
    case Mode::big_rational: {
      const BigRational& zr = z.as_rational();
      if (abs(zr) >= 1) throw domain_error("symmetric_lhs: requires |z| < 1");
      if (n.is_integer()) {
        const BigRational up = detail::ipow(1 + zr, n.integer());
        const BigRational down = detail::ipow(1 - zr, n.integer());
        return detail::exact(n.value() * zr * (up + down) / (up - down));
      }
      const double zd = to_double(zr);
      const double up = std::pow(1.0 + zd, nd), down = std::pow(1.0 - zd, nd);
      return detail::closed(nd * zd * (up + down) / (up - down));
    }
    case Mode::float64: {
      const double zd = z.as_float();
      const double up = std::pow(1.0 + zd, nd), down = std::pow(1.0 - zd, nd);
      return detail::closed(nd * zd * (up + down) / (up - down));
    }
    case Mode::complex64: {
      const Complex zc = z.as_complex();
      const Complex up = std::pow(1.0 + zc, nd), down = std::pow(1.0 - zc, nd);
      return detail::closed(nd * zc * (up + down) / (up - down));
    }
  }
  throw domain_error("symmetric_lhs: unknown mode");
}

/// tan(n arctan t). For integer n and rational t: Im/Re of (1+it)^n, exactly.
inline OracleResult tan_multiple_lhs(const Exponent& n, const ScalarValue& t) {
  if (t.mode() == Mode::big_rational && n.is_integer()) {
    const BigRational& tr = t.as_rational();
    const BigInteger m = abs(n.integer());
    // Binomial expansion of (1 + it)^m.
    BigRational re(0), im(0), power(1);
    BigInteger binom(1);
    for (BigInteger j = 0; j <= m; ++j) {
      const BigRational term = BigRational(binom) * power;
      switch (static_cast<int>(j % 4)) {
        case 0: re += term; break;
        case 1: im += term; break;
        case 2: re -= term; break;
        case 3: im -= term; break;
      }
      power *= tr;
      binom = binom * (m - j) / (j + 1);
    }
    if (re == 0) throw pole_error("tan_multiple_lhs: n*phi is a pole of tan");
    BigRational value = im / re;
    if (n.integer() < 0) value = -value;
    return detail::exact(std::move(value));
  }
  const double nd = detail::as_double(n.value());
  if (t.mode() == Mode::complex64) return detail::closed(std::tan(nd * std::atan(t.as_complex())));
  const double angle = nd * std::atan(t.to_real());
  if (distance_to_tan_pole(angle) == 0.0) throw pole_error("tan_multiple_lhs: n*phi is a pole of tan");
  return detail::closed(std::tan(angle));
}

inline OracleResult arctan_lhs(const ScalarValue& t) {
  if (t.mode() == Mode::complex64) return detail::closed(std::atan(t.as_complex()));
  return detail::closed(std::atan(t.to_real()));
}

inline OracleResult tan_lhs(const ScalarValue& theta) {
  if (theta.mode() == Mode::complex64) return detail::closed(std::tan(theta.as_complex()));
  const double th = theta.to_real();
  if (distance_to_tan_pole(th) < kTanPoleGuard) throw pole_error("tan_lhs: theta at a pole of tan");
  return detail::closed(std::tan(th));
}

/// log((1+z)/(1-z)), |z| < 1.
inline OracleResult log_ratio_lhs(const ScalarValue& z) {
  if (!(magnitude(z) < 1.0)) throw domain_error("log_ratio_lhs: requires |z| < 1");
  if (z.mode() == Mode::complex64) {
    const Complex zc = z.as_complex();
    return detail::closed(std::log((1.0 + zc) / (1.0 - zc)));
  }
  if (z.mode() == Mode::big_rational && abs(z.as_rational()) >= 1) {
    throw domain_error("log_ratio_lhs: requires |z| < 1");
  }
  const double zd = z.to_real();
  return detail::closed(std::log1p(zd) - std::log1p(-zd));
}

/// v(e^{2v}+1)/(e^{2v}-1) = v coth v.
inline OracleResult coth_scaled_lhs(const ScalarValue& v, Limit limit = Limit::reject) {
  if (is_zero(v)) {
    if (limit == Limit::reject) throw domain_error("coth_scaled_lhs: v = 0 (limit 1 only on request)");
    return {constant_like(v, BigRational(1)), v.mode() == Mode::big_rational ? Method::exact_rational
                                                                              : Method::closed_form};
  }
  if (v.mode() == Mode::complex64) {
    const Complex vc = v.as_complex();
    const Complex e2 = std::exp(2.0 * vc);
    return detail::closed(vc * (e2 + 1.0) / (e2 - 1.0));
  }
  // Even in v; written with expm1 so that e^{2a}-1 keeps its precision.
  const double a = std::fabs(v.to_real());
  const double em1 = std::expm1(2.0 * a);
  return detail::closed(a * (1.0 + 2.0 / em1));
}

/// (sum v^{2k}/(2k)!) / (sum v^{2k}/(2k+1)!), each with `terms` terms.
inline OracleResult series_ratio_coth(const ScalarValue& v, std::size_t terms) {
  if (terms < 1) throw domain_error("series_ratio_coth: terms must be at least 1");
  return v.visit([terms](const auto& x) -> OracleResult {
    using V = std::decay_t<decltype(x)>;
    const V w = x * x;
    V even_term = constant_like(x, BigRational(1));
    V odd_term = even_term;
    V even_sum = even_term;
    V odd_sum = odd_term;
    for (std::size_t k = 1; k < terms; ++k) {
      const auto kk = static_cast<long long>(k);
      even_term = even_term * w / constant_like(x, BigRational((2 * kk - 1) * (2 * kk)));
      odd_term = odd_term * w / constant_like(x, BigRational((2 * kk) * (2 * kk + 1)));
      even_sum += even_term;
      odd_sum += odd_term;
    }
    return {ScalarValue(V(even_sum / odd_sum)), Method::truncated_series, terms};
  });
}

/// Reference value for a family's left-hand side.
inline OracleResult family_oracle(const FamilySpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::lagrange_binomial:
    case Family::uniform_binomial: return binomial_power(Exponent(*spec.n), spec.arg);
    case Family::symmetric_binomial: return symmetric_lhs(Exponent(*spec.n), spec.arg);
    case Family::tan_multiple: return tan_multiple_lhs(Exponent(*spec.n), spec.arg);
    case Family::arctan: return arctan_lhs(spec.arg);
    case Family::tan: return tan_lhs(spec.arg);
    case Family::log_ratio: return log_ratio_lhs(spec.arg);
    case Family::coth_scaled: return coth_scaled_lhs(spec.arg);
  }
  throw domain_error("unknown family");
}

}  // namespace eulercf::oracle

#endif  // EULERCF_ORACLE_HPP
