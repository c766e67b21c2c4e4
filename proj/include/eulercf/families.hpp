#ifndef EULERCF_FAMILIES_HPP
#define EULERCF_FAMILIES_HPP

// The eight continued fractions of the binomial-power family and its limits.
//
//   lagrange_binomial   (1+x)^n, interrupted law: denominators 1,2,3,2,5,2,7,...
//   uniform_binomial    (1+x)^n, uniform law in x^2/4
//   symmetric_binomial  nz[(1+z)^n+(1-z)^n] / [(1+z)^n-(1-z)^n], levels (n^2-k^2)z^2 / (2k+1)
//   tan_multiple        tan(n phi), t = tan(phi)
//   arctan_cf           arctan t
//   tan_cf              tan theta
//   log_ratio_cf        log((1+z)/(1-z))
//   coth_scaled_cf      v coth v
//
// Coefficients that depend on n are formed in exact rational arithmetic and
// only then converted to the evaluation mode, so an integer exponent always
// produces an exact zero numerator and the fraction terminates.

#include "eulercf/cf.hpp"
#include "eulercf/numeric.hpp"

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace eulercf {

/// The exponent n, held as an exact rational whatever the evaluation mode.
class Exponent {
 public:
  Exponent(BigRational n) : value_(std::move(n)) {}       // NOLINT(google-explicit-constructor)
  Exponent(int n) : value_(n) {}                          // NOLINT
  Exponent(double n) : value_(exact_rational(n)) {}       // NOLINT
  Exponent(const Complex& n) : value_(exact_rational(n)) {}      // NOLINT
  Exponent(const ScalarValue& n) : value_(exact_rational(n)) {}  // NOLINT

  const BigRational& value() const { return value_; }
  bool is_integer() const { return denominator(value_) == 1; }
  BigInteger integer() const { return numerator(value_); }
  BigRational squared() const { return value_ * value_; }
  Exponent operator-() const { return Exponent(BigRational(-value_)); }

 private:
  BigRational value_;
};

enum class Family {
  lagrange_binomial,
  uniform_binomial,
  symmetric_binomial,
  tan_multiple,
  arctan,
  tan,
  log_ratio,
  coth_scaled,
};

inline constexpr std::array<Family, 8> kAllFamilies = {
    Family::lagrange_binomial, Family::uniform_binomial, Family::symmetric_binomial, Family::tan_multiple,
    Family::arctan,            Family::tan,              Family::log_ratio,          Family::coth_scaled,
};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::lagrange_binomial: return "lagrange-binomial";
    case Family::uniform_binomial: return "uniform-binomial";
    case Family::symmetric_binomial: return "symmetric-binomial";
    case Family::tan_multiple: return "tan-multiple";
    case Family::arctan: return "arctan";
    case Family::tan: return "tan";
    case Family::log_ratio: return "log-ratio";
    case Family::coth_scaled: return "coth-scaled";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

inline bool family_takes_exponent(Family f) {
  return f == Family::lagrange_binomial || f == Family::uniform_binomial || f == Family::symmetric_binomial ||
         f == Family::tan_multiple;
}

namespace detail {

template <class T>
T scaled(const T& like, const BigRational& coeff, const T& factor) {
  if (coeff == 0) return constant_like(like, BigRational(0));
  return constant_like(like, coeff) * factor;
}

template <class T>
T integer_like(const T& like, std::size_t v) {
  return constant_like(like, BigRational(static_cast<long long>(v)));
}

// Level k of 1 + (n^2-1)w/(3 + (n^2-4)w/(5 + ...)): a_k = (n^2-k^2) w, b_k = 2k+1.
template <class T>
CFTerm<T> symmetric_level(const BigRational& n_squared, const T& w, std::size_t k) {
  const BigRational kk(static_cast<long long>(k));
  return {scaled(w, BigRational(n_squared - kk * kk), w), integer_like(w, 2 * k + 1)};
}

// Builds numerator / (1 + a_1/(3 + a_2/(5 + ...))) as b0 = 0, a_1 = numerator,
// b_1 = 1, and shifts the denominator's levels down by one.
template <class T, class Levels>
CFStream<T> full_fraction(const T& numerator, Levels denominator_level) {
  const T zero = constant_like(numerator, BigRational(0));
  const T one = constant_like(numerator, BigRational(1));
  return CFStream<T>(zero, [numerator, one, denominator_level](std::size_t k) -> CFTerm<T> {
    if (k == 1) return {numerator, one};
    return denominator_level(k - 1);
  });
}

template <class T>
double real_part_of(const T& v) {
  if constexpr (std::is_same_v<T, ScalarValue>) {
    return v.to_complex().real();
  } else if constexpr (std::is_same_v<T, Complex>) {
    return v.real();
  } else {
    return magnitude(v) * (v < 0 ? -1.0 : 1.0);
  }
}

template <class T>
bool is_real_valued(const T& v) {
  if constexpr (std::is_same_v<T, ScalarValue>) {
    return v.mode() != Mode::complex64 || v.as_complex().imag() == 0.0;
  } else if constexpr (std::is_same_v<T, Complex>) {
    return v.imag() == 0.0;
  } else {
    return true;
  }
}

}  // namespace detail

/// (1+x)^n = 1 + nx/(1 + (1-n)x/(2 + (1+n)x/(3 + (2-n)x/(2 + (2+n)x/(5 + ...))))).
/// Terminates at level 2n for integer n > 0 and at 2|n|+1 for integer n < 0.
template <class T>
CFStream<T> lagrange_binomial(const Exponent& n, const T& x) {
  const BigRational nr = n.value();
  return CFStream<T>(constant_like(x, BigRational(1)), [nr, x](std::size_t k) -> CFTerm<T> {
    if (k == 1) return {detail::scaled(x, nr, x), constant_like(x, BigRational(1))};
    const BigRational j(static_cast<long long>(k / 2));
    if (k % 2 == 0) return {detail::scaled(x, BigRational(j - nr), x), constant_like(x, BigRational(2))};
    return {detail::scaled(x, BigRational(j + nr), x), detail::integer_like(x, k)};
  });
}

/// (1+x)^n = 1 + nx/(1 + (1-n)x/2 + ((n^2-1)x^2/4)/(3(1+x/2) + ((n^2-4)x^2/4)/(5(1+x/2) + ...))).
/// Terminates at level |n|+1 for integer n.
template <class T>
CFStream<T> uniform_binomial(const Exponent& n, const T& x) {
  const BigRational nr = n.value();
  const BigRational n2 = n.squared();
  const T one = constant_like(x, BigRational(1));
  const T x_squared = x * x;
  const T half_shift = one + constant_like(x, BigRational(1, 2)) * x;  // 1 + x/2
  return CFStream<T>(one, [nr, n2, x, one, x_squared, half_shift](std::size_t k) -> CFTerm<T> {
    if (k == 1) {
      return {detail::scaled(x, nr, x), one + detail::scaled(x, BigRational((1 - nr) / 2), x)};
    }
    const BigRational j(static_cast<long long>(k - 1));
    return {detail::scaled(x, BigRational((n2 - j * j) / 4), x_squared),
            detail::integer_like(x, 2 * k - 1) * half_shift};
  });
}

/// 1 + (n^2-1)z^2/(3 + (n^2-4)z^2/(5 + ...)). Depends on n only through n^2;
/// terminates at level |n| for integer n.
template <class T>
CFStream<T> symmetric_binomial(const Exponent& n, const T& z) {
  const BigRational n2 = n.squared();
  const T w = z * z;
  return CFStream<T>(constant_like(z, BigRational(1)),
                     [n2, w](std::size_t k) { return detail::symmetric_level(n2, w, k); });
}

/// tan(n phi) = nt/(1 - (n^2-1)t^2/(3 - (n^2-4)t^2/(5 - ...))) with t = tan(phi):
/// the symmetric fraction with z^2 replaced by -t^2, as a full fraction.
template <class T>
CFStream<T> tan_multiple(const Exponent& n, const T& t) {
  const BigRational n2 = n.squared();
  const T w = -(t * t);
  return detail::full_fraction(detail::scaled(t, n.value(), t),
                               [n2, w](std::size_t k) { return detail::symmetric_level(n2, w, k); });
}

/// arctan t = t/(1 + t^2/(3 + 4t^2/(5 + 9t^2/(7 + ...)))).
template <class T>
CFStream<T> arctan_cf(const T& t) {
  const T w = t * t;
  return detail::full_fraction(t, [w](std::size_t k) -> CFTerm<T> {
    return {detail::integer_like(w, k * k) * w, detail::integer_like(w, 2 * k + 1)};
  });
}

inline constexpr double kTanPoleGuard = 1e-8;

/// Distance from theta to the nearest odd multiple of pi/2.
inline double distance_to_tan_pole(double theta) {
  const double m = std::round(theta / std::numbers::pi - 0.5);
  return std::fabs(theta - (m + 0.5) * std::numbers::pi);
}

/// tan theta = theta/(1 - theta^2/(3 - theta^2/(5 - ...))).
/// Rejects theta within 1e-8 of an odd multiple of pi/2.
template <class T>
CFStream<T> tan_cf(const T& theta) {
  if (!detail::is_real_valued(theta)) throw domain_error("tan_cf: theta must be real");
  if (distance_to_tan_pole(detail::real_part_of(theta)) < kTanPoleGuard) {
    throw domain_error("tan_cf: theta is within 1e-8 of an odd multiple of pi/2 (pole of tan)");
  }
  const T w = -(theta * theta);
  return detail::full_fraction(theta, [w](std::size_t k) -> CFTerm<T> {
    return {w, detail::integer_like(w, 2 * k + 1)};
  });
}

/// log((1+z)/(1-z)) = 2z/(1 - z^2/(3 - 4z^2/(5 - 9z^2/(7 - ...)))), |z| < 1.
template <class T>
CFStream<T> log_ratio_cf(const T& z) {
  if (!(magnitude(z) < 1.0)) throw domain_error("log_ratio_cf: requires |z| < 1");
  if constexpr (std::is_same_v<T, BigRational>) {
    if (abs(z) >= 1) throw domain_error("log_ratio_cf: requires |z| < 1");
  }
  const T w = -(z * z);
  return detail::full_fraction(detail::scaled(z, BigRational(2), z), [w](std::size_t k) -> CFTerm<T> {
    return {detail::integer_like(w, k * k) * w, detail::integer_like(w, 2 * k + 1)};
  });
}

/// v coth v = v(e^{2v}+1)/(e^{2v}-1) = 1 + v^2/(3 + v^2/(5 + v^2/(7 + ...))).
template <class T>
CFStream<T> coth_scaled_cf(const T& v) {
  const T w = v * v;
  return CFStream<T>(constant_like(v, BigRational(1)), [w](std::size_t k) -> CFTerm<T> {
    return {w, detail::integer_like(w, 2 * k + 1)};
  });
}

/// A family together with its parameters, in runtime-tagged form.
struct FamilySpec {
  Family family;
  std::optional<ScalarValue> n;
  ScalarValue arg;

  void validate() const {
    if (family_takes_exponent(family)) {
      if (!n) throw domain_error(std::string(family_name(family)) + " requires an exponent n");
      ScalarValue::require_same_mode(*n, arg);
      // n must be real; throws otherwise
      (void)Exponent(*n);
    } else if (n) {
      throw domain_error(std::string(family_name(family)) + " takes no exponent n");
    }
    const bool finite = arg.visit([](const auto& v) {
      using V = std::decay_t<decltype(v)>;
      if constexpr (std::is_same_v<V, double>) return std::isfinite(v);
      else if constexpr (std::is_same_v<V, Complex>) return std::isfinite(v.real()) && std::isfinite(v.imag());
      else return true;
    });
    if (!finite) throw domain_error("argument must be finite");
  }
};

inline CFStream<ScalarValue> make_stream(const FamilySpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::lagrange_binomial: return lagrange_binomial(Exponent(*spec.n), spec.arg);
    case Family::uniform_binomial: return uniform_binomial(Exponent(*spec.n), spec.arg);
    case Family::symmetric_binomial: return symmetric_binomial(Exponent(*spec.n), spec.arg);
    case Family::tan_multiple: return tan_multiple(Exponent(*spec.n), spec.arg);
    case Family::arctan: return arctan_cf(spec.arg);
    case Family::tan: return tan_cf(spec.arg);
    case Family::log_ratio: return log_ratio_cf(spec.arg);
    case Family::coth_scaled: return coth_scaled_cf(spec.arg);
  }
  throw domain_error("unknown family");
}

}  // namespace eulercf

#endif  // EULERCF_FAMILIES_HPP
