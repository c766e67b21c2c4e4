#ifndef EULERCF_NUMERIC_HPP
#define EULERCF_NUMERIC_HPP

// Scalar kernel shared by every other header: the three evaluation modes
// (double, exact rational, complex double), the runtime-tagged ScalarValue,
// tolerance-aware comparison and the small set of free functions the
// templated algorithms are written against.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

namespace eulercf {

using BigInteger = boost::multiprecision::cpp_int;
/// Always reduced, denominator always positive.
using BigRational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

enum class Mode { float64, big_rational, complex64 };

inline std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::float64: return "float64";
    case Mode::big_rational: return "rational";
    case Mode::complex64: return "complex64";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Errors

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct mode_mismatch : error {
  using error::error;
};
struct unsupported_mode : error {
  using error::error;
};
struct division_by_zero : error {
  using error::error;
};
struct domain_error : error {
  using error::error;
};
/// A truncated fraction (or a closed form) has a zero denominator.
struct pole_error : error {
  using error::error;
};

// ---------------------------------------------------------------------------
// Per-mode primitives

inline Mode mode_of(double) { return Mode::float64; }
inline Mode mode_of(const BigRational&) { return Mode::big_rational; }
inline Mode mode_of(const Complex&) { return Mode::complex64; }

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const BigRational& v) { return v == 0; }
inline bool is_zero(const Complex& v) { return v.real() == 0.0 && v.imag() == 0.0; }

inline double to_double(const BigRational& r) {
  const auto& num = numerator(r);
  const auto& den = denominator(r);
  constexpr std::int64_t kExact = std::int64_t{1} << 53;
  if (abs(num) <= kExact && den <= kExact) {
    // Both operands representable: IEEE division is correctly rounded.
    return static_cast<double>(num.convert_to<std::int64_t>()) /
           static_cast<double>(den.convert_to<std::int64_t>());
  }
  return r.convert_to<double>();
}

/// |v| as a double; used for residuals and rescaling decisions only.
inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const BigRational& v) { return std::fabs(to_double(v)); }
inline double magnitude(const Complex& v) { return std::abs(v); }

/// The exact rational r expressed in the mode of `like`.
inline double constant_like(double, const BigRational& r) { return to_double(r); }
inline BigRational constant_like(const BigRational&, const BigRational& r) { return r; }
inline Complex constant_like(const Complex&, const BigRational& r) { return {to_double(r), 0.0}; }

/// Multiply by 2^e. Exact for binary floating point, identity for rationals.
inline void scale_pow2(double& v, int e) { v = std::ldexp(v, e); }
inline void scale_pow2(BigRational&, int) {}
inline void scale_pow2(Complex& v, int e) { v = {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)}; }

inline bool needs_rescaling(double) { return true; }
inline bool needs_rescaling(const BigRational&) { return false; }
inline bool needs_rescaling(const Complex&) { return true; }

/// Exact rational value of a real scalar. Every finite double is a dyadic rational.
inline BigRational exact_rational(double v) {
  if (!std::isfinite(v)) throw domain_error("non-finite value has no exact rational form");
  return BigRational(v);
}
inline BigRational exact_rational(const BigRational& v) { return v; }
inline BigRational exact_rational(const Complex& v) {
  if (v.imag() != 0.0) throw domain_error("complex value with nonzero imaginary part is not a real rational");
  return exact_rational(v.real());
}

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string to_text(double v) { return format_double(v); }
inline std::string to_text(const BigRational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}
inline std::string to_text(const Complex& v) {
  std::string out = format_double(v.real());
  const double im = v.imag();
  out += (std::signbit(im) ? "-" : "+");
  out += format_double(std::fabs(im));
  out += "i";
  return out;
}

// ---------------------------------------------------------------------------
// ScalarValue: runtime-tagged scalar. Operations never mix modes.

class ScalarValue {
 public:
  using Payload = std::variant<double, BigRational, Complex>;

  ScalarValue() : payload_(0.0) {}
  ScalarValue(double v) : payload_(v) {}  // NOLINT(google-explicit-constructor)
  ScalarValue(int v) = delete;            // ambiguous: say which mode you mean
  ScalarValue(BigRational v) : payload_(std::move(v)) {}  // NOLINT
  ScalarValue(Complex v) : payload_(v) {}                 // NOLINT

  Mode mode() const { return static_cast<Mode>(payload_.index()); }
  const Payload& payload() const { return payload_; }

  const double& as_float() const { return get<double>("float64"); }
  const BigRational& as_rational() const { return get<BigRational>("rational"); }
  const Complex& as_complex() const { return get<Complex>("complex64"); }

  /// Real value as a double; complex values must have zero imaginary part.
  double to_real() const {
    return std::visit(
        [](const auto& v) -> double {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, double>) {
            return v;
          } else if constexpr (std::is_same_v<V, BigRational>) {
            return eulercf::to_double(v);
          } else {
            if (v.imag() != 0.0) throw domain_error("value is not real");
            return v.real();
          }
        },
        payload_);
  }

  /// Value widened to complex double (any mode).
  Complex to_complex() const {
    if (mode() == Mode::complex64) return as_complex();
    return {to_real(), 0.0};
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), payload_);
  }

  friend ScalarValue operator+(const ScalarValue& a, const ScalarValue& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x + y; });
  }
  friend ScalarValue operator-(const ScalarValue& a, const ScalarValue& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x - y; });
  }
  friend ScalarValue operator*(const ScalarValue& a, const ScalarValue& b) {
    return binary(a, b, [](const auto& x, const auto& y) { return x * y; });
  }
  friend ScalarValue operator/(const ScalarValue& a, const ScalarValue& b) {
    return binary(a, b, [](const auto& x, const auto& y) {
      if (is_zero(y)) throw division_by_zero("division by exact zero");
      return x / y;
    });
  }
  friend ScalarValue operator-(const ScalarValue& a) {
    return a.visit([](const auto& x) { return ScalarValue(-x); });
  }
  ScalarValue& operator+=(const ScalarValue& o) { return *this = *this + o; }
  ScalarValue& operator-=(const ScalarValue& o) { return *this = *this - o; }
  ScalarValue& operator*=(const ScalarValue& o) { return *this = *this * o; }
  ScalarValue& operator/=(const ScalarValue& o) { return *this = *this / o; }

  /// Exact equality; comparing different modes is an error.
  friend bool operator==(const ScalarValue& a, const ScalarValue& b) {
    require_same_mode(a, b);
    return a.payload_ == b.payload_;
  }

  static void require_same_mode(const ScalarValue& a, const ScalarValue& b) {
    if (a.mode() != b.mode()) {
      throw mode_mismatch("mode mismatch: " + std::string(mode_name(a.mode())) + " vs " +
                          std::string(mode_name(b.mode())));
    }
  }

 private:
  template <class V>
  const V& get(const char* wanted) const {
    if (const V* p = std::get_if<V>(&payload_)) return *p;
    throw mode_mismatch(std::string("value is ") + std::string(mode_name(mode())) + ", not " + wanted);
  }

  template <class Op>
  static ScalarValue binary(const ScalarValue& a, const ScalarValue& b, Op op) {
    require_same_mode(a, b);
    return std::visit(
        [&](const auto& x) -> ScalarValue {
          using V = std::decay_t<decltype(x)>;
          return ScalarValue(V(op(x, std::get<V>(b.payload_))));
        },
        a.payload_);
  }

  Payload payload_;
};

inline Mode mode_of(const ScalarValue& v) { return v.mode(); }
inline bool is_zero(const ScalarValue& v) {
  return v.visit([](const auto& x) { return is_zero(x); });
}
inline double magnitude(const ScalarValue& v) {
  return v.visit([](const auto& x) { return magnitude(x); });
}
inline ScalarValue constant_like(const ScalarValue& like, const BigRational& r) {
  return like.visit([&](const auto& x) { return ScalarValue(constant_like(x, r)); });
}
inline void scale_pow2(ScalarValue& v, int e) {
  v = v.visit([e](auto x) {
    scale_pow2(x, e);
    return ScalarValue(std::move(x));
  });
}
inline bool needs_rescaling(const ScalarValue& v) { return v.mode() != Mode::big_rational; }
inline BigRational exact_rational(const ScalarValue& v) {
  return v.visit([](const auto& x) { return exact_rational(x); });
}
inline std::string to_text(const ScalarValue& v) {
  return v.visit([](const auto& x) { return to_text(x); });
}

/// a / b, reporting division by an exact zero instead of producing inf/nan.
template <class T>
T checked_div(const T& a, const T& b) {
  if (is_zero(b)) throw division_by_zero("division by exact zero");
  return a / b;
}

template <class T>
bool is_exact_mode(const T& v) {
  return mode_of(v) == Mode::big_rational;
}

// ---------------------------------------------------------------------------
// Construction

/// num/den in the requested mode; rationals come back reduced.
/// num/den in lowest terms with a positive denominator.
inline BigRational make_ratio(BigInteger num, BigInteger den) {
  if (den == 0) throw division_by_zero("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return BigRational(num, den);
}

inline ScalarValue scalar_from_ratio(std::int64_t num, std::int64_t den, Mode mode) {
  if (den == 0) throw division_by_zero("scalar_from_ratio: zero denominator");
  BigRational r = make_ratio(num, den);
  switch (mode) {
    case Mode::float64: return ScalarValue(to_double(r));
    case Mode::big_rational: return ScalarValue(std::move(r));
    case Mode::complex64: return ScalarValue(Complex(to_double(r), 0.0));
  }
  throw mode_mismatch("unknown mode");
}

// ---------------------------------------------------------------------------
// Tolerances

class ToleranceSpec {
 public:
  /// Requires both tolerances nonnegative and at least one positive.
  ToleranceSpec(double rel_tol, double abs_tol) : rel_(rel_tol), abs_(abs_tol) {
    if (!(rel_tol >= 0.0) || !(abs_tol >= 0.0) || !std::isfinite(rel_tol) || !std::isfinite(abs_tol)) {
      throw domain_error("tolerances must be finite and nonnegative");
    }
    if (rel_tol == 0.0 && abs_tol == 0.0) {
      throw domain_error("at least one tolerance must be positive (use ToleranceSpec::exact())");
    }
  }

  /// Exact equality. Only meaningful for rationals; floats then need bitwise-equal values.
  static ToleranceSpec exact() { return ToleranceSpec(); }
  static ToleranceSpec relative(double rel) { return {rel, 0.0}; }
  static ToleranceSpec absolute(double abs) { return {0.0, abs}; }
  /// rel 1e-12, abs 1e-14.
  static ToleranceSpec standard() { return {1e-12, 1e-14}; }

  double rel_tol() const { return rel_; }
  double abs_tol() const { return abs_; }
  bool is_exact() const { return rel_ == 0.0 && abs_ == 0.0; }

 private:
  ToleranceSpec() = default;
  double rel_ = 0.0;
  double abs_ = 0.0;
};

inline bool nearly_equal(double a, double b, const ToleranceSpec& tol) {
  if (a == b) return true;
  const double diff = std::fabs(a - b);
  return diff <= tol.abs_tol() || diff <= tol.rel_tol() * std::max(std::fabs(a), std::fabs(b));
}

inline bool nearly_equal(const Complex& a, const Complex& b, const ToleranceSpec& tol) {
  if (a == b) return true;
  const double diff = std::abs(a - b);
  return diff <= tol.abs_tol() || diff <= tol.rel_tol() * std::max(std::abs(a), std::abs(b));
}

/// Evaluated exactly: the tolerances are converted to rationals without rounding.
inline bool nearly_equal(const BigRational& a, const BigRational& b, const ToleranceSpec& tol) {
  if (a == b) return true;
  if (tol.is_exact()) return false;
  const BigRational diff = abs(a - b);
  if (diff <= exact_rational(tol.abs_tol())) return true;
  return diff <= exact_rational(tol.rel_tol()) * std::max(abs(a), abs(b));
}

inline bool nearly_equal(const ScalarValue& a, const ScalarValue& b, const ToleranceSpec& tol) {
  ScalarValue::require_same_mode(a, b);
  return a.visit([&](const auto& x) {
    using V = std::decay_t<decltype(x)>;
    return nearly_equal(x, std::get<V>(b.payload()), tol);
  });
}

/// |a - b| / |a| as a double, or |a - b| when a is zero. Exact difference for rationals.
template <class T>
double relative_change(const T& current, const T& previous) {
  const double diff = magnitude(T(current - previous));
  const double scale = magnitude(current);
  return scale == 0.0 ? diff : diff / scale;
}

// ---------------------------------------------------------------------------
// Text parsing

namespace detail {

inline double parse_double_strict(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw domain_error("empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw domain_error("not a number: '" + s + "'");
  return v;
}

inline bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

inline BigInteger parse_integer(std::string_view s) {
  if (!is_integer_text(s)) throw domain_error("not an integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return BigInteger(std::string(s));
}

}  // namespace detail

/// "p/q" or an integer. Decimal text is rejected: rationals must be exact.
inline BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(detail::parse_integer(text));
  const BigInteger num = detail::parse_integer(text.substr(0, slash));
  const BigInteger den = detail::parse_integer(text.substr(slash + 1));
  if (den == 0) throw division_by_zero("zero denominator in '" + std::string(text) + "'");
  return make_ratio(num, den);
}

/// "a", "bi", "a+bi", "a-bi". "p/q" components are accepted and rounded.
inline Complex parse_complex(std::string_view text) {
  auto component = [](std::string_view s) -> double {
    if (s.find('/') != std::string_view::npos) return to_double(parse_rational(s));
    return detail::parse_double_strict(s);
  };
  if (text.empty()) throw domain_error("empty complex number");
  if (text.back() != 'i') return {component(text), 0.0};
  std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is not the leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_part = [&](std::string_view s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return component(s);
  };
  if (split == std::string_view::npos) return {0.0, imag_part(body)};
  return {component(body.substr(0, split)), imag_part(body.substr(split))};
}

/// Parses text in the given mode. Rational mode accepts only exact forms.
inline ScalarValue parse_scalar(std::string_view text, Mode mode) {
  switch (mode) {
    case Mode::big_rational: {
      if (text.find_first_of(".eE") != std::string_view::npos) {
        throw domain_error("decimal input '" + std::string(text) + "' is not accepted in rational mode; use p/q");
      }
      return ScalarValue(parse_rational(text));
    }
    case Mode::float64: {
      if (text.find('/') != std::string_view::npos) return ScalarValue(to_double(parse_rational(text)));
      return ScalarValue(detail::parse_double_strict(text));
    }
    case Mode::complex64: return ScalarValue(parse_complex(text));
  }
  throw mode_mismatch("unknown mode");
}

}  // namespace eulercf

#endif  // EULERCF_NUMERIC_HPP
