#ifndef EULERCF_CF_HPP
#define EULERCF_CF_HPP

// Generic continued fractions  b0 + a1/(b1 + a2/(b2 + ...))  and their
// evaluation. A zero partial numerator a_m terminates the fraction: its value
// is then the convergent m-1 and deeper levels are never looked at.

#include "eulercf/numeric.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace eulercf {

/// One level k >= 1: partial numerator a_k over partial denominator b_k.
template <class T>
struct CFTerm {
  T a;
  T b;
};

/// Leading term b0 plus a lazily generated sequence of levels. The generator
/// must be a pure function of the level index.
template <class T>
class CFStream {
 public:
  using value_type = T;
  using Generator = std::function<CFTerm<T>(std::size_t)>;

  CFStream(T b0, Generator generator) : b0_(std::move(b0)), generator_(std::move(generator)) {}

  /// Finite stream; levels past the last term read as a zero numerator.
  static CFStream from_terms(T b0, std::vector<CFTerm<T>> terms) {
    auto shared = std::make_shared<const std::vector<CFTerm<T>>>(std::move(terms));
    T zero = constant_like(b0, BigRational(0));
    T one = constant_like(b0, BigRational(1));
    return CFStream(std::move(b0), [shared, zero, one](std::size_t k) -> CFTerm<T> {
      if (k - 1 < shared->size()) return (*shared)[k - 1];
      return {zero, one};
    });
  }

  const T& b0() const { return b0_; }

  /// Level k >= 1.
  CFTerm<T> term(std::size_t k) const {
    if (k == 0) throw domain_error("CFStream::term: levels start at 1");
    return generator_(k);
  }

 private:
  T b0_;
  Generator generator_;
};

template <class T>
struct Convergent {
  T p;
  T q;
  std::size_t k = 0;

  /// q == 0: the truncation itself has a pole.
  bool is_pole() const { return is_zero(q); }
  T value() const {
    if (is_pole()) throw pole_error("convergent " + std::to_string(k) + " has a zero denominator");
    return p / q;
  }
};

template <class T>
struct ConvergentSequence {
  std::vector<Convergent<T>> items;
  /// Level m whose partial numerator vanished, when it was reached.
  std::optional<std::size_t> termination_level;

  bool terminated() const { return termination_level.has_value(); }
  const Convergent<T>& back() const { return items.back(); }
};

template <class T>
struct EvalReport {
  T value;
  std::size_t depth_used = 0;
  bool converged = false;
  bool terminated = false;
  /// Relative change of the last step; 0 when terminated.
  double residual = 0.0;
  /// Lentz steps where an exactly-zero intermediate was replaced.
  std::size_t tiny_substitutions = 0;
};

inline constexpr std::size_t kDefaultMaxDepth = 10'000;
inline constexpr double kLentzTiny = 1e-300;

namespace detail {

// Powers of two used to keep forward-recurrence magnitudes in range.
inline constexpr int kRescaleExponent = 512;
inline const double kRescaleHigh = std::ldexp(1.0, kRescaleExponent);
inline const double kRescaleLow = std::ldexp(1.0, -kRescaleExponent);

/// Forward three-term recurrence state: (p_{k-1}, q_{k-1}) and (p_k, q_k).
template <class T>
struct Recurrence {
  T p_prev, q_prev, p, q;
  std::size_t k = 0;

  explicit Recurrence(const T& b0)
      : p_prev(constant_like(b0, BigRational(1))),
        q_prev(constant_like(b0, BigRational(0))),
        p(b0),
        q(constant_like(b0, BigRational(1))) {}

  void advance(const CFTerm<T>& t) {
    T p_next = t.b * p + t.a * p_prev;
    T q_next = t.b * q + t.a * q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    ++k;
    rescale();
  }

  // p/q and p_prev/q_prev are unchanged by a common power-of-two factor.
  void rescale() {
    if (!needs_rescaling(p)) return;
    const double big = std::max(magnitude(p), magnitude(q));
    int e = 0;
    if (big > kRescaleHigh) {
      e = -kRescaleExponent;
    } else if (big != 0.0 && big < kRescaleLow) {
      e = kRescaleExponent;
    }
    if (e == 0) return;
    scale_pow2(p, e);
    scale_pow2(q, e);
    scale_pow2(p_prev, e);
    scale_pow2(q_prev, e);
  }

  Convergent<T> current() const { return {p, q, k}; }
};

inline void require_positive_depth(std::size_t max_depth, const char* who) {
  if (max_depth < 1) throw domain_error(std::string(who) + ": max_depth must be at least 1");
}

}  // namespace detail

/// Convergents 0..min(depth, m-1), where m is the first level with a_m = 0.
template <class T>
ConvergentSequence<T> convergents(const CFStream<T>& cf, std::size_t depth) {
  ConvergentSequence<T> out;
  detail::Recurrence<T> rec(cf.b0());
  out.items.push_back(rec.current());
  for (std::size_t k = 1; k <= depth; ++k) {
    CFTerm<T> t = cf.term(k);
    if (is_zero(t.a)) {
      out.termination_level = k;
      break;
    }
    rec.advance(t);
    out.items.push_back(rec.current());
  }
  return out;
}

/// Forward recurrence until two successive convergent values agree within
/// `tol`, the fraction terminates, or max_depth levels have been consumed.
template <class T>
EvalReport<T> eval_convergents(const CFStream<T>& cf, const ToleranceSpec& tol,
                               std::size_t max_depth = kDefaultMaxDepth) {
  detail::require_positive_depth(max_depth, "eval_convergents");
  detail::Recurrence<T> rec(cf.b0());
  std::optional<T> previous = rec.p;  // q_0 = 1
  double residual = std::numeric_limits<double>::infinity();

  for (std::size_t k = 1; k <= max_depth; ++k) {
    CFTerm<T> t = cf.term(k);
    if (is_zero(t.a)) {
      return {rec.current().value(), k - 1, true, true, 0.0, 0};
    }
    rec.advance(t);
    if (rec.current().is_pole()) {
      previous.reset();
      continue;
    }
    T value = rec.current().value();
    if (previous) {
      residual = relative_change(value, *previous);
      if (nearly_equal(value, *previous, tol)) {
        return {std::move(value), k, true, false, residual, 0};
      }
    }
    previous = std::move(value);
  }
  return {rec.current().value(), max_depth, false, false, residual, 0};
}

/// Modified Lentz evaluation. Float64 and Complex64 only.
template <class T>
EvalReport<T> eval_lentz(const CFStream<T>& cf, const ToleranceSpec& tol,
                         std::size_t max_depth = kDefaultMaxDepth) {
  detail::require_positive_depth(max_depth, "eval_lentz");
  if (is_exact_mode(cf.b0())) {
    throw unsupported_mode("eval_lentz does not accept rational mode; use eval_convergents");
  }
  const T tiny = constant_like(cf.b0(), exact_rational(kLentzTiny));
  const T one = constant_like(cf.b0(), BigRational(1));
  const T zero = constant_like(cf.b0(), BigRational(0));

  EvalReport<T> report{cf.b0(), 0, false, false, std::numeric_limits<double>::infinity(), 0};
  T f = cf.b0();
  if (is_zero(f)) {
    f = tiny;
    ++report.tiny_substitutions;
  }
  T c = f;
  T d = zero;

  for (std::size_t k = 1; k <= max_depth; ++k) {
    CFTerm<T> t = cf.term(k);
    if (is_zero(t.a)) {
      report.value = (k == 1) ? cf.b0() : f;
      report.depth_used = k - 1;
      report.converged = report.terminated = true;
      report.residual = 0.0;
      return report;
    }
    d = t.b + t.a * d;
    if (is_zero(d)) {
      d = tiny;
      ++report.tiny_substitutions;
    }
    c = t.b + t.a / c;
    if (is_zero(c)) {
      c = tiny;
      ++report.tiny_substitutions;
    }
    d = one / d;
    T next = f * (c * d);
    report.depth_used = k;
    report.residual = relative_change(next, f);
    const bool done = nearly_equal(next, f, tol);
    f = std::move(next);
    if (done) {
      report.converged = true;
      break;
    }
  }
  report.value = f;
  return report;
}

/// Value of the fraction truncated after `depth` levels, folded from the
/// innermost level outwards (tail taken as zero).
template <class T>
T eval_backward(const CFStream<T>& cf, std::size_t depth) {
  if (depth < 1) throw domain_error("eval_backward: depth must be at least 1");
  std::vector<CFTerm<T>> levels;
  levels.reserve(depth);
  for (std::size_t k = 1; k <= depth; ++k) {
    CFTerm<T> t = cf.term(k);
    if (is_zero(t.a)) break;
    levels.push_back(std::move(t));
  }
  if (levels.empty()) return cf.b0();
  T acc = levels.back().b;
  for (std::size_t i = levels.size(); i-- > 0;) {
    const T& below = (i == 0) ? cf.b0() : levels[i - 1].b;
    acc = below + checked_div(levels[i].a, acc);
  }
  return acc;
}

/// The sub-fraction b_s + a_{s+1}/(b_{s+1} + ...).
template <class T>
CFStream<T> tail(const CFStream<T>& cf, std::size_t start_level) {
  if (start_level < 1) throw domain_error("tail: start_level must be at least 1");
  return CFStream<T>(cf.term(start_level).b,
                     [cf, start_level](std::size_t k) { return cf.term(start_level + k); });
}

/// a'_k = c_k c_{k-1} a_k,  b'_k = c_k b_k,  b'_0 = c_0 b_0.
/// Every convergent value is multiplied by c_0, so c_0 = 1 preserves them.
template <class T>
CFStream<T> equivalence_transform(const CFStream<T>& cf, std::function<T(std::size_t)> scale) {
  auto factor = [scale](std::size_t k) {
    T c = scale(k);
    if (is_zero(c)) throw domain_error("equivalence_transform: scale factor c_" + std::to_string(k) + " is zero");
    return c;
  };
  T b0 = factor(0) * cf.b0();
  return CFStream<T>(std::move(b0), [cf, factor](std::size_t k) -> CFTerm<T> {
    const T ck = factor(k);
    const T ck_prev = factor(k - 1);
    CFTerm<T> t = cf.term(k);
    return {ck * ck_prev * t.a, ck * t.b};
  });
}

/// Finite list of factors c_0, c_1, ...; levels past the list use 1.
template <class T>
CFStream<T> equivalence_transform(const CFStream<T>& cf, std::vector<T> factors) {
  auto shared = std::make_shared<const std::vector<T>>(std::move(factors));
  const T one = constant_like(cf.b0(), BigRational(1));
  return equivalence_transform<T>(cf, [shared, one](std::size_t k) { return k < shared->size() ? (*shared)[k] : one; });
}

}  // namespace eulercf

#endif  // EULERCF_CF_HPP
