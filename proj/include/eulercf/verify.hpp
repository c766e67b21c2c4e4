#ifndef EULERCF_VERIFY_HPP
#define EULERCF_VERIFY_HPP

// Identity suite: every relation between the families, their tails and their
// closed forms, checked at fixed sample points. Used by `eulercf verify`.

#include "eulercf/cf.hpp"
#include "eulercf/families.hpp"
#include "eulercf/numeric.hpp"
#include "eulercf/oracle.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eulercf::verify {

struct CheckResult {
  std::string name;
  std::string group;
  Mode mode = Mode::float64;
  bool passed = false;
  double error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct Options {
  std::optional<std::string> only;  ///< group filter
  std::optional<Mode> mode;         ///< mode filter
};

inline const std::vector<std::string>& groups() {
  static const std::vector<std::string> kGroups = {
      "tail",        "chain",     "equivalence", "symmetric",   "n-negation",      "termination",
      "imaginary",   "tan-multiple", "limits",   "determinant", "backward",        "lentz-agreement",
  };
  return kGroups;
}

namespace detail {

struct Measured {
  double error;
  bool passed;
  std::string detail = {};
};

struct Check {
  std::string name;
  std::string group;
  Mode mode;
  double tolerance;
  std::function<Measured(double tolerance)> run;
};

inline double rel_error(double value, double expected) {
  const double diff = std::fabs(value - expected);
  return expected == 0.0 ? diff : diff / std::fabs(expected);
}

inline Measured within(double value, double expected, double rel_tol) {
  const double err = rel_error(value, expected);
  return {err, err <= rel_tol};
}

inline Measured exactly(const BigRational& value, const BigRational& expected) {
  const double err = magnitude(BigRational(value - expected));
  return {err, value == expected, value == expected ? "" : to_text(value) + " != " + to_text(expected)};
}

inline double lentz_value(const CFStream<double>& cf, std::size_t max_depth = kDefaultMaxDepth) {
  const auto report = eval_lentz(cf, ToleranceSpec(1e-15, 0.0), max_depth);
  return report.value;
}

inline BigRational exact_value(const CFStream<BigRational>& cf, std::size_t depth = 64) {
  return convergents(cf, depth).back().value();
}

inline BigRational q(long long num, long long den = 1) { return BigRational(num, den); }

/// 1 + y + (n^2-1)y^2/(3(1+y) + (n^2-4)y^2/(5(1+y) + ...)): the form reached
/// after the substitution x = 2y, before dividing through by 1 + y.
template <class T>
CFStream<T> substituted_stream(const Exponent& n, const T& y) {
  const BigRational n2 = n.squared();
  const T one = constant_like(y, BigRational(1));
  const T shift = one + y;
  const T w = y * y;
  return CFStream<T>(shift, [n2, w, shift](std::size_t k) -> CFTerm<T> {
    const BigRational kk(static_cast<long long>(k));
    return {constant_like(w, BigRational(n2 - kk * kk)) * w,
            constant_like(w, BigRational(static_cast<long long>(2 * k + 1))) * shift};
  });
}

template <class T>
std::vector<std::pair<std::string, CFStream<T>>> sample_streams(const T& like) {
  auto c = [&](long long num, long long den) { return constant_like(like, BigRational(num, den)); };
  return {
      {"lagrange-binomial(1/2,1/4)", lagrange_binomial(Exponent(q(1, 2)), c(1, 4))},
      {"uniform-binomial(1/3,1/5)", uniform_binomial(Exponent(q(1, 3)), c(1, 5))},
      {"symmetric-binomial(5/2,1/3)", symmetric_binomial(Exponent(q(5, 2)), c(1, 3))},
      {"tan-multiple(5/2,1/5)", tan_multiple(Exponent(q(5, 2)), c(1, 5))},
      {"arctan(1/2)", arctan_cf(c(1, 2))},
      {"tan(1/2)", tan_cf(c(1, 2))},
      {"log-ratio(1/3)", log_ratio_cf(c(1, 3))},
      {"coth-scaled(2/3)", coth_scaled_cf(c(2, 3))},
  };
}

inline std::vector<Check> build_checks() {
  std::vector<Check> checks;
  auto add = [&](std::string name, std::string group, Mode mode, double tol, std::function<Measured(double)> run) {
    checks.push_back({std::move(name), std::move(group), mode, tol, std::move(run)});
  };
  const Mode F = Mode::float64;
  const Mode R = Mode::big_rational;

  // --- tails A, B, C of the interrupted-law fraction
  add("A: 1 + nx/A = (1+x)^n at n=1/2, x=1/4", "tail", F, 1e-11, [](double tol) {
    const double n = 0.5, x = 0.25;
    const auto cf = lagrange_binomial(Exponent(n), x);
    const double a = lentz_value(tail(cf, 1));
    return within(1.0 + n * x / a, std::pow(1.0 + x, n), tol);
  });
  add("A = 1 + (1-n)x/2 + ((n^2-1)x^2/4)/(B + (1+n)x/2) at n=1/2, x=1/4", "tail", F, 1e-11, [](double tol) {
    const double n = 0.5, x = 0.25;
    const auto cf = lagrange_binomial(Exponent(n), x);
    const double a = lentz_value(tail(cf, 1));
    const double b = lentz_value(tail(cf, 3));
    return within(1.0 + (1.0 - n) * x / 2.0 + ((n * n - 1.0) * x * x / 4.0) / (b + (1.0 + n) * x / 2.0), a, tol);
  });
  add("B = 3 + (2-n)x/2 + ((n^2-4)x^2/4)/(C + (2+n)x/2) at n=1/2, x=1/4", "tail", F, 1e-11, [](double tol) {
    const double n = 0.5, x = 0.25;
    const auto cf = lagrange_binomial(Exponent(n), x);
    const double b = lentz_value(tail(cf, 3));
    const double c = lentz_value(tail(cf, 5));
    return within(3.0 + (2.0 - n) * x / 2.0 + ((n * n - 4.0) * x * x / 4.0) / (c + (2.0 + n) * x / 2.0), b, tol);
  });
  add("tail reductions exact at n=3, x=1/2", "tail", R, 0.0, [](double) {
    const BigRational n = q(3), x = q(1, 2);
    const auto cf = lagrange_binomial(Exponent(n), x);
    const BigRational a = exact_value(tail(cf, 1));
    const BigRational b = exact_value(tail(cf, 3));
    const BigRational rhs = 1 + (1 - n) * x / 2 + ((n * n - 1) * x * x / 4) / (b + (1 + n) * x / 2);
    return exactly(rhs, a);
  });

  // --- interrupted law -> uniform law -> symmetric form
  add("lagrange-binomial(1/2, 1/4) = (1+x)^n", "chain", F, 1e-11, [](double tol) {
    return within(lentz_value(lagrange_binomial(Exponent(0.5), 0.25)),
                  oracle::binomial_power(Exponent(0.5), 0.25).real(), tol);
  });
  add("uniform-binomial(1/2, 1/4) = (1+x)^n", "chain", F, 1e-11, [](double tol) {
    return within(lentz_value(uniform_binomial(Exponent(0.5), 0.25)),
                  oracle::binomial_power(Exponent(0.5), 0.25).real(), tol);
  });
  add("symmetric-binomial(1/2, x/(2+x)) = closed form at x=1/4", "chain", F, 1e-11, [](double tol) {
    const double z = 0.25 / 2.25;
    return within(lentz_value(symmetric_binomial(Exponent(0.5), z)),
                  oracle::symmetric_lhs(Exponent(0.5), z).real(), tol);
  });
  add("lagrange = uniform for n in {1/3, 5/2, -7/4}, x=0.3", "chain", F, 1e-11, [](double tol) {
    double worst = 0.0;
    for (double n : {1.0 / 3.0, 2.5, -1.75}) {
      worst = std::max(worst, rel_error(lentz_value(lagrange_binomial(Exponent(n), 0.3)),
                                        lentz_value(uniform_binomial(Exponent(n), 0.3))));
    }
    return Measured{worst, worst <= tol};
  });

  // --- x = 2y substitution and division by 1 + y
  add("ny(1+(1+2y)^n)/((1+2y)^n-1) = substituted fraction", "equivalence", F, 1e-11, [](double tol) {
    double worst = 0.0;
    for (auto [n, y] : {std::pair{0.5, 0.125}, std::pair{2.5, 0.1}, std::pair{1.0 / 3.0, 0.3}}) {
      const double p = std::pow(1.0 + 2.0 * y, n);
      const double lhs = n * y * (1.0 + p) / (p - 1.0);
      worst = std::max(worst, rel_error(lentz_value(substituted_stream(Exponent(n), y)), lhs));
    }
    return Measured{worst, worst <= tol};
  });
  add("lhs = (1+y) * value of fraction divided through by 1+y", "equivalence", F, 1e-11, [](double tol) {
    double worst = 0.0;
    for (auto [n, y] : {std::pair{0.5, 0.125}, std::pair{2.5, 0.1}, std::pair{1.0 / 3.0, 0.3}}) {
      const double p = std::pow(1.0 + 2.0 * y, n);
      const double lhs = n * y * (1.0 + p) / (p - 1.0);
      const auto divided =
          equivalence_transform<double>(substituted_stream(Exponent(n), y), [y](std::size_t) { return 1.0 / (1.0 + y); });
      worst = std::max(worst, rel_error((1.0 + y) * lentz_value(divided), lhs));
    }
    return Measured{worst, worst <= tol};
  });
  add("divided fraction = symmetric-binomial(n, y/(1+y)) level by level", "equivalence", R, 0.0, [](double) {
    const BigRational y = q(1, 4);
    const Exponent n(q(5, 2));
    const auto divided =
        equivalence_transform<BigRational>(substituted_stream(n, y), [y](std::size_t) { return BigRational(1 / (1 + y)); });
    const auto symmetric = symmetric_binomial(n, BigRational(y / (1 + y)));
    if (divided.b0() != symmetric.b0()) return Measured{1.0, false, "b0 differs"};
    for (std::size_t k = 1; k <= 20; ++k) {
      const auto s = divided.term(k), t = symmetric.term(k);
      if (s.a != t.a || s.b != t.b) return Measured{1.0, false, "level " + std::to_string(k) + " differs"};
    }
    return Measured{0.0, true};
  });
  add("c_0 = 1 equivalence keeps every convergent value", "equivalence", R, 0.0, [](double) {
    const BigRational y = q(1, 3);
    const auto original = substituted_stream(Exponent(q(1, 2)), y);
    const auto scaled = equivalence_transform<BigRational>(
        original, [y](std::size_t k) { return k == 0 ? BigRational(1) : BigRational(1 / (1 + y)); });
    const auto a = convergents(original, 20), b = convergents(scaled, 20);
    for (std::size_t k = 0; k < a.items.size(); ++k) {
      if (a.items[k].value() != b.items[k].value()) return Measured{1.0, false, "convergent " + std::to_string(k)};
    }
    return Measured{0.0, true};
  });

  // --- symmetric fraction against its closed form
  add("symmetric-binomial = closed form at (5/2,0.3), (1/2,0.1), (7/3,-0.4)", "symmetric", F, 1e-12, [](double tol) {
    double worst = 0.0;
    for (auto [n, z] : {std::pair{2.5, 0.3}, std::pair{0.5, 0.1}, std::pair{7.0 / 3.0, -0.4}}) {
      worst = std::max(worst, rel_error(lentz_value(symmetric_binomial(Exponent(n), z)),
                                        oracle::symmetric_lhs(Exponent(n), z).real()));
    }
    return Measured{worst, worst <= tol};
  });

  // --- n -> -n
  add("symmetric-binomial levels identical for n and -n", "n-negation", R, 0.0, [](double) {
    for (const BigRational& n : {q(5, 2), q(3), q(1, 3), q(-7, 4)}) {
      const auto plus = symmetric_binomial(Exponent(n), q(2, 7));
      const auto minus = symmetric_binomial(-Exponent(n), q(2, 7));
      for (std::size_t k = 1; k <= 20; ++k) {
        const auto s = plus.term(k), t = minus.term(k);
        if (s.a != t.a || s.b != t.b) return Measured{1.0, false, "n=" + to_text(n) + " level " + std::to_string(k)};
      }
    }
    return Measured{0.0, true};
  });
  add("closed form unchanged under n -> -n", "n-negation", R, 0.0, [](double) {
    for (auto [n, z] : {std::pair{q(3), q(1, 2)}, std::pair{q(4), q(2, 5)}, std::pair{q(7), q(-1, 3)}}) {
      const auto a = oracle::symmetric_lhs(Exponent(n), z).value.as_rational();
      const auto b = oracle::symmetric_lhs(Exponent(BigRational(-n)), z).value.as_rational();
      if (a != b) return exactly(a, b);
    }
    return Measured{0.0, true};
  });
  add("symmetric-binomial value unchanged under n -> -n (float)", "n-negation", F, 0.0, [](double) {
    const double a = lentz_value(symmetric_binomial(Exponent(2.5), 0.3));
    const double b = lentz_value(symmetric_binomial(Exponent(-2.5), 0.3));
    return Measured{std::fabs(a - b), a == b};
  });
  add("lagrange-binomial exact for n and -n, n=1..3", "n-negation", R, 0.0, [](double) {
    for (long long n : {1, 2, 3, -1, -2, -3}) {
      for (const BigRational& x : {q(1, 2), q(1, 3), q(-1, 4)}) {
        const BigRational cf = exact_value(lagrange_binomial(Exponent(q(n)), x));
        const BigRational expected = oracle::binomial_power(Exponent(q(n)), x).value.as_rational();
        if (cf != expected) return exactly(cf, expected);
      }
    }
    return Measured{0.0, true};
  });

  // --- exact values for small integer n
  add("n=+-1: value 1 at z in {1/3, 2/5, -3/7}", "termination", R, 0.0, [](double) {
    for (long long n : {1, -1}) {
      for (const BigRational& z : {q(1, 3), q(2, 5), q(-3, 7)}) {
        const auto m = exactly(exact_value(symmetric_binomial(Exponent(q(n)), z)), q(1));
        if (!m.passed) return m;
      }
    }
    return Measured{0.0, true};
  });
  add("n=+-2: value 1+z^2 at z in {1/3, 2/5}", "termination", R, 0.0, [](double) {
    for (long long n : {2, -2}) {
      for (const BigRational& z : {q(1, 3), q(2, 5)}) {
        const auto m = exactly(exact_value(symmetric_binomial(Exponent(q(n)), z)), BigRational(1 + z * z));
        if (!m.passed) return m;
      }
    }
    return Measured{0.0, true};
  });
  add("n=+-3: value 3(1+3z^2)/(3+z^2) at z in {1/2, 1/4}", "termination", R, 0.0, [](double) {
    for (long long n : {3, -3}) {
      for (const BigRational& z : {q(1, 2), q(1, 4)}) {
        const BigRational expected = 3 * (1 + 3 * z * z) / (3 + z * z);
        const auto m = exactly(exact_value(symmetric_binomial(Exponent(q(n)), z)), expected);
        if (!m.passed) return m;
      }
    }
    return Measured{0.0, true};
  });
  add("termination levels: symmetric |n|, lagrange 2n / 2|n|+1, uniform |n|+1", "termination", R, 0.0, [](double) {
    auto level = [](const CFStream<BigRational>& cf) { return convergents(cf, 64).termination_level.value_or(0); };
    for (long long n = 1; n <= 6; ++n) {
      if (level(symmetric_binomial(Exponent(q(n)), q(1, 3))) != static_cast<std::size_t>(n)) {
        return Measured{1.0, false, "symmetric n=" + std::to_string(n)};
      }
    }
    for (long long n : {1, 2, 3, 4, -1, -2, -3, -4}) {
      const std::size_t want = n > 0 ? 2 * n : 2 * (-n) + 1;
      if (level(lagrange_binomial(Exponent(q(n)), q(1, 3))) != want) {
        return Measured{1.0, false, "lagrange n=" + std::to_string(n)};
      }
      const std::size_t want_uniform = static_cast<std::size_t>(n > 0 ? n : -n) + 1;
      if (level(uniform_binomial(Exponent(q(n)), q(1, 3))) != want_uniform) {
        return Measured{1.0, false, "uniform n=" + std::to_string(n)};
      }
    }
    return Measured{0.0, true};
  });

  // --- imaginary argument
  add("symmetric-binomial(5/2, 0.4i) is real and equals nt/tan(n arctan t)", "imaginary", Mode::complex64, 1e-10,
      [](double tol) {
        const double n = 2.5, t = 0.4;
        const auto report = eval_lentz(symmetric_binomial(Exponent(n), Complex(0.0, t)), ToleranceSpec::standard());
        const double expected = n * t / std::tan(n * std::atan(t));
        const double err = std::fabs(report.value.real() - expected);
        const bool real = std::fabs(report.value.imag()) < 1e-12;
        return Measured{err, real && err <= tol, real ? "" : "imaginary part too large"};
      });

  // --- tangent of a multiple angle
  add("tan 2phi = 2t/(1-t^2) at t=1/4 -> 8/15", "tan-multiple", R, 0.0, [](double) {
    return exactly(exact_value(tan_multiple(Exponent(q(2)), q(1, 4))), q(8, 15));
  });
  add("tan 3phi = (3t-t^3)/(1-3t^2) at t=1/5 -> 37/55", "tan-multiple", R, 0.0, [](double) {
    return exactly(exact_value(tan_multiple(Exponent(q(3)), q(1, 5))), q(37, 55));
  });
  add("tan-multiple(5/2, 0.2) = tan(n arctan t)", "tan-multiple", F, 1e-11, [](double tol) {
    return within(lentz_value(tan_multiple(Exponent(2.5), 0.2)), oracle::tan_multiple_lhs(Exponent(2.5), 0.2).real(),
                  tol);
  });
  add("small n: tan-multiple(n, t)/n -> arctan-cf(t) at n=1e-6", "tan-multiple", F, 1e-5, [](double tol) {
    double worst = 0.0;
    for (double t : {0.2, 0.5, 1.0}) {
      const double n = 1e-6;
      const double angle = lentz_value(tan_multiple(Exponent(n), t)) / n;
      worst = std::max(worst, std::fabs(angle - lentz_value(arctan_cf(t))));
    }
    return Measured{worst, worst <= tol};
  });

  // --- limiting families
  add("arctan-cf(1) = pi/4 by depth 50", "limits", F, 1e-12, [](double tol) {
    const double v = eval_backward(arctan_cf(1.0), 50);
    return Measured{std::fabs(v - std::atan(1.0)), std::fabs(v - std::atan(1.0)) <= tol};
  });
  add("tan-cf(1) = tan 1 by depth 30", "limits", F, 1e-12, [](double tol) {
    const double v = eval_backward(tan_cf(1.0), 30);
    return Measured{std::fabs(v - std::tan(1.0)), std::fabs(v - std::tan(1.0)) <= tol};
  });
  add("log-ratio-cf(1/3) = ln 2 by depth 40", "limits", F, 1e-12, [](double tol) {
    const double v = eval_backward(log_ratio_cf(1.0 / 3.0), 40);
    return Measured{std::fabs(v - std::log(2.0)), std::fabs(v - std::log(2.0)) <= tol};
  });
  add("coth-scaled-cf(1) = (e^2+1)/(e^2-1) by depth 20", "limits", F, 1e-13, [](double tol) {
    const double e2 = std::exp(2.0);
    const double v = eval_backward(coth_scaled_cf(1.0), 20);
    return Measured{std::fabs(v - (e2 + 1.0) / (e2 - 1.0)), std::fabs(v - (e2 + 1.0) / (e2 - 1.0)) <= tol};
  });
  add("series ratio (20 terms) = v coth v at v=0.7", "limits", F, 1e-12, [](double tol) {
    const double s = oracle::series_ratio_coth(0.7, 20).real();
    const double c = oracle::coth_scaled_lhs(0.7).real();
    return Measured{std::fabs(s - c), std::fabs(s - c) <= tol};
  });
  add("coth-scaled-cf(0.7) = series ratio", "limits", F, 1e-12, [](double tol) {
    return within(lentz_value(coth_scaled_cf(0.7)), oracle::series_ratio_coth(0.7, 20).real(), tol);
  });

  // --- convergent machinery on every family
  add("determinant identity, levels 1..20, all families", "determinant", R, 0.0, [](double) {
    for (const auto& [name, cf] : sample_streams(BigRational(0))) {
      const auto seq = convergents(cf, 20);
      BigRational product(1);
      for (std::size_t k = 1; k < seq.items.size(); ++k) {
        product *= cf.term(k).a;
        const auto& cur = seq.items[k];
        const auto& prev = seq.items[k - 1];
        const BigRational det = cur.p * prev.q - prev.p * cur.q;
        const BigRational expected = (k % 2 == 1) ? product : BigRational(-product);
        if (det != expected) return Measured{1.0, false, name + " level " + std::to_string(k)};
      }
    }
    return Measured{0.0, true};
  });
  add("backward folding = forward convergent, depths 1..20, all families", "backward", R, 0.0, [](double) {
    for (const auto& [name, cf] : sample_streams(BigRational(0))) {
      const auto seq = convergents(cf, 20);
      for (std::size_t d = 1; d <= 20; ++d) {
        const BigRational forward = seq.items[std::min(d, seq.items.size() - 1)].value();
        if (eval_backward(cf, d) != forward) return Measured{1.0, false, name + " depth " + std::to_string(d)};
      }
    }
    return Measured{0.0, true};
  });
  add("Lentz and convergents agree within 10x tolerance, all families", "lentz-agreement", F, 1e-11, [](double) {
    const ToleranceSpec tol = ToleranceSpec::standard();
    const ToleranceSpec loose(10.0 * tol.rel_tol(), 10.0 * tol.abs_tol());
    double worst = 0.0;
    for (const auto& [name, cf] : sample_streams(0.0)) {
      const auto a = eval_lentz(cf, tol);
      const auto b = eval_convergents(cf, tol);
      if (!a.converged || !b.converged) return Measured{1.0, false, name + " did not converge"};
      worst = std::max(worst, rel_error(a.value, b.value));
      if (!nearly_equal(a.value, b.value, loose)) return Measured{worst, false, name};
    }
    return Measured{worst, true};
  });

  return checks;
}

}  // namespace detail

/// Runs the checks selected by `options`; failures are reported, never thrown.
inline std::vector<CheckResult> run_identity_suite(const Options& options = {}) {
  std::vector<CheckResult> results;
  for (auto& check : detail::build_checks()) {
    if (options.only && *options.only != check.group) continue;
    if (options.mode && *options.mode != check.mode) continue;
    CheckResult r{check.name, check.group, check.mode, false, 0.0, check.tolerance, {}};
    try {
      const auto m = check.run(check.tolerance);
      r.passed = m.passed;
      r.error = m.error;
      r.detail = m.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.error = std::numeric_limits<double>::infinity();
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace eulercf::verify

#endif  // EULERCF_VERIFY_HPP
