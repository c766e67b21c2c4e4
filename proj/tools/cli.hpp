#ifndef EULERCF_TOOLS_CLI_HPP
#define EULERCF_TOOLS_CLI_HPP

// Command-line front end: eval, table, verify, compare.
//
// Exit codes: 0 success, 1 usage or domain error, 2 non-convergence.

#include "eulercf/eulercf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace eulercf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotConverged = 2;

enum class Method { convergents, lentz, backward };
enum class Format { csv, json };

struct usage_error : error {
  using error::error;
};

/// Parsed flags of one invocation.
struct CommandConfig {
  std::string subcommand;
  std::string family_name;
  std::optional<std::string> n_text;
  std::string arg_text;
  Mode mode = Mode::float64;
  std::optional<Method> method;
  std::optional<std::size_t> depth;
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  Format format = Format::csv;
  std::optional<std::string> output;
  std::optional<std::string> only;
  bool mode_given = false;
};

inline Mode parse_mode(const std::string& text) {
  if (text == "float" || text == "float64" || text == "double") return Mode::float64;
  if (text == "rational" || text == "bigrational" || text == "exact") return Mode::big_rational;
  if (text == "complex" || text == "complex64") return Mode::complex64;
  throw usage_error("unknown mode '" + text + "' (float | rational | complex)");
}

inline Method parse_method(const std::string& text) {
  if (text == "convergents") return Method::convergents;
  if (text == "lentz") return Method::lentz;
  if (text == "backward") return Method::backward;
  throw usage_error("unknown method '" + text + "' (convergents | lentz | backward)");
}

inline Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw usage_error("unknown format '" + text + "' (csv | json)");
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace detail {

inline FamilySpec family_from(const CommandConfig& cfg) {
  const auto family = parse_family(cfg.family_name);
  if (!family) {
    std::string names;
    for (Family f : kAllFamilies) names += (names.empty() ? "" : ", ") + std::string(family_name(f));
    throw usage_error("unknown family '" + cfg.family_name + "' (one of: " + names + ")");
  }
  FamilySpec spec{*family, std::nullopt, parse_scalar(cfg.arg_text, cfg.mode)};
  if (cfg.n_text) spec.n = parse_scalar(*cfg.n_text, cfg.mode);
  spec.validate();
  return spec;
}

inline Method method_for(const CommandConfig& cfg) {
  const Method m = cfg.method.value_or(cfg.mode == Mode::big_rational ? Method::convergents : Method::lentz);
  if (m == Method::lentz && cfg.mode == Mode::big_rational) {
    throw usage_error("--method lentz is not available in rational mode; use convergents or backward");
  }
  if (m == Method::backward && !cfg.depth) throw usage_error("--method backward requires --depth");
  return m;
}

/// Exact fraction text for rationals, 17 significant digits otherwise.
inline std::string value_text(const ScalarValue& v) {
  if (v.mode() == Mode::float64) return format_double(v.as_float());
  return to_text(v);
}

inline nlohmann::json value_json(const ScalarValue& v) {
  if (v.mode() != Mode::float64) return to_text(v);
  const double d = v.as_float();
  if (!std::isfinite(d)) return nullptr;
  return d;
}

inline nlohmann::json optional_json(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

inline std::string optional_text(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

struct Errors {
  std::optional<double> abs_err;
  std::optional<double> rel_err;
};

/// |value - reference| and its relative form; exact when both are rationals.
inline Errors errors_against(const ScalarValue& value, const ScalarValue& reference) {
  if (value.mode() == Mode::big_rational && reference.mode() == Mode::big_rational) {
    const BigRational diff = abs(value.as_rational() - reference.as_rational());
    const double abs_err = to_double(diff);
    if (reference.as_rational() == 0) return {abs_err, std::nullopt};
    return {abs_err, to_double(BigRational(diff / abs(reference.as_rational())))};
  }
  const Complex a = value.to_complex();
  const Complex b = reference.to_complex();
  const double abs_err = std::abs(a - b);
  const double scale = std::abs(b);
  if (scale == 0.0) return {abs_err, std::nullopt};
  return {abs_err, abs_err / scale};
}

inline std::optional<oracle::OracleResult> try_oracle(const FamilySpec& spec) {
  try {
    return oracle::family_oracle(spec);
  } catch (const error&) {
    return std::nullopt;
  }
}

inline nlohmann::json params_json(const CommandConfig& cfg, const FamilySpec& spec) {
  nlohmann::json params;
  params["n"] = spec.n ? nlohmann::json(to_text(*spec.n)) : nlohmann::json(nullptr);
  params["arg"] = to_text(spec.arg);
  params["mode"] = std::string(mode_name(cfg.mode));
  if (cfg.depth) params["depth"] = *cfg.depth;
  return params;
}

inline ToleranceSpec tolerance_for(const CommandConfig& cfg) {
  try {
    return ToleranceSpec(cfg.rel_tol, cfg.abs_tol);
  } catch (const domain_error& e) {
    throw usage_error(e.what());
  }
}

}  // namespace detail

inline int run_eval(const CommandConfig& cfg, std::ostream& out) {
  const FamilySpec spec = detail::family_from(cfg);
  const Method method = detail::method_for(cfg);
  const ToleranceSpec tol = detail::tolerance_for(cfg);
  const CFStream<ScalarValue> cf = make_stream(spec);

  EvalReport<ScalarValue> report;
  switch (method) {
    case Method::convergents: report = eval_convergents(cf, tol, cfg.depth.value_or(kDefaultMaxDepth)); break;
    case Method::lentz: report = eval_lentz(cf, tol, cfg.depth.value_or(kDefaultMaxDepth)); break;
    case Method::backward: {
      const auto seq = convergents(cf, *cfg.depth);
      report.value = eval_backward(cf, *cfg.depth);
      report.depth_used = seq.back().k;
      report.terminated = seq.terminated();
      if (report.terminated) {
        report.residual = 0.0;
      } else if (seq.items.size() >= 2 && !seq.items[seq.items.size() - 2].is_pole()) {
        report.residual = relative_change(report.value, seq.items[seq.items.size() - 2].value());
        report.converged = nearly_equal(report.value, seq.items[seq.items.size() - 2].value(), tol);
      } else {
        report.residual = std::numeric_limits<double>::infinity();
      }
      report.converged = report.converged || report.terminated;
      break;
    }
  }

  if (cfg.format == Format::csv) {
    out << "value,depth_used,converged,terminated,residual\n";
    out << csv_field(detail::value_text(report.value)) << ',' << report.depth_used << ','
        << (report.converged ? "true" : "false") << ','
        << (report.terminated ? "true" : "false") << ',' << format_double(report.residual) << '\n';
  } else {
    nlohmann::json j;
    j["value"] = detail::value_json(report.value);
    j["depth_used"] = report.depth_used;
    j["converged"] = report.converged;
    j["terminated"] = report.terminated;
    j["residual"] = detail::optional_json(report.residual);
    out << j.dump(2) << '\n';
  }
  return (report.converged || report.terminated) ? kExitOk : kExitNotConverged;
}

inline int run_table(const CommandConfig& cfg, std::ostream& out) {
  if (!cfg.depth) throw usage_error("table requires --depth");
  const FamilySpec spec = detail::family_from(cfg);
  const auto reference = detail::try_oracle(spec);
  const auto seq = convergents(make_stream(spec), *cfg.depth);

  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format == Format::csv) out << "k,p,q,value,abs_err,rel_err\n";
  for (const auto& c : seq.items) {
    std::optional<ScalarValue> value;
    if (!c.is_pole()) value = c.value();
    detail::Errors errs;
    if (value && reference) errs = detail::errors_against(*value, reference->value);
    const std::string shown = value ? detail::value_text(*value) : "inf";
    if (cfg.format == Format::csv) {
      out << c.k << ',' << to_text(c.p) << ',' << to_text(c.q) << ',' << shown << ','
          << detail::optional_text(errs.abs_err) << ',' << detail::optional_text(errs.rel_err) << '\n';
    } else {
      rows.push_back({{"k", c.k},
                      {"p", to_text(c.p)},
                      {"q", to_text(c.q)},
                      {"value", value ? detail::value_json(*value) : nlohmann::json(nullptr)},
                      {"abs_err", detail::optional_json(errs.abs_err)},
                      {"rel_err", detail::optional_json(errs.rel_err)}});
    }
  }
  if (cfg.format == Format::json) {
    nlohmann::json j{{"family", std::string(family_name(spec.family))},
                     {"params", detail::params_json(cfg, spec)},
                     {"rows", rows}};
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

inline int run_compare(const CommandConfig& cfg, std::ostream& out) {
  if (!cfg.depth) throw usage_error("compare requires --depth");
  const FamilySpec spec = detail::family_from(cfg);
  const oracle::OracleResult reference = oracle::family_oracle(spec);
  const auto seq = convergents(make_stream(spec), *cfg.depth);

  nlohmann::json rows = nlohmann::json::array();
  if (cfg.format == Format::csv) out << "depth,cf_value,oracle_value,rel_err\n";
  for (std::size_t d = 1; d <= *cfg.depth; ++d) {
    // Past termination the value stays at the terminated convergent.
    const auto& c = seq.items[std::min(d, seq.items.size() - 1)];
    std::optional<ScalarValue> value;
    if (!c.is_pole()) value = c.value();
    detail::Errors errs;
    if (value) errs = detail::errors_against(*value, reference.value);
    if (cfg.format == Format::csv) {
      out << d << ',' << (value ? detail::value_text(*value) : "inf") << ','
          << detail::value_text(reference.value) << ',' << detail::optional_text(errs.rel_err) << '\n';
    } else {
      rows.push_back({{"depth", d},
                      {"cf_value", value ? detail::value_json(*value) : nlohmann::json(nullptr)},
                      {"oracle_value", detail::value_json(reference.value)},
                      {"rel_err", detail::optional_json(errs.rel_err)}});
    }
  }
  if (cfg.format == Format::json) {
    nlohmann::json j{{"family", std::string(family_name(spec.family))},
                     {"params", detail::params_json(cfg, spec)},
                     {"oracle_method", std::string(oracle::method_name(reference.method))},
                     {"rows", rows}};
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

inline int run_verify(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  verify::Options options;
  if (cfg.only) {
    const auto& g = verify::groups();
    if (std::find(g.begin(), g.end(), *cfg.only) == g.end()) {
      std::string names;
      for (const auto& name : g) names += (names.empty() ? "" : ", ") + name;
      throw usage_error("unknown check group '" + *cfg.only + "' (one of: " + names + ")");
    }
    options.only = cfg.only;
  }
  if (cfg.mode_given) options.mode = cfg.mode;
  const auto results = verify::run_identity_suite(options);
  if (results.empty()) throw usage_error("no checks match the given --only/--mode filters");

  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;

  if (cfg.format == Format::csv) {
    out << "check,group,mode,passed,error,tolerance,detail\n";
    for (const auto& r : results) {
      out << csv_field(r.name) << ',' << r.group << ',' << mode_name(r.mode) << ',' << (r.passed ? "true" : "false")
          << ',' << format_double(r.error) << ',' << format_double(r.tolerance) << ',' << csv_field(r.detail) << '\n';
    }
  } else {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results) {
      checks.push_back({{"check", r.name},
                        {"group", r.group},
                        {"mode", std::string(mode_name(r.mode))},
                        {"passed", r.passed},
                        {"error", detail::optional_json(r.error)},
                        {"tolerance", r.tolerance},
                        {"detail", r.detail}});
    }
    out << nlohmann::json{{"checks", checks}, {"passed", passed == results.size()}}.dump(2) << '\n';
  }
  err << passed << '/' << results.size() << " checks passed\n";
  return passed == results.size() ? kExitOk : kExitUsage;
}

/// Parses argv and runs the selected subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continued fractions for binomial powers and their limits (tan, arctan, log, coth)"};
  app.require_subcommand(1);

  CommandConfig cfg;
  std::string mode_text = "float";
  std::string method_text;
  std::string format_text = "csv";

  auto add_family_flags = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family_name,
                    "lagrange-binomial | uniform-binomial | symmetric-binomial | tan-multiple | arctan | tan | "
                    "log-ratio | coth-scaled")
        ->required();
    sub->add_option("--n", cfg.n_text, "exponent n (binomial and tan-multiple families)");
    sub->add_option("--arg", cfg.arg_text, "argument: x, z, t, theta or v depending on the family")->required();
    sub->add_option("--mode", mode_text, "float | rational | complex")->default_val("float");
    sub->add_option("--depth", cfg.depth, "max depth (eval), rows (table, compare)");
    sub->add_option("--format", format_text, "csv | json")->default_val("csv");
    sub->add_option("--output,-o", cfg.output, "write to this file instead of standard output");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one family at one argument");
  add_family_flags(eval);
  eval->add_option("--method", method_text, "convergents | lentz | backward");
  eval->add_option("--tol", cfg.rel_tol, "relative tolerance")->default_val(1e-12);
  eval->add_option("--abs-tol", cfg.abs_tol, "absolute tolerance")->default_val(1e-14);

  CLI::App* table = app.add_subcommand("table", "convergent table with errors against the reference value");
  add_family_flags(table);

  CLI::App* compare = app.add_subcommand("compare", "error against the reference value by depth");
  add_family_flags(compare);

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the identity suite");
  verify_cmd->add_option("--only", cfg.only, "run a single group of checks");
  verify_cmd->add_option("--mode", mode_text, "run only checks in this mode");
  verify_cmd->add_option("--format", format_text, "csv | json")->default_val("csv");
  verify_cmd->add_option("--output,-o", cfg.output, "write to this file instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.mode = parse_mode(mode_text);
    cfg.mode_given = verify_cmd->count("--mode") > 0;
    cfg.format = parse_format(format_text);
    if (!method_text.empty()) cfg.method = parse_method(method_text);

    std::ofstream file;
    std::ostream* sink = &out;
    if (cfg.output) {
      file.open(*cfg.output, std::ios::binary);
      if (!file) throw usage_error("cannot open output file '" + *cfg.output + "'");
      sink = &file;
    }

    if (cfg.subcommand == "eval") return run_eval(cfg, *sink);
    if (cfg.subcommand == "table") return run_table(cfg, *sink);
    if (cfg.subcommand == "compare") return run_compare(cfg, *sink);
    return run_verify(cfg, *sink, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace eulercf::cli

#endif  // EULERCF_TOOLS_CLI_HPP
