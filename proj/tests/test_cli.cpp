#include "cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace eulercf;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eulercf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

double to_number(const std::string& s) { return parse_scalar(s, Mode::float64).as_float(); }

// ---------------------------------------------------------------------- eval

TEST(CliEval, SymmetricRationalTerminates) {
  const auto r = run_cli({"eval", "--family", "symmetric-binomial", "--n", "2", "--arg", "1/3", "--mode", "rational"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"value", "depth_used", "converged", "terminated", "residual"}));
  EXPECT_EQ(rows[1][0], "10/9");
  EXPECT_EQ(rows[1][3], "true");
}

TEST(CliEval, ArctanLentz) {
  const auto r = run_cli({"eval", "--family", "arctan", "--arg", "1", "--method", "lentz", "--tol", "1e-12"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(to_number(rows[1][0]), std::atan(1.0), 1e-12);
  EXPECT_EQ(rows[1][2], "true");
}

TEST(CliEval, LogRatioOutsideDomain) {
  const auto r = run_cli({"eval", "--family", "log-ratio", "--arg", "1.5"});
  EXPECT_EQ(r.code, cli::kExitUsage);
  EXPECT_NE(r.err.find("|z| < 1"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(CliEval, NonConvergenceExitsTwo) {
  const auto r = run_cli({"eval", "--family", "arctan", "--arg", "3", "--depth", "3", "--tol", "1e-15"});
  EXPECT_EQ(r.code, cli::kExitNotConverged);
  EXPECT_EQ(parse_csv(r.out)[1][2], "false");
}

TEST(CliEval, BackwardMethod) {
  const auto r = run_cli({"eval", "--family", "tan", "--arg", "1", "--method", "backward", "--depth", "30"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NEAR(to_number(parse_csv(r.out)[1][0]), std::tan(1.0), 1e-12);
}

TEST(CliEval, ComplexArgument) {
  const auto r = run_cli(
      {"eval", "--family", "symmetric-binomial", "--n", "2.5", "--arg", "0.4i", "--mode", "complex", "--method", "lentz"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const Complex v = parse_complex(parse_csv(r.out)[1][0]);
  EXPECT_LT(std::fabs(v.imag()), 1e-12);
  EXPECT_NEAR(v.real(), 2.5 * 0.4 / std::tan(2.5 * std::atan(0.4)), 1e-10);
}

TEST(CliEval, JsonMirrorsCsvFields) {
  const auto r = run_cli({"eval", "--family", "coth-scaled", "--arg", "1", "--format", "json"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"value", "depth_used", "converged", "terminated", "residual"}) EXPECT_TRUE(j.contains(key));
  EXPECT_EQ(j.size(), 5u);
  EXPECT_NEAR(j["value"].get<double>(), 1.0 / std::tanh(1.0), 1e-12);
}

TEST(CliEval, UsageErrors) {
  EXPECT_EQ(run_cli({"eval", "--family", "arctan", "--arg", "1/2", "--mode", "rational", "--method", "lentz"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run_cli({"eval", "--family", "arctan", "--arg", "1", "--method", "backward"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"eval", "--family", "gamma", "--arg", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"eval", "--family", "arctan", "--arg", "0.5", "--mode", "rational"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"eval", "--family", "arctan", "--n", "2", "--arg", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"eval", "--family", "symmetric-binomial", "--arg", "0.5"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"eval", "--arg", "1"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"eval", "--family", "arctan", "--arg", "1", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
}

// --------------------------------------------------------------------- table

TEST(CliTable, HeaderIsExact) {
  const auto r = run_cli({"table", "--family", "coth-scaled", "--arg", "1", "--depth", "10"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "k,p,q,value,abs_err,rel_err");
}

TEST(CliTable, CothErrorsDecrease) {
  const auto rows = parse_csv(run_cli({"table", "--family", "coth-scaled", "--arg", "1", "--depth", "10"}).out);
  // Header, k = 0 .. 10.
  ASSERT_EQ(rows.size(), 12u);
  // Strictly decreasing until the error reaches zero in double precision, then zero.
  double previous = to_number(rows[1][5]);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double err = to_number(rows[i][5]);
    if (previous > 0.0) {
      EXPECT_LT(err, previous) << "row " << i;
    } else {
      EXPECT_EQ(err, 0.0) << "row " << i;
    }
    previous = err;
  }
  EXPECT_LT(previous, 1e-15);
}

TEST(CliTable, SymmetricNOneIsASingleLevel) {
  const auto rows =
      parse_csv(run_cli({"table", "--family", "symmetric-binomial", "--n", "1", "--arg", "1/3", "--mode", "rational",
                         "--depth", "10"})
                    .out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(rows[1][3], "1");
}

TEST(CliTable, DepthZeroGivesB0) {
  const auto rows = parse_csv(run_cli({"table", "--family", "lagrange-binomial", "--n", "0.5", "--arg", "0.2",
                                       "--depth", "0"})
                                  .out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "0");
  EXPECT_EQ(to_number(rows[1][3]), 1.0);
}

TEST(CliTable, RationalRoundTrip) {
  const auto rows = parse_csv(
      run_cli({"table", "--family", "symmetric-binomial", "--n", "3", "--arg", "1/2", "--mode", "rational", "--depth", "5"})
          .out);
  ASSERT_GE(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const BigRational p = parse_rational(rows[i][1]), q = parse_rational(rows[i][2]);
    EXPECT_EQ(parse_scalar(rows[i][3], Mode::big_rational).as_rational(), BigRational(p / q));
  }
  EXPECT_EQ(rows.back()[3], "21/13");
}

TEST(CliTable, FloatRoundTripsToSeventeenDigits) {
  const CFStream<double> cf = arctan_cf(0.7);
  const auto seq = convergents(cf, 12);
  const auto rows = parse_csv(run_cli({"table", "--family", "arctan", "--arg", "0.7", "--depth", "12"}).out);
  ASSERT_EQ(rows.size(), seq.items.size() + 1);
  for (std::size_t i = 0; i < seq.items.size(); ++i) {
    EXPECT_EQ(to_number(rows[i + 1][1]), seq.items[i].p);
    EXPECT_EQ(to_number(rows[i + 1][2]), seq.items[i].q);
    EXPECT_EQ(to_number(rows[i + 1][3]), seq.items[i].value());
  }
}

TEST(CliTable, JsonSchema) {
  const auto r = run_cli({"table", "--family", "tan", "--arg", "1", "--depth", "4", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["family"], "tan");
  ASSERT_EQ(j["rows"].size(), 5u);
  for (const auto& row : j["rows"]) {
    for (const char* key : {"k", "p", "q", "value", "abs_err", "rel_err"}) EXPECT_TRUE(row.contains(key));
  }
}

TEST(CliTable, RequiresDepth) {
  EXPECT_EQ(run_cli({"table", "--family", "tan", "--arg", "1"}).code, cli::kExitUsage);
}

// ------------------------------------------------------------------- compare

double final_rel_err(const std::string& csv) { return to_number(parse_csv(csv).back()[3]); }

TEST(CliCompare, TanAndArctan) {
  const auto tan = run_cli({"compare", "--family", "tan", "--arg", "1", "--depth", "30"});
  EXPECT_EQ(tan.code, cli::kExitOk);
  EXPECT_EQ(tan.out.substr(0, tan.out.find('\n')), "depth,cf_value,oracle_value,rel_err");
  EXPECT_LT(final_rel_err(tan.out), 1e-12);
  const auto atan = run_cli({"compare", "--family", "arctan", "--arg", "1", "--depth", "50"});
  EXPECT_LT(final_rel_err(atan.out), 1e-12);
  EXPECT_EQ(parse_csv(atan.out).size(), 51u);
}

TEST(CliCompare, SymmetricExactFromDepthTwo) {
  const auto rows = parse_csv(
      run_cli({"compare", "--family", "symmetric-binomial", "--n", "3", "--arg", "1/2", "--mode", "rational", "--depth",
               "6"})
          .out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_NE(to_number(rows[1][3]), 0.0);
  for (std::size_t d = 2; d <= 6; ++d) EXPECT_EQ(to_number(rows[d][3]), 0.0) << d;
}

TEST(CliCompare, JsonReportsOracleMethod) {
  const auto j = nlohmann::json::parse(
      run_cli({"compare", "--family", "coth-scaled", "--arg", "0.5", "--depth", "3", "--format", "json"}).out);
  EXPECT_EQ(j["oracle_method"], "closed-form");
  EXPECT_EQ(j["rows"].size(), 3u);
}

// -------------------------------------------------------------------- verify

TEST(CliVerify, DefaultRunPasses) {
  const auto r = run_cli({"verify"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "check,group,mode,passed,error,tolerance,detail");
  for (const auto& row : parse_csv(r.out)) EXPECT_NE(row[3], "false") << row[0];
}

TEST(CliVerify, OnlyFilter) {
  const auto rows = parse_csv(run_cli({"verify", "--only", "n-negation"}).out);
  ASSERT_GE(rows.size(), 2u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][1], "n-negation");
}

TEST(CliVerify, RationalTerminationExact) {
  const auto r = run_cli({"verify", "--mode", "rational", "--only", "termination"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const auto rows = parse_csv(r.out);
  ASSERT_GE(rows.size(), 2u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][2], "rational");
    EXPECT_EQ(to_number(rows[i][4]), 0.0);
  }
}

TEST(CliVerify, UnknownGroup) { EXPECT_EQ(run_cli({"verify", "--only", "nonsense"}).code, cli::kExitUsage); }

TEST(CliOutput, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "eulercf_cli_output_test.csv";
  const auto r = run_cli({"eval", "--family", "arctan", "--arg", "1", "--output", path.string()});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(parse_csv(text.str())[0][0], "value");
  std::filesystem::remove(path);
}

}  // namespace
