#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/dispatch.hpp"
#include "cli/table_io.hpp"
#include "golden_values.hpp"

namespace cvqkd::cli {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// Data lines of a CSV document (header comments dropped).
std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream is(csv);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cvqkd_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Cli, AnalyticMatchesGolden) {
  const auto r = run({"analytic", "--mu-a", "1", "--distance-km", "30", "--x0", "1.12"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "conclusive_prob[prob],ber[prob]");
  const auto fields = split_csv_record(lines[1]);
  EXPECT_NEAR(std::stod(fields[0]), golden::kConclusiveMu1L30, 1e-15);
  EXPECT_NEAR(std::stod(fields[1]), golden::kBerMu1L30, 1e-15);
}

TEST(Cli, HeaderEchoesResolvedConfiguration) {
  const auto r = run({"analytic", "--mu-a", "1.5"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("# command = analytic"), std::string::npos);
  EXPECT_NE(r.out.find("# mu-a = 1.5"), std::string::npos);
  EXPECT_NE(r.out.find("# loss-db-per-km = 0.20999999999999999"), std::string::npos);
}

TEST(Cli, Table1Rows) {
  const auto r = run({"table1", "--mu-a", "1", "--mu-e", "3"});
  ASSERT_EQ(r.code, kExitOk);
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 3u);
  const auto spda = split_csv_record(lines[1]);
  const auto sma = split_csv_record(lines[2]);
  EXPECT_EQ(spda[0], "SPDA");
  EXPECT_EQ(sma[0], "SMA");
  EXPECT_NEAR(std::stod(spda[1]), golden::kSpdaMu1[0], 1e-15);
  EXPECT_NEAR(std::stod(spda[5]), golden::kSpdaMu1[4], 1e-15);
  EXPECT_NEAR(std::stod(sma[1]), golden::kSmaMu1[0], 1e-10);
  EXPECT_NEAR(std::stod(sma[3]), golden::kSmaMu1[2], 1e-10);
}

TEST(Cli, CrossoverAndMaxDistance) {
  auto r = run({"crossover", "--mu-a", "1", "--distance-km", "30"});
  ASSERT_EQ(r.code, kExitOk);
  auto row = split_csv_record(data_lines(r.out).at(1));
  EXPECT_EQ(row[0], "crossing");
  EXPECT_NEAR(std::stod(row[1]), golden::kCrossoverMu1L30, 1e-12);

  r = run({"crossover", "--mu-a", "1", "--distance-km", "50"});
  row = split_csv_record(data_lines(r.out).at(1));
  EXPECT_EQ(row[0], "attack_wins_everywhere");
  EXPECT_EQ(row[1], "");

  r = run({"max-distance", "--mu-a", "1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NEAR(std::stod(data_lines(r.out).at(1)), golden::kMaxDistanceMu1, 1e-12);
}

TEST(Cli, SimulateZeroPulsesHasUndefinedRates) {
  const auto r = run({"simulate", "--n", "0"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(data_lines(r.out).at(1), "0,0,0,0,,,");
}

TEST(Cli, SimulateIsReproducibleAcrossWorkerCounts) {
  const std::vector<std::string> base{"simulate", "--attack", "spda", "--n", "200000", "--seed", "5"};
  auto one = base, many = base;
  one.insert(one.end(), {"--workers", "1"});
  many.insert(many.end(), {"--workers", "3"});
  const auto a = run(one), b = run(many), c = run(base);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  const auto d = run({"simulate", "--attack", "spda", "--n", "200000", "--seed", "6"});
  EXPECT_NE(a.out, d.out);
}

TEST(Cli, HistogramOutputFile) {
  const auto dir = scratch_dir("hist");
  const auto path = (dir / "h.csv").string();
  const auto r = run({"simulate", "--n", "70000", "--histogram-output", path, "--hist-bins", "20"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  const auto lines = data_lines(ss.str());
  ASSERT_EQ(lines.size(), 21u);
  EXPECT_EQ(lines[0], "bin_lo[quadrature],bin_hi[quadrature],count_correct[count],count_wrong[count]");
  std::int64_t correct = 0, wrong = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_record(lines[i]);
    correct += std::stoll(f[2]);
    wrong += std::stoll(f[3]);
  }
  const auto stats = split_csv_record(data_lines(r.out).at(1));
  EXPECT_EQ(correct, std::stoll(stats[1]));
  EXPECT_EQ(correct + wrong, 70000);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = scratch_dir("env");
  ::setenv(kOutputDirEnv, dir.c_str(), 1);
  const auto r = run({"table1", "-o", "t.csv"});
  ::unsetenv(kOutputDirEnv);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(std::filesystem::exists(dir / "t.csv"));
}

TEST(Cli, CsvAndJsonRoundTripSweepTables) {
  for (const auto& cmd : {"sweep-threshold", "density", "compare-attacks"}) {
    const auto csv = run({cmd, "--x0-max", "0.5", "--x0-step", "0.1", "--x-step", "0.5"});
    ASSERT_EQ(csv.code, kExitOk) << cmd << csv.err;
    const auto json = run({cmd, "--x0-max", "0.5", "--x0-step", "0.1", "--x-step", "0.5",
                           "--format", "json"});
    ASSERT_EQ(json.code, kExitOk) << cmd;
    std::istringstream a(csv.out), b(json.out);
    const auto from_csv = read_sweep_csv(a);
    const auto from_json = read_sweep_json(b);
    EXPECT_EQ(from_csv, from_json) << cmd;
    EXPECT_NO_THROW(from_csv.validate());
    EXPECT_FALSE(from_csv.rows.empty());
  }
}

TEST(Cli, WriteReadIsLossless) {
  const analysis::SweepTable t{{"x0", "quadrature"},
                               {{"a", "prob"}, {"b,with comma", ""}},
                               {{0.1, {1.0 / 3.0, 2e-300}}, {0.30000000000000004, {-0.0, 5e300}}}};
  std::ostringstream csv, json;
  write_csv(csv, to_output(t, {{"note", std::string("quote \"me\"")}}));
  write_json(json, to_output(t, {}));
  std::istringstream a(csv.str()), b(json.str());
  EXPECT_EQ(read_sweep_csv(a), t);
  EXPECT_EQ(read_sweep_json(b), t);
}

TEST(Cli, HelpListsFlagsAndDefaults) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  for (const char* s : {"--mu-a", "--loss-db-per-km", "0.21", "--eta-bob", "0.6636", "--seed",
                        "sweep-threshold", "max-distance", "detect"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch_dir("config");
  const auto path = (dir / "run.ini").string();
  std::ofstream(path) << "mu-a = 1.5\ndistance-km = 30\n";
  auto r = run({"crossover", "--config", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(std::stod(split_csv_record(data_lines(r.out).at(1))[1]), golden::kCrossoverMu15L30, 1e-12);

  r = run({"crossover", "--config", path, "--mu-a", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(std::stod(split_csv_record(data_lines(r.out).at(1))[1]), golden::kCrossoverMu1L30, 1e-12);

  std::ofstream(path) << "no-such-key = 1\n";
  r = run({"crossover", "--config", path});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(Cli, ExitCodes) {
  auto r = run({});
  EXPECT_EQ(r.code, kExitUsage);
  r = run({"bogus"});
  EXPECT_EQ(r.code, kExitUsage);
  r = run({"analytic", "--mu-a", "-1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("\"error\":\"usage\""), std::string::npos) << r.err;
  r = run({"analytic", "--attack", "eve"});
  EXPECT_EQ(r.code, kExitUsage);

  // Far beyond every outcome: nothing is conclusive.
  r = run({"analytic", "--x0", "40"});
  EXPECT_EQ(r.code, kExitNumerical);
  EXPECT_NE(r.err.find("\"error\":\"numerical\""), std::string::npos) << r.err;

  r = run({"detect", "--n", "500"});
  EXPECT_EQ(r.code, kExitInsufficientData);
  EXPECT_NE(r.err.find("\"error\":\"insufficient_data\""), std::string::npos) << r.err;
}

TEST(Cli, DetectFlagsSpda) {
  const auto r = run({"detect", "--attack", "spda", "--mu-e", "6", "--distance-km", "30",
                      "--n", "200000", "--seed", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lines = data_lines(r.out);
  ASSERT_EQ(lines.size(), 3u);
  const auto correct = split_csv_record(lines[1]);
  EXPECT_EQ(correct[0], "correct");
  EXPECT_EQ(correct[5], "eavesdropper_suspected");
}

}  // namespace
}  // namespace cvqkd::cli
