#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(COVQ_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, CoverageBothMethodsAgree) {
    const auto res = run_cli(
        "coverage --family design2a --d 10 --n 512 --delta 0.5 --r 1.228 --method both "
        "--samples 100000 --reps 40 --seed 0");
    ASSERT_EQ(res.exit_code, 0) << res.out;
    std::stringstream ss(res.out);
    std::string header, approx_row, mc_row;
    std::getline(ss, header);
    std::getline(ss, approx_row);
    std::getline(ss, mc_row);
    EXPECT_EQ(header, "family,d,n,alpha,delta,r,method,value,std_error");
    auto value_of = [](const std::string& row) {
        // value is the 8th comma-separated field
        std::stringstream r(row);
        std::string cell;
        for (int i = 0; i < 8; ++i) std::getline(r, cell, ',');
        return std::stod(cell);
    };
    EXPECT_NEAR(value_of(approx_row), value_of(mc_row), 0.03);
}

TEST(Cli, Design2bAtFullVertexSetIsUsageErrorForApprox) {
    const auto res = run_cli("coverage --family design2b --d 10 --n 1024 --method approx --r 1.2");
    EXPECT_EQ(res.exit_code, 2);
}

TEST(Cli, Design1WithAlphaZeroPointsToDesign2a) {
    const auto res = run_cli("coverage --family design1 --alpha 0 --d 10 --n 128 --r 1.2");
    EXPECT_EQ(res.exit_code, 2);
}

TEST(Cli, UnknownTableIsUsageError) {
    EXPECT_EQ(run_cli("table --table 9").exit_code, 2);
}

TEST(Cli, EmptyRadiusGridIsUsageError) {
    const auto res =
        run_cli("curve --family design2a --d 5 --n 32 --r-min 1.0 --r-max 0.5 --samples 1000");
    EXPECT_EQ(res.exit_code, 2);
}

TEST(Cli, CurveIsMonotone) {
    const auto res = run_cli(
        "curve --family design3 --d 5 --n 64 --delta 0.7 --r-min 0.2 --r-max 1.6 --r-step 0.2 "
        "--samples 20000");
    ASSERT_EQ(res.exit_code, 0);
    std::stringstream ss(res.out);
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "r,value,std_error");
    double prev = -1.0;
    while (std::getline(ss, line)) {
        std::stringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        std::getline(row, cell, ',');
        const double value = std::stod(cell);
        EXPECT_GE(value, prev);
        prev = value;
    }
    EXPECT_DOUBLE_EQ(prev, 1.0);
}

TEST(Cli, ManifestRoundTripReproducesBytes) {
    const std::string dir = ::testing::TempDir();
    const std::string out = dir + "/covq_cli_curve.csv";
    const std::string args = "curve --family design2a --d 6 --n 64 --delta 0.5 --r-min 0.4 "
                             "--r-max 1.4 --r-step 0.2 --samples 20000 --seed 3 --out " + out;
    ASSERT_EQ(run_cli(args).exit_code, 0);
    const std::string first = slurp(out);
    ASSERT_FALSE(first.empty());
    ASSERT_EQ(run_cli(args).exit_code, 0);
    EXPECT_EQ(slurp(out), first);
    // re-running the manifest reproduces the same bytes again
    ASSERT_EQ(run_cli("rerun " + out + ".manifest.json").exit_code, 0);
    EXPECT_EQ(slurp(out), first);
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
}

TEST(Cli, TuneEmitsTraceAndSummary) {
    const std::string dir = ::testing::TempDir();
    const std::string out = dir + "/covq_tune.csv";
    const std::string json_out = dir + "/covq_tune.json";
    const auto res = run_cli(
        "tune --objective coverage --target 0.9 --family design2a --d 5 --n 32 --method mc "
        "--delta-min 0.3 --delta-max 0.6 --delta-step 0.1 --samples 20000 --reps 10 --out " + out +
        " --json-out " + json_out);
    ASSERT_EQ(res.exit_code, 0);
    const std::string csv = slurp(out);
    EXPECT_EQ(csv.substr(0, 16), "delta,objective\n");
    const std::string summary = slurp(json_out);
    EXPECT_NE(summary.find("\"delta_star\""), std::string::npos);
    EXPECT_NE(summary.find("\"objective_star\""), std::string::npos);
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
    std::remove(json_out.c_str());
}

TEST(Cli, QuantizeBothRoutes) {
    const auto res = run_cli(
        "quantize --family design2b --d 10 --n 128 --delta 0.44 --method both --samples 50000 "
        "--reps 20");
    ASSERT_EQ(res.exit_code, 0);
    std::stringstream ss(res.out);
    std::string header, a, b;
    std::getline(ss, header);
    std::getline(ss, a);
    std::getline(ss, b);
    EXPECT_EQ(header, "family,d,n,alpha,delta,method,theta,normalized,std_error");
    EXPECT_NE(a.find("approx"), std::string::npos);
    EXPECT_NE(b.find("mc"), std::string::npos);
}

TEST(Cli, SweepEmitsLongFormCsv) {
    const auto res = run_cli(
        "sweep --family simplex-s1 --d 5 --n 64 --r-min 0.12 --r-max 0.16 --r-step 0.02 "
        "--delta-min 0.5 --delta-max 1.0 --delta-step 0.25 --samples 5000 --reps 5");
    ASSERT_EQ(res.exit_code, 0);
    std::stringstream ss(res.out);
    std::string header;
    std::getline(ss, header);
    EXPECT_EQ(header, "design,d,n,delta,r,value,std_error");
    int rows = 0;
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) ++rows;
    EXPECT_EQ(rows, 3 * 3);  // 3 deltas x 3 radii
}

TEST(Cli, PointsExportMatchesHeader) {
    const auto res = run_cli("points --family design4 --d 4 --n 8 --k 1 --delta 0.5");
    ASSERT_EQ(res.exit_code, 0);
    EXPECT_EQ(res.out.substr(0, 12), "x1,x2,x3,x4\n");
    // 8 rows follow
    EXPECT_EQ(std::count(res.out.begin(), res.out.end(), '\n'), 9);
}

TEST(Cli, VersionAndHelp) {
    EXPECT_EQ(run_cli("--version").exit_code, 0);
    EXPECT_EQ(run_cli("--help").exit_code, 0);
    EXPECT_EQ(run_cli("nonsense-subcommand").exit_code, 2);
}
