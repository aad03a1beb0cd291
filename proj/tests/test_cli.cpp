#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "specbound/cli.hpp"
#include "support.hpp"

namespace specbound::cli {
namespace {

const std::filesystem::path kData{SPECBOUND_TEST_DATA};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

TEST(Cli, CyclicJson) {
    const auto r = run({"bounds", "--csv", data("cyclic.csv"), "--kmax", "5", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["n"], 3);
    EXPECT_EQ(j["kMax"], 5);
    ASSERT_EQ(j["rho"].size(), 6u);
    for (double v : j["rho"]) {
        EXPECT_EQ(v, 0.0);
    }
    for (double v : j["sigma"]) {
        EXPECT_NEAR(v, 1.0, 1e-9);
    }
    EXPECT_FALSE(j["converged"].get<bool>());
    EXPECT_EQ(j["interval"][0], 0.0);
    EXPECT_EQ(j["logScales"].size(), 6u);
}

TEST(Cli, JsonMatchesLibraryReport) {
    const auto r = run({"bounds", "--csv", data("cyclic.csv"), "--kmax", "5", "--format", "json"});
    const auto back = report_from_json(nlohmann::json::parse(r.out));
    const auto lib = sandwich(testing::cyclic3(), 5, kDefaultGapTol);
    EXPECT_EQ(back.rho, lib.rho);
    EXPECT_EQ(back.sigma, lib.sigma);
    EXPECT_EQ(back.interval, lib.interval);
}

TEST(Cli, JsonIsByteIdenticalAcrossRuns) {
    const std::vector<std::string> args{"bounds", "--csv", data("cyclic.csv"), "--format", "json",
                                        "--deterministic"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, MinKernelTable) {
    const auto r = run({"kernel", "--name", "min", "--grid", "1000", "--format", "table"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto pos = r.out.find("interval: [");
    ASSERT_NE(pos, std::string::npos);
    double lo = 0;
    double hi = 0;
    ASSERT_EQ(std::sscanf(r.out.c_str() + pos, "interval: [%lf, %lf]", &lo, &hi), 2);
    EXPECT_LE(lo, 0.405285 + 2e-3);
    EXPECT_GE(hi, 0.405285 - 2e-3);
    EXPECT_NE(r.out.find("converged: yes"), std::string::npos);
}

TEST(Cli, IdentityConvergesAtLevelZero) {
    const auto r = run({"bounds", "--csv", data("identity4.csv"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["converged"].get<bool>());
    EXPECT_EQ(j["kMax"], 0);
    EXPECT_EQ(j["interval"][0], 1.0);
    EXPECT_EQ(j["interval"][1], 1.0);
}

TEST(Cli, MatrixMarketAndCsvFormats) {
    auto r = run({"bounds", "--mtx", data("cyclic_coord.mtx"), "--kmax", "3", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("k,rho,sigma,gap,logScale\n", 0), 0u);
    r = run({"bounds", "--mtx", data("scalar.mtx"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["interval"][1], 2.5);
}

TEST(Cli, ShiftSubcommand) {
    const auto r = run({"shift", "--name", "shift:p=1,n=200", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["kMax"], 6);
    EXPECT_NEAR(j["sigma"][0].get<double>(), 2.5, 1e-2);
    EXPECT_NEAR(j["sigma"][1].get<double>(), 2.0, 1e-2);
}

TEST(Cli, TableKernel) {
    const auto r = run({"kernel", "--table", data("identity4.csv"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(nlohmann::json::parse(r.out)["interval"][0].get<double>(), 0.25, 1e-15);
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(run({"bounds", "--csv", data("ragged.csv")}).code, 2);
    EXPECT_EQ(run({"bounds", "--csv", data("missing.csv")}).code, 2);
    EXPECT_EQ(run({"bounds", "--csv", data("cyclic.csv"), "--kmax", "31"}).code, 2);
    EXPECT_EQ(run({"bounds", "--csv", data("cyclic.csv"), "--gap-tol", "0"}).code, 2);
    EXPECT_EQ(run({"bounds"}).code, 2);
    EXPECT_EQ(run({"kernel", "--name", "nope"}).code, 2);
    EXPECT_EQ(run({"shift", "--name", "shift:p=1,n=3"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    const auto r = run({"bounds", "--csv", data("ragged.csv")});
    EXPECT_NE(r.err.find("line 2"), std::string::npos);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, NumericalFailureExitsThree) {
    std::ostringstream err;
    const int code = detail::guarded(err, []() -> int { throw NoConvergence(1.0, 5, 2); });
    EXPECT_EQ(code, 3);
    EXPECT_NE(err.str().find("k = 2"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Oracle, CyclicIsConsistent) {
    const auto r = run({"oracle", "--csv", data("cyclic.csv"), "--kmax", "5", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["gelfand"]["value"].get<double>(), 1.0, 1e-10);
    EXPECT_EQ(j["interval"][0], 0.0);
    EXPECT_NEAR(j["interval"][1].get<double>(), 1.0, 1e-9);
    EXPECT_TRUE(j["consistent"].get<bool>());
    EXPECT_FALSE(j.contains("jacobi"));
}

TEST(Oracle, SymmetricInputAddsJacobi) {
    const auto r = run({"oracle", "--csv", data("identity4.csv")});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("jacobi: 1 "), std::string::npos);
}

TEST(Oracle, WeightedShift) {
    const auto r = run({"oracle", "--shift", "shift:p=1,n=200", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.out << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["gelfand"]["value"].get<double>(), 2.0, 1e-2);
    EXPECT_TRUE(j["consistent"].get<bool>());
}

TEST(Oracle, CorruptedReportExitsFour) {
    const auto r = run({"oracle", "--csv", data("cyclic.csv"), "--report",
                        data("corrupted_report.json")});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.out.find("INCONSISTENT"), std::string::npos);
    EXPECT_NE(r.err.find("INCONSISTENT"), std::string::npos);
}

TEST(Oracle, SavedReportRoundTripIsConsistent) {
    const auto saved = run({"bounds", "--csv", data("cyclic.csv"), "--format", "json"});
    const auto path = std::filesystem::temp_directory_path() / "specbound_cli_report.json";
    {
        std::ofstream f(path);
        f << saved.out;
    }
    const auto r = run({"oracle", "--csv", data("cyclic.csv"), "--report", path.string()});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace specbound::cli
