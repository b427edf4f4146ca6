#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "phaselab_cli/app.hpp"
#include "phaselab_cli/output.hpp"

namespace {

using namespace phaselab::cli;
namespace fs = std::filesystem;

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) {
        v.push_back(l);
    }
    return v;
}

std::string temp_path(const std::string& name) {
    return (fs::temp_directory_path() / ("phaselab_cli_test_" + name)).string();
}

}  // namespace

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"bogus"}).code, kExitUsage);
    EXPECT_EQ(run({"certify", "--k", "10"}).code, kExitUsage);
    EXPECT_EQ(run({"simulate", "--k", "x"}).code, kExitUsage);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, DomainErrorsExitOne) {
    EXPECT_EQ(run({"nonadaptive", "--k", "4", "--ell", "9"}).code, kExitDomain);
    EXPECT_EQ(run({"certify", "--k", "12", "--ell", "1", "--n", "4000"}).code, kExitDomain);
    EXPECT_EQ(run({"simulate", "--k", "8", "--phi", "nan"}).code, kExitDomain);
}

TEST(Cli, SimulateIsDeterministic) {
    const auto a = run({"simulate", "--k", "6", "--seed", "42"});
    const auto b = run({"simulate", "--k", "6", "--seed", "42"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto l = lines(a.out);
    ASSERT_EQ(l.size(), 3u + 64u);
    EXPECT_EQ(l[0].rfind("# config_hash=0x", 0), 0u);
    EXPECT_EQ(l[1].rfind("# phi=", 0), 0u);
    EXPECT_EQ(l[2], "m,probability");
    const auto c = run({"simulate", "--k", "6", "--seed", "43"});
    EXPECT_NE(lines(c.out)[0], l[0]);
}

TEST(Cli, SimulateDyadicPhaseIsExact) {
    const auto r = run({"simulate", "--k", "4", "--phi", "0.3125"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    // 0.3125 = 5/16.
    ASSERT_EQ(l[3 + 5].substr(0, 2), "5,");
    EXPECT_NEAR(std::stod(l[3 + 5].substr(2)), 1.0, 1e-12);
}

TEST(Cli, FlPlotColumns) {
    const auto r = run({"fl-plot", "--ell", "1", "--samples", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    ASSERT_EQ(l.size(), 2u + 7u);
    EXPECT_EQ(l[1], "x,f,\"sin(pi x + 2pi/3)\",\"sin(3 pi x)\"");
    // x = 1/2 is row 3; f_1(1/2) = 1/2.
    ASSERT_EQ(l[2 + 3].substr(0, 4), "0.5,");
    EXPECT_NEAR(std::stod(l[2 + 3].substr(4)), 0.5, 1e-12);
}

TEST(Cli, NonadaptiveJson) {
    const auto r = run({"nonadaptive", "--k", "10", "--ell", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["total_cost"].get<long>(), j["N"].get<long>() + 1);
    EXPECT_EQ(j["overlaps"].size(), 2u);
    EXPECT_GT(j["worst_case_success"].get<double>(), 0.99);
    EXPECT_EQ(j["config_hash"].get<std::string>().size(), 18u);
}

TEST(Cli, ReportEllOne) {
    const auto r = run({"report", "--k", "12", "--ell", "1", "--workers", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["adaptive_cost"].get<long>(), 2049);
    EXPECT_GT(j["ratio"].get<double>(), 1.0);
    EXPECT_TRUE(j["bounds"]["nonadaptive_scan"].is_object());
}

TEST(Cli, ScanCsv) {
    const auto r = run({"scan", "--k", "8", "--ell", "1", "--kappa", "1e-3", "--workers", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto l = lines(r.out);
    EXPECT_EQ(l[1], "k,ell,N,feasible,ratio,bracket");
    int tagged = 0;
    for (std::size_t i = 2; i < l.size(); ++i) {
        tagged += l[i].find("min_feasible") != std::string::npos;
    }
    EXPECT_EQ(tagged, 1);
    EXPECT_NE(r.err.find("bracket"), std::string::npos);
}

TEST(Cli, HashIgnoresOutputOptions) {
    const auto a = run({"scan", "--k", "7", "--kappa", "1e-3", "--workers", "1"});
    const auto b = run({"scan", "--k", "7", "--kappa", "1e-3", "--workers", "2"});
    EXPECT_EQ(a.out, b.out);
    const auto c = run({"scan", "--k", "7", "--kappa", "2e-3", "--workers", "1"});
    EXPECT_NE(lines(a.out)[0], lines(c.out)[0]);
}

TEST(Cli, OutFileIsWrittenAtomically) {
    const std::string path = temp_path("out.json");
    fs::remove(path);
    const auto r = run({"adaptive", "--k", "10", "--ell", "2", "--out", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["ell"].get<int>(), 2);
    for (const auto& e : fs::directory_iterator(fs::path(path).parent_path())) {
        EXPECT_EQ(e.path().filename().string().find("phaselab_cli_test_out.json.tmp"),
                  std::string::npos);
    }
    fs::remove(path);
}

TEST(Cli, RejectedConfigWritesNothing) {
    const std::string path = temp_path("rejected.json");
    fs::remove(path);
    const auto r = run({"adaptive", "--k", "3", "--ell", "5", "--out", path});
    EXPECT_NE(r.code, 0);
    EXPECT_FALSE(fs::exists(path));
}

TEST(Output, HashAndFormatting) {
    // FNV-1a 64 reference values.
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(hex64(0xabcULL), "0x0000000000000abc");
    EXPECT_EQ(format_double(0.5), "0.5");
}
