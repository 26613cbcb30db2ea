#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using json = nlohmann::json;

namespace {

struct Outcome {
    std::string out;
    int status = -1;
};

Outcome run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " + QLIMIT_CLI_PATH + " " + args + " 2>/dev/null";
    Outcome r;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int st = pclose(f);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<json> lines(const std::string& s)
{
    std::vector<json> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) out.push_back(json::parse(l));
    return out;
}

} // namespace

TEST(Cli, ClassifyUniformDirection)
{
    Outcome r = run("classify --alpha 1/6,1/6,1/6,1/6,1/6,1/6");
    EXPECT_EQ(r.status, 0);
    auto js = lines(r.out);
    ASSERT_EQ(js.size(), 1u);
    EXPECT_EQ(js[0]["correct_zeta"], "0");
    EXPECT_EQ(js[0]["limit_kind"], "integral_at_min");
    ASSERT_EQ(js[0]["tiles"].size(), 1u);
    EXPECT_EQ(js[0]["tiles"][0]["family"], "P_I");
    EXPECT_EQ(js[0]["tiles"][0]["base"], json::array({"0", "0", "0", "0", "0", "0"}));
}

TEST(Cli, VerifyBilateralSummation)
{
    Outcome r = run("verify --id II.33 --q 0.35,0 --samples 20 --seed 7");
    EXPECT_EQ(r.status, 0);
    auto js = lines(r.out);
    ASSERT_EQ(js.size(), 20u);
    for (const auto& j : js) {
        EXPECT_EQ(j["id"], "II.33");
        EXPECT_LT(j["rel_err"].get<double>(), 1e-10);
        EXPECT_TRUE(j["pass"].get<bool>());
    }
}

TEST(Cli, TraceFourParameterIntegral)
{
    Outcome r = run("trace --alpha 0,0,0,0,1/2,1/2 --x 0.3,0 --q 0.35,0 --steps 8");
    EXPECT_EQ(r.status, 0);
    auto js = lines(r.out);
    ASSERT_EQ(js.size(), 1u);
    const auto errors = js[0]["errors"].get<std::vector<double>>();
    ASSERT_EQ(errors.size(), 8u);
    for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_LT(errors[i], errors[i - 1]);
    EXPECT_LT(errors.back(), 1e-6);
}

TEST(Cli, WeylReduceAndBetaCheck)
{
    Outcome w = run("weyl-reduce --alpha 0,0,0,0,1/2,1/2 --zeta 1/3");
    EXPECT_EQ(w.status, 0);
    EXPECT_TRUE(lines(w.out).at(0)["pass"].get<bool>());
    Outcome b = run("beta-check --samples 3 --seed 4");
    EXPECT_EQ(b.status, 0);
    EXPECT_EQ(lines(b.out).size(), 3u);
}

TEST(Cli, UsageErrorsExitWithTwo)
{
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("classify").status, 2);
    EXPECT_EQ(run("classify --alpha 1,2").status, 2);
    EXPECT_EQ(run("classify --alpha 1/2,1/2,0,0,0,x").status, 2);
    EXPECT_EQ(run("verify --id NOPE").status, 2);
    EXPECT_EQ(run("verify --id AW --q 1.5,0").status, 2);
    EXPECT_EQ(run("trace --alpha 1/6,1/6,1/6,1/6,1/6,1/6").status, 2);
}

TEST(Cli, CheckFailureExitsWithOne)
{
    Outcome r = run("verify --id AW --samples 2 --tol 1e-30");
    EXPECT_EQ(r.status, 1);
    for (const auto& j : lines(r.out)) EXPECT_FALSE(j["pass"].get<bool>());
}

TEST(Cli, OutputIsDeterministicAcrossThreadCounts)
{
    const std::string args = "verify --id all --samples 2 --seed 3";
    Outcome a = run(args, "QLIMIT_THREADS=1"), b = run(args, "QLIMIT_THREADS=8"), c = run(args, "QLIMIT_THREADS=8");
    EXPECT_EQ(a.status, 0);
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(b.out, c.out);
    Outcome d = run("cover --samples 100 --seed 2", "QLIMIT_THREADS=1"), e = run("cover --samples 100 --seed 2", "QLIMIT_THREADS=6");
    EXPECT_EQ(d.out, e.out);
}

TEST(Cli, OutFlagRedirects)
{
    const auto path = std::filesystem::temp_directory_path() / "qlimit_cli_out_test.jsonl";
    std::filesystem::remove(path);
    Outcome r = run("classify --alpha 1/6,1/6,1/6,1/6,1/6,1/6 --out " + path.string());
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), run("classify --alpha 1/6,1/6,1/6,1/6,1/6,1/6").out);
    std::filesystem::remove(path);
}
