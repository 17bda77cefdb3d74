#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string(FRACDIFF_CLI) + " " + args + " 2>/dev/null";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return o;
    std::array<char, 512> buf{};
    while (fgets(buf.data(), buf.size(), pipe) != nullptr) o.out += buf.data();
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

fs::path fresh(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("fracdiff_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, MlfSpotValues) {
    EXPECT_EQ(run("mlf --alpha 1.0 2.0").out, "0.135335283236613\n");
    const auto half = run("mlf --alpha 0.5 1.0");
    EXPECT_EQ(half.code, 0);
    EXPECT_EQ(half.out.rfind("0.427583", 0), 0u);
    EXPECT_EQ(run("mlf --alpha 0.3 0").out, "1\n");
}

TEST(Cli, ValidationExitsWithOne) {
    EXPECT_EQ(run("mlf --alpha 1.5 1").code, 1);
    EXPECT_EQ(run("mlf --alpha 0.5 -- -2").code, 1);
    EXPECT_EQ(run("solve --example 3").code, 1);
    EXPECT_EQ(run("convergence --n 8 --n 12 --out " + fresh("bad").string()).code, 1);
    EXPECT_EQ(run("solve --example 2 --m 7 --out " + fresh("odd").string()).code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("").code, 1);
    EXPECT_EQ(run("solve --config /nonexistent/file.cfg").code, 1);
}

TEST(Cli, HelpExitsWithZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, SelftestPasses) {
    const auto r = run("selftest --seed 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, SolveWritesSolution) {
    const auto dir = fresh("solve");
    ASSERT_EQ(run("solve --n 4 --gamma 2 --m 8 --out " + dir.string()).code, 0);
    const auto text = slurp(dir / "solution.csv");
    EXPECT_EQ(text.rfind("t,x,value\n", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 5 * 9);
}

TEST(Cli, ConfigFileAndOverrides) {
    const auto dir = fresh("config");
    const auto cfg = dir / "study.cfg";
    std::ofstream(cfg) << "example=2\nalpha=0.7\ngamma=1 3\nn=8 16\nm=64\nout=" << (dir / "a").string()
                       << "\n";
    ASSERT_EQ(run("convergence --config " + cfg.string()).code, 0);
    const auto from_file = slurp(dir / "a" / "table.csv");
    EXPECT_EQ(std::count(from_file.begin(), from_file.end(), '\n'), 5);
    EXPECT_NE(from_file.find("\n16,3,"), std::string::npos);

    // Same run spelled out on the command line gives identical bytes.
    ASSERT_EQ(run("convergence --example 2 --alpha 0.7 --gamma 1 --gamma 3 --n 8 16 --m 64 --out " +
                  (dir / "b").string())
                  .code,
              0);
    EXPECT_EQ(from_file, slurp(dir / "b" / "table.csv"));

    // A flag beats the file.
    ASSERT_EQ(run("convergence --config " + cfg.string() + " --gamma 2 --out " + (dir / "c").string())
                  .code,
              0);
    const auto overridden = slurp(dir / "c" / "table.csv");
    EXPECT_NE(overridden.find("\n8,2,"), std::string::npos);
    EXPECT_EQ(overridden.find("\n8,1,"), std::string::npos);
}

TEST(Cli, NodalErrors) {
    const auto dir = fresh("nodal");
    ASSERT_EQ(run("nodal-errors --n 8 --gamma 1 --gamma 2.5 --m 32 --out " + dir.string()).code, 0);
    EXPECT_TRUE(fs::exists(dir / "nodal_errors_1.csv"));
    EXPECT_TRUE(fs::exists(dir / "nodal_errors_2.5.csv"));
}
