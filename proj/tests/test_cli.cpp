// The command-line driver: exit codes and output for the documented examples.

#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(APSQ_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

bool has(const std::string& s, const std::string& sub) { return s.find(sub) != std::string::npos; }

} // namespace

TEST(Cli, ApExamples) {
    auto r = run("ap --t 4");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "(7^2, 13^2, 17^2, 409, 23^2)")) << r.out;
    EXPECT_TRUE(has(r.out, "sqrt(409)")) << r.out;
    auto z = run("ap --t 0");
    EXPECT_TRUE(has(z.out, "constant")) << z.out;
    auto s = run("ap --t '1+sqrt(2)' --format json");
    EXPECT_EQ(s.status, 0);
    auto j = nlohmann::json::parse(s.out);
    EXPECT_EQ(j["classification"], "zero term a");
}

TEST(Cli, Generate) {
    auto r = run("generate --D -2 --n 0..1");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "(2^2, 1^2, -2*1^2, -5, -2*2^2)")) << r.out;
    EXPECT_TRUE(has(r.out, "(34^2, 23^2, -2*7^2, -29*5^2, -2*26^2)")) << r.out;
    auto p = run("generate --D 2 --n 2..2");
    EXPECT_EQ(p.status, 2) << p.out;
    EXPECT_EQ(run("generate --D 3 --n 1..1").status, 2);
}

TEST(Cli, Extend) {
    auto r = run("extend \"7^2,13^2,17^2,409,23^2\" --D 409 --rho 649");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r.out, "append: 649 is a square")) << r.out;
    auto c = run("extend \"9,9,9,9,9\"");
    EXPECT_TRUE(has(c.out, "prepend: 9 is a square")) << c.out;
    EXPECT_EQ(run("extend \"1,2,3\"").status, 2);
}

TEST(Cli, VerifyExitCodes) {
    EXPECT_EQ(run("verify table:1").status, 0);
    EXPECT_EQ(run("verify controls").status, 1);
    EXPECT_EQ(run("verify table:9").status, 2);
    EXPECT_EQ(run("bogus").status, 2);
    auto j = run("verify section:3 --D -1 --format json");
    EXPECT_EQ(j.status, 0);
    auto doc = nlohmann::json::parse(j.out);
    EXPECT_EQ(doc["status"], "pass");
    EXPECT_GT(doc["checks"].size(), 0u);
}

TEST(Cli, DataOverride) {
    EXPECT_EQ(run("--data /nonexistent verify table:1").status, 2);
    EXPECT_EQ(run("--data " APSQ_DATA_FILE " verify table:1").status, 0);
}
