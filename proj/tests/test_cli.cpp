// Drives the topofilt executable end to end through its file formats.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "support/random_filters.hpp"
#include "topofilt/io.hpp"

namespace fs = std::filesystem;

namespace {

using Vec = std::vector<double>;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("topofilt_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    std::string write_signal(const std::string& name, const Vec& samples) const {
        topofilt::io::write_signal(path(name), samples);
        return path(name);
    }

    int run(const std::string& args) {
        const std::string cmd = std::string(TOPOFILT_CLI) + " " + args + " > " + path("stdout.txt") + " 2> " +
                                path("stderr.txt");
        const int status = std::system(cmd.c_str());
        std::ifstream out(path("stdout.txt"));
        std::stringstream ss;
        ss << out.rdbuf();
        stdout_ = ss.str();
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    Vec read(const std::string& name) const { return topofilt::io::read_signal(path(name)); }

    fs::path dir_;
    std::string stdout_;
};

TEST_F(CliTest, RunIdentity) {
    const auto filter = write("f.txt", "b: 1\n");
    const auto input = write_signal("x.csv", {1, 2, 3});
    ASSERT_EQ(run("run " + filter + " " + input + " " + path("y.csv")), 0);
    EXPECT_EQ(read("y.csv"), (Vec{1, 2, 3}));
}

TEST_F(CliTest, RunOnePole) {
    const auto filter = write("f.txt", "b: 1 0\na: -0.5\n");
    const auto input = write_signal("x.csv", {1, 0, 0, 0});
    ASSERT_EQ(run("run " + filter + " " + input + " " + path("y.csv")), 0);
    EXPECT_EQ(read("y.csv"), (Vec{1, 0.5, 0.25, 0.125}));
}

TEST_F(CliTest, RunWithInitialState) {
    const auto filter = write("f.txt", "b: 1\na: -0.5\n");
    const auto input = write_signal("x.csv", {0, 0});
    const auto init = write_signal("init.csv", {2, 0});
    ASSERT_EQ(run("run " + filter + " " + input + " " + path("y.csv") + " --init " + init), 0);
    EXPECT_EQ(read("y.csv"), (Vec{1, 0.5}));
    const auto bad_init = write_signal("bad.csv", {2});
    EXPECT_EQ(run("run " + filter + " " + input + " " + path("y.csv") + " --init " + bad_init), 3);
}

TEST_F(CliTest, MissingFileIsParseError) {
    const auto filter = write("f.txt", "b: 1\n");
    EXPECT_EQ(run("run " + filter + " " + path("nope.csv") + " " + path("y.csv")), 2);
    EXPECT_EQ(run("info " + path("nope.txt")), 2);
}

TEST_F(CliTest, BadNumberIsParseError) {
    const auto filter = write("f.txt", "b: 1 zz\n");
    EXPECT_EQ(run("info " + filter), 2);
    const auto good = write("g.txt", "b: 1\n");
    const auto input = write("x.csv", "1\nabc\n");
    EXPECT_EQ(run("run " + good + " " + input + " " + path("y.csv")), 2);
}

TEST_F(CliTest, Impulse) {
    const auto fir = write("fir.txt", "b: 3 2 1\n");
    ASSERT_EQ(run("impulse " + fir + " 5 " + path("h.csv")), 0);
    EXPECT_EQ(read("h.csv"), (Vec{3, 2, 1, 0, 0}));

    const auto id = write("id.txt", "b: 1\n");
    ASSERT_EQ(run("impulse " + id + " 3 " + path("h.csv")), 0);
    EXPECT_EQ(read("h.csv"), (Vec{1, 0, 0}));

    const auto pole = write("pole.txt", "b: 1 0\na: -0.5\n");
    ASSERT_EQ(run("impulse " + pole + " 3 " + path("h.csv")), 0);
    EXPECT_EQ(read("h.csv"), (Vec{1, 0.5, 0.25}));
}

TEST_F(CliTest, EmittedSectionVerifies) {
    const auto filter = write("f.txt", "b: 0.2 -0.4 0.1\na: -0.9 0.3\n");
    std::mt19937_64 rng(41);
    const auto input = write_signal("x.csv", topofilt::testing::uniform_vector(rng, 50));
    ASSERT_EQ(run("run " + filter + " " + input + " " + path("y.csv") + " --emit-section " + path("s.txt")), 0);
    ASSERT_EQ(run("verify " + filter + " " + path("s.txt") + " --tol 0"), 0);
    EXPECT_NE(stdout_.find("consistent"), std::string::npos);

    auto sec = topofilt::io::read_section(path("s.txt"));
    sec.vertex_state(10)[1] += 1e-3;
    topofilt::io::write_section(path("bad.txt"), sec);
    ASSERT_EQ(run("verify " + filter + " " + path("bad.txt") + " --tol 1e-9"), 1);
    EXPECT_NE(stdout_.find("violation e"), std::string::npos);
}

TEST_F(CliTest, EmptySignalSectionVerifies) {
    const auto filter = write("f.txt", "b: 1 1\n");
    const auto input = write("x.csv", "sample\n");
    ASSERT_EQ(run("run " + filter + " " + input + " " + path("y.csv") + " --emit-section " + path("s.txt")), 0);
    EXPECT_TRUE(read("y.csv").empty());
    EXPECT_EQ(run("verify " + filter + " " + path("s.txt")), 0);
}

TEST_F(CliTest, VerifyShapeMismatch) {
    const auto filter = write("f.txt", "b: 1 1 1\n");
    const auto section = write("s.txt", "section 2 2 1\nv 0 0 1\nv 1 1 2\ne 0 1\n");
    EXPECT_EQ(run("verify " + filter + " " + section), 3);
    const auto garbled = write("g.txt", "section 2 3 2\nv 0 0 1\n");
    EXPECT_EQ(run("verify " + filter + " " + garbled), 2);
}

TEST_F(CliTest, CompareAgainstOracles) {
    const auto filter = write("f.txt", "b: 0.3 -0.2 0.7 0.1\na: 0.4 -0.1 0.25\n");
    std::mt19937_64 rng(43);
    const auto input = write_signal("x.csv", topofilt::testing::uniform_vector(rng, 256));
    EXPECT_EQ(run("compare " + filter + " " + input + " --rel-tol 1e-9"), 0);
    EXPECT_EQ(run("compare " + filter + " " + input + " --against both --rel-tol 1e-9"), 0);
    EXPECT_NE(stdout_.find("statespace"), std::string::npos);
}

TEST_F(CliTest, CompareIdentityHasZeroDeviation) {
    const auto filter = write("f.txt", "b: 1\n");
    const auto input = write_signal("x.csv", {1, -2, 3.5});
    ASSERT_EQ(run("compare " + filter + " " + input + " --rel-tol 0 --abs-tol 0"), 0);
    EXPECT_NE(stdout_.find("oracle max_abs 0 max_rel 0 pass"), std::string::npos);
}

TEST_F(CliTest, CompareStateSpaceNeedsState) {
    const auto filter = write("f.txt", "b: 2\n");
    const auto input = write_signal("x.csv", {1, 2});
    EXPECT_EQ(run("compare " + filter + " " + input + " --against statespace"), 3);
}

TEST_F(CliTest, Info) {
    ASSERT_EQ(run("info " + write("a.txt", "b: 1 1\n")), 0);
    EXPECT_NE(stdout_.find("state_dim 2\n"), std::string::npos);
    EXPECT_NE(stdout_.find("consistency_dim 1\n"), std::string::npos);

    ASSERT_EQ(run("info " + write("b.txt", "b: 1 2 1\na: -1.0 0.5\n")), 0);
    EXPECT_NE(stdout_.find("map_s (2x3)\n  0 1 0\n  -0.5 1 1\n"), std::string::npos);

    ASSERT_EQ(run("info " + write("c.txt", "b: 1\n")), 0);
    EXPECT_NE(stdout_.find("state_dim 1\n"), std::string::npos);
    EXPECT_NE(stdout_.find("consistency_dim 0\n"), std::string::npos);
}

TEST_F(CliTest, UsageErrorIsParseError) {
    EXPECT_EQ(run("impulse"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
}

} // namespace
