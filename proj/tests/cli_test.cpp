#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "wsnloc/experiment.hpp"

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(WSNLOC_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("wsnloc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(CliTest, SweepIsByteIdenticalAcrossRuns) {
    const auto a = dir_ / "a.csv";
    const auto b = dir_ / "b.csv";
    ASSERT_EQ(run_cli("sweep --reps 3 --seed 7 --jobs 2 --out " + a.string()), 0);
    ASSERT_EQ(run_cli("sweep --reps 3 --seed 7 --jobs 1 --out " + b.string()), 0);
    EXPECT_EQ(slurp(a), slurp(b));
    std::istringstream in(slurp(a));
    EXPECT_EQ(wsnloc::read_sweep_csv(in).size(), 60u);
}

TEST_F(CliTest, RunEmitsOneRowPerNode) {
    const auto out = dir_ / "nodes.csv";
    ASSERT_EQ(run_cli("run --density 0.3 --mode pme --out " + out.string()), 0);
    std::istringstream in(slurp(out));
    std::string line;
    int rows = -1;  // header
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 100);
}

TEST_F(CliTest, RunWritesTrace) {
    const auto out = dir_ / "nodes.csv";
    const auto trace = dir_ / "trace.csv";
    ASSERT_EQ(run_cli("run --density 0.2 --out " + out.string() + " --trace " + trace.string()), 0);
    const auto text = slurp(trace);
    EXPECT_EQ(text.rfind("time,event_kind,sender,receiver\n", 0), 0u);
    EXPECT_NE(text.find("tx_start"), std::string::npos);
}

TEST_F(CliTest, DumpTopologyUsesConfigFile) {
    const auto cfg = dir_ / "s.conf";
    std::ofstream(cfg) << "node_count = 12\nanchor_density = 0.5\n";
    const auto out = dir_ / "topo.csv";
    ASSERT_EQ(run_cli("dump-topology -c " + cfg.string() + " --out " + out.string()), 0);
    const auto text = slurp(out);
    EXPECT_EQ(text.rfind("node_id,role,x,y\n", 0), 0u);
    std::size_t anchors = 0, pos = 0;
    while ((pos = text.find(",anchor,", pos)) != std::string::npos) {
        ++anchors;
        ++pos;
    }
    EXPECT_EQ(anchors, 6u);
}

TEST_F(CliTest, MissingConfigIsAnIoError) {
    EXPECT_EQ(run_cli("run -c " + (dir_ / "missing.conf").string()), 2);
}

TEST_F(CliTest, BadConfigIsAConfigError) {
    const auto cfg = dir_ / "bad.conf";
    std::ofstream(cfg) << "anchor_density = 1.5\n";
    EXPECT_EQ(run_cli("run -c " + cfg.string()), 1);
    EXPECT_EQ(run_cli("run --channel rayleigh"), 1);
    EXPECT_EQ(run_cli("teleport"), 1);
}

TEST_F(CliTest, UnwritableOutputIsAnIoError) {
    EXPECT_EQ(run_cli("dump-topology --out " + (dir_ / "no" / "such" / "dir.csv").string()), 2);
}

}  // namespace
