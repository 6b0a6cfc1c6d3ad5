#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <sys/wait.h>

#include "scseg/image_io.hpp"

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
    const std::string cmd = std::string(SCSEG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("scseg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string p(const std::string& name) const { return (dir / name).string(); }

    fs::path dir;
};

TEST_F(CliTest, BadArguments) {
    EXPECT_EQ(run("segment --input x.png --output y.png --bogus"), 2);
    EXPECT_EQ(run("segment --output y.png"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("segment --input x.png --output y.png --algorithm nope"), 2);
}

TEST_F(CliTest, MissingInputIsIoError) {
    EXPECT_EQ(run("segment --input " + p("absent.png") + " --output " + p("m.png")), 3);
}

TEST_F(CliTest, InvalidConfigIsBadArgument) {
    ASSERT_EQ(run("synth --out " + p("pages") + " --count 1 --width 64 --height 64"), 0);
    EXPECT_EQ(run("segment --input " + p("pages/page_0000.png") + " --output " + p("m.png") + " --block-size 48"), 2);
}

TEST_F(CliTest, EndToEnd) {
    ASSERT_EQ(run("synth --out " + p("pages") + " --count 2 --seed 5 --width 128 --height 128"), 0);
    fs::create_directories(dir / "pred");
    for (const char* name : {"page_0000", "page_0001"})
        ASSERT_EQ(run("segment --input " + p(std::string("pages/") + name + ".png") + " --output " +
                      p(std::string("pred/") + name + ".png")),
                  0);
    ASSERT_EQ(run("eval --pred " + p("pred") + " --gt " + p("pages") + " --report " + p("report.json")), 0);
    const std::string report = slurp(dir / "report.json");
    EXPECT_NE(report.find("\"precision\""), std::string::npos);
    EXPECT_NE(report.find("\"recall\""), std::string::npos);

    for (const char* algo : {"djvu", "spec"})
        EXPECT_EQ(run("segment --algorithm " + std::string(algo) + " --input " + p("pages/page_0000.png") +
                      " --output " + p(std::string(algo) + ".png")),
                  0);
}

TEST_F(CliTest, DimensionMismatchInEval) {
    ASSERT_EQ(run("synth --out " + p("a") + " --count 1 --width 64 --height 64"), 0);
    ASSERT_EQ(run("synth --out " + p("b") + " --count 1 --width 128 --height 64"), 0);
    fs::create_directories(dir / "pred");
    fs::copy_file(dir / "b" / "page_0000_gt.png", dir / "pred" / "page_0000.png");
    EXPECT_EQ(run("eval --pred " + p("pred") + " --gt " + p("a")), 4);
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutput) {
    ASSERT_EQ(run("synth --out " + p("pages") + " --count 1 --seed 11 --width 320 --height 192"), 0);
    const std::string in = p("pages/page_0000.png");
    ASSERT_EQ(run("segment --input " + in + " --output " + p("t1.png") + " --threads 1"), 0);
    ASSERT_EQ(run("segment --input " + in + " --output " + p("t8.png") + " --threads 8"), 0);
    ASSERT_EQ(run("segment --input " + in + " --output " + p("t1b.png") + " --threads 1"), 0);
    EXPECT_EQ(slurp(dir / "t1.png"), slurp(dir / "t8.png"));
    EXPECT_EQ(slurp(dir / "t1.png"), slurp(dir / "t1b.png"));
}

}  // namespace
