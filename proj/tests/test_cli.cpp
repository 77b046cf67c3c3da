#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "dacscanon/io.hpp"

using namespace dacs;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / ("dacscanon_cli_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(DACS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string data(const char* name) { return std::string(DACS_TEST_DATA) + "/" + name; }

void write(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(1); }

}  // namespace

TEST(Cli, FbcfOnCircuit) {
  const fs::path out = scratch() / "fbcf.json";
  ASSERT_EQ(run("fbcf " + data("circuit.json") + " --out " + out.string()), 0);
  const json r = load_json(out.string());
  EXPECT_TRUE(r["verified"].get<bool>());
  EXPECT_EQ(r["indices"]["eps_bar_p"], json::parse("[2,2,1]"));
  EXPECT_EQ(r["indices"]["sigma_p"], json::parse("[1,1]"));
  EXPECT_EQ(r["indices"]["sigma_bar_p"].size(), 9u);
}

TEST(Cli, OtherStagesVerify) {
  const fs::path dir = scratch();
  for (const char* cmd : {"explicitate", "wong", "invariants", "mtf", "mnf", "emtf", "emnf", "emcf"}) {
    const fs::path out = dir / (std::string(cmd) + ".json");
    EXPECT_EQ(run(std::string(cmd) + " " + data("circuit.json") + " --out " + out.string()), 0) << cmd;
  }
}

TEST(Cli, VerifyCertificate) {
  const fs::path dir = scratch();
  write(dir / "id.json", transform_to_json(ExFbTransform::identity(13, 14, 2)));
  EXPECT_EQ(run("verify --left " + data("circuit.json") + " --right " + data("circuit.json") + " --cert " +
                (dir / "id.json").string() + " --out " + (dir / "v.json").string()),
            0);
  EXPECT_TRUE(load_json((dir / "v.json").string())["verified"].get<bool>());

  const fs::path fb = dir / "c.json";
  ASSERT_EQ(run("fbcf " + data("circuit.json") + " --out " + fb.string()), 0);
  const json r = load_json(fb.string());
  write(dir / "canon.json", json{{"kind", "dacs"}, {"E", r["E"]}, {"H", r["H"]}, {"L", r["L"]}});
  write(dir / "cert.json", r["certificates"]["exfb"]);
  EXPECT_EQ(run("verify --left " + data("circuit.json") + " --right " + (dir / "canon.json").string() + " --cert " +
                (dir / "cert.json").string()),
            0);
  // certificate of the wrong direction
  EXPECT_EQ(run("verify --left " + (dir / "canon.json").string() + " --right " + data("circuit.json") + " --cert " +
                (dir / "cert.json").string()),
            1);
}

TEST(Cli, RoundTrip) {
  const fs::path out = scratch() / "rt.json";
  ASSERT_EQ(run("roundtrip --seed 7 --cases 50 --out " + out.string()), 0);
  EXPECT_EQ(load_json(out.string())["indices"]["matched"].get<int>(), 50);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch();
  write(dir / "zero.json", json::parse(R"({"kind":"dacs","E":[["1/0"]],"H":[["0"]]})"));
  write(dir / "ragged.json", json::parse(R"({"kind":"dacs","E":[["1","0"],["1"]],"H":[["0","0"],["0","0"]]})"));
  std::ofstream(dir / "broken.json") << "{ not json";
  write(dir / "min.json", json::parse(R"({"kind":"dacs","E":[["1","0"]],"H":[["0","1"]],"L":[["1"]]})"));
  EXPECT_EQ(run("fbcf " + (dir / "zero.json").string()), 2);
  EXPECT_EQ(run("fbcf " + (dir / "ragged.json").string()), 2);
  EXPECT_EQ(run("fbcf " + (dir / "broken.json").string()), 2);
  EXPECT_EQ(run("fbcf " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run("nonsense"), 2);
  EXPECT_EQ(run("fbcf " + (dir / "min.json").string()), 0);
}
