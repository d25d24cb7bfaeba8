#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "kobest/cli.hpp"
#include "kobest/config.hpp"

using namespace kobest;
namespace fs = std::filesystem;

namespace {

int run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"kobest"};
  argv.insert(argv.end(), args.begin(), args.end());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("cli: distance on the punctured disc") {
  CHECK(run_cli({"distance", "--domain", "punctured-disc", "--p", "0.36788", "--q",
                 "0.00061785"}) == 0);
}

TEST_CASE("cli: metric and qg-verify") {
  CHECK(run_cli({"metric", "--domain", "disc", "--z", "0.5", "--v", "1"}) == 0);
  CHECK(run_cli({"qg-verify", "--domain", "punctured-disc", "--curve", "radial-geodesic",
                 "--umax", "3", "--A", "1", "--B", "0"}) == 0);
}

TEST_CASE("cli: malformed input exits 2 without partial files") {
  fs::path dir = fs::temp_directory_path() / "kobest-cli-test";
  fs::remove_all(dir);
  CHECK(run_cli({"distance", "--domain", "no-such-domain.json", "--p", "0", "--q", "0.1"}) ==
        2);
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"distance", "--domain", "disc", "--p", "zzz", "--q", "0.1"}) == 2);
  CHECK_FALSE(fs::exists(dir));

  // malformed config file
  fs::create_directories(dir);
  fs::path cfg = dir / "bad.json";
  {
    std::ofstream out(cfg);
    out << "{ not json";
  }
  CHECK(run_cli({"--config", cfg.string().c_str()}) == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli: experiment writes deterministic csv and summary") {
  fs::path dir = fs::temp_directory_path() / "kobest-cli-exp";
  fs::remove_all(dir);
  CHECK(run_cli({"experiment", "not-finitely-compact", "--samples", "50", "--out",
                 dir.string().c_str()}) == 0);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  REQUIRE(files.size() == 2);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  std::map<std::string, std::string> first;
  for (const auto& f : files) first[f.extension().string()] = slurp(f);

  // identical config + seed => byte-identical output
  CHECK(run_cli({"experiment", "not-finitely-compact", "--samples", "50", "--out",
                 dir.string().c_str()}) == 0);
  for (const auto& e : fs::directory_iterator(dir))
    CHECK(slurp(e.path()) == first[e.path().extension().string()]);
  fs::remove_all(dir);
}

TEST_CASE("cli: config file drives a run") {
  fs::path dir = fs::temp_directory_path() / "kobest-cli-cfg";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path cfg = dir / "run.json";
  {
    json j;
    j["args"] = {"distance", "--domain", "disc", "--p", "0", "--q", "0.5"};
    std::ofstream out(cfg);
    out << j.dump();
  }
  CHECK(run_cli({"--config", cfg.string().c_str()}) == 0);
  fs::remove_all(dir);
}
