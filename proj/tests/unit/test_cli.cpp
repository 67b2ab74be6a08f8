#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpheat/cli.hpp"

using namespace cpheat;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cpheat_test_" + name)).string();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cpheat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("key=value and flag forms parse alike") {
  const RunManifest a = parse_command_line({"density1d", "N=3", "t=0.5", "c=0.2", "n_max=10"});
  const RunManifest b = parse_command_line({"density1d", "--N", "3", "--t", "0.5", "--c", "0.2", "--n-max", "10"});
  CHECK(a.command == Command::density1d);
  CHECK(a.params == b.params);
  CHECK(a.params.at("n-max") == "10");
  CHECK(a.output_path == "-");
  const RunManifest v = parse_command_line({"validate", "quick", "--seed", "5"});
  CHECK(v.command == Command::validate);
  CHECK(v.params.at("tier") == "quick");
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse_command_line({}), UsageError);
  CHECK_THROWS_AS(parse_command_line({"bogus"}), UsageError);
  auto bad = [](std::vector<std::string> args) {
    CHECK_THROWS_AS(validate_manifest(parse_command_line(args)), UsageError);
  };
  bad({"density1d", "N=3", "t=0.5"});
  bad({"density1d", "N=1", "t=0.5", "c=0.2"});
  bad({"density1d", "N=3", "t=-1", "c=0.2"});
  bad({"density1d", "N=3", "t=0.5", "c=1.2"});
  bad({"density1d", "N=3", "t=abc", "c=0.2"});
  bad({"density1d", "N=3", "t=0.5", "c=0.2", "paths=10"});
  bad({"density2d", "N=3", "t=0.5", "c=0.7,0.7"});
  bad({"density2d", "N=3", "t=0.5", "c=0.2"});
  bad({"laplace", "N=3", "t=0.5", "c=0.2", "lambda=12"});
  bad({"simulate", "N=3", "t=0.5", "c=0.2", "dt=0.1"});
  bad({"simulate", "N=3", "k=3", "t=0.5", "c=0.2,0.2,0.2"});
  bad({"validate", "tier=medium"});
  CHECK_NOTHROW(validate_manifest(parse_command_line({"density2d", "N=4", "t=0.5", "c=0.2,0.3"})));
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"density1d", "N=1", "t=0.5", "c=0.2"}) == 2);
  CHECK(run_cli({"nonsense"}) == 2);
  CHECK(run_cli({"density1d", "N=3", "t=1e-9", "c=0.2", "--out", temp_path("tiny.csv")}) == 2);
  CHECK(run_cli({"coeffs", "N=3", "c=0.5", "--out", temp_path("ok.csv")}) == 0);
}

TEST_CASE("density1d output") {
  const std::string path = temp_path("d1.csv");
  REQUIRE(run_cli({"density1d", "N=3", "t=0.5", "c=0.2", "--out", path}) == 0);
  const auto lines = read_lines(path);
  std::string meta;
  std::size_t header = 0;
  while (header < lines.size() && lines[header].rfind("#", 0) == 0) meta += lines[header++] + "\n";
  CHECK(meta.find("# cpheat ") != std::string::npos);
  CHECK(meta.find("# n_max=") != std::string::npos);
  CHECK(meta.find("# achieved_bound=") != std::string::npos);
  REQUIRE(header < lines.size());
  CHECK(lines[header] == "u,f");
  CHECK(lines.size() - header - 1 == 101);
  std::remove(path.c_str());
}

TEST_CASE("coeffs output agrees to 1e-9") {
  const std::string path = temp_path("coeffs.csv");
  REQUIRE(run_cli({"coeffs", "N=4", "c=0.25", "n_max=20", "--out", path}) == 0);
  int rows = 0;
  for (const auto& line : read_lines(path)) {
    if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 4);
    CHECK(v[3] <= 1e-9);
    ++rows;
  }
  CHECK(rows == 21);
  std::remove(path.c_str());
}

TEST_CASE("simulate and density2d outputs") {
  const std::string sim = temp_path("sim.csv");
  REQUIRE(run_cli({"simulate", "N=4", "k=2", "t=0.1", "c=0.3,0.3", "paths=50", "dt=0.01",
                   "seed=3", "threads=1", "--out", sim}) == 0);
  const auto a = read_lines(sim);
  REQUIRE(run_cli({"simulate", "N=4", "k=2", "t=0.1", "c=0.3,0.3", "paths=50", "dt=0.01",
                   "seed=3", "threads=2", "--out", sim}) == 0);
  const auto b = read_lines(sim);
  CHECK(a.size() == b.size());
  // Identical apart from the recorded thread count.
  int differing = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) differing += a[i] != b[i];
  CHECK(differing == 1);

  const std::string d2 = temp_path("d2.csv");
  REQUIRE(run_cli({"density2d", "N=4", "t=0.5", "c=0.2,0.3", "grid=5", "--out", d2}) == 0);
  int rows = 0;
  for (const auto& line : read_lines(d2)) rows += !line.empty() && line[0] != '#' && line[0] != 'u';
  CHECK(rows == 15);
  std::remove(sim.c_str());
  std::remove(d2.c_str());
}
