#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "icv/crossval.hpp"
#include "icv/gaussmix.hpp"
#include "icv/paramodel.hpp"
#include "icv/report_io.hpp"

using namespace icv;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KDEICV_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("kdeicv_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

std::string data_file_text(const std::vector<double>& v) {
  std::string s = "value\n";
  for (double x : v) s += format_double(x) + "\n";
  return s;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("select reports the library bandwidth") {
  TempDir dir;
  const auto data = target_density("bimodal").sample(120, 3);
  const auto file = dir.write("d.csv", data_file_text(data));
  const auto json = dir.path / "sel.json";
  const auto r = run("select -i " + file.string() + " -m icv-star -o " + json.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(json));
  const auto expected = select_icv_star(Sample(data));
  CHECK(j["bandwidth"].get<double>() == expected.bandwidth);
  CHECK(j["alpha"].get<double>() == expected.kernel.alpha());
  CHECK(r.out.find(format_double(expected.bandwidth)) != std::string::npos);

  const auto l = run("select -i " + file.string() + " -m lscv");
  CHECK(l.code == 0);
  CHECK(l.out.find(format_double(select_lscv(Sample(data)).bandwidth)) != std::string::npos);
}

TEST_CASE("params matches the model") {
  const auto r = run("params 250");
  REQUIRE(r.code == 0);
  const auto m = model_params(250);
  CHECK(r.out.find(format_double(m.alpha)) != std::string::npos);
  CHECK(r.out.find(format_double(m.sigma)) != std::string::npos);
}

TEST_CASE("density grid equals the library estimate") {
  TempDir dir;
  const auto data = target_density("gaussian").sample(50, 8);
  const auto file = dir.write("d.txt", data_file_text(data));
  const auto out = dir.path / "grid.csv";
  REQUIRE(run("density -i " + file.string() + " -b 0.4 -g -2,2,5 -o " + out.string()).code == 0);
  std::istringstream in(slurp(out));
  std::vector<double> got;
  for (std::string line; std::getline(in, line);) {
    const auto comma = line.find(',');
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    got.push_back(std::stod(line.substr(comma + 1)));
  }
  const std::vector<double> grid{-2, -1, 0, 1, 2};
  const auto f = density_estimate(data, 0.4, grid);
  REQUIRE(got.size() == f.size());
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(got[k] == doctest::Approx(f[k]).epsilon(1e-13));
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto one = dir.write("one.txt", "3.5\n");
  const auto bad = dir.write("bad.txt", "1\n2\nthree\n");
  const auto flat = dir.write("flat.txt", "2\n2\n2\n2\n");
  CHECK(run("select -i " + one.string()).code == 3);
  CHECK(run("select -i " + bad.string()).code == 9);
  CHECK(run("select -i " + flat.string()).code == 6);
  CHECK(run("select -i " + bad.string() + " -m kde").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("select -i /nonexistent/data.txt").code == 9);
  CHECK(run("select -i " + one.string() + " --alpha 1 --sigma 1.4142135623730951").code != 0);
  const auto good = dir.write("good.txt", data_file_text(target_density("gaussian").sample(40, 1)));
  CHECK(run("select -i " + good.string() + " --alpha 1 --sigma 1.4142135623730951").code == 4);
  CHECK(run("select -i " + good.string() + " --alpha 6").code == 2);
}

TEST_CASE("simulate is byte-identical across runs and thread counts") {
  TempDir dir;
  const auto cfg = dir.write("s.cfg", "density=gaussian\nn=40\nreplications=4\nselectors=lscv,icv-star,icv\n");
  const auto a = dir.path / "a";
  const auto b = dir.path / "b";
  REQUIRE(run("simulate " + cfg.string() + " -s 11 -o " + a.string()).code == 0);
  REQUIRE(run("simulate " + cfg.string() + " -s 11 -w 2 -o " + b.string()).code == 0);
  for (const char* suffix : {"_summary.csv", "_summary.json", "_distribution.csv"}) {
    const auto x = slurp(a.string() + suffix);
    CHECK_FALSE(x.empty());
    CHECK(x == slurp(b.string() + suffix));
  }
  CHECK(run("simulate " + cfg.string() + " -o " + a.string()).code == 2);
  const auto broken = dir.write("broken.cfg", "n=ten\n");
  CHECK(run("simulate " + broken.string() + " -s 1").code == 9);
}

TEST_CASE("local defaults and outputs") {
  TempDir dir;
  const auto data = target_density("bimodal").sample(80, 2);
  const auto file = dir.write("d.txt", data_file_text(data));
  const auto prefix = dir.path / "loc";
  REQUIRE(run("local -i " + file.string() + " --window 1 --points 12 -o " + prefix.string()).code == 0);
  const auto profile = slurp(prefix.string() + "_profile.csv");
  CHECK(profile.find("alpha=6 sigma=6") != std::string::npos);
  std::size_t rows = 0;
  std::istringstream in(profile);
  for (std::string line; std::getline(in, line);) rows += (!line.empty() && line[0] != '#') ? 1 : 0;
  CHECK(rows == 13);
  CHECK_FALSE(slurp(prefix.string() + "_density.csv").empty());
}

}
