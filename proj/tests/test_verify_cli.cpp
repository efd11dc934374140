#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "phasekit/panel.hpp"
#include "phasekit/verify.hpp"

using namespace phasekit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("phasekit_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ojson read_json(const fs::path& p) {
  std::ifstream is(p);
  return ojson::parse(is);
}

}  // namespace

TEST_CASE("heat suite passes and is deterministic") {
  const auto a = run_suite("heat");
  CHECK(a.overall);
  int peaks = 0;
  for (const auto& e : a.entries) {
    CHECK_MESSAGE(e.pass, e.id);
    if (e.id.rfind("heat.peak.", 0) == 0) ++peaks;
  }
  CHECK(peaks == 6);
  CHECK(std::is_sorted(a.entries.begin(), a.entries.end(),
                       [](const CheckEntry& x, const CheckEntry& y) { return x.id < y.id; }));
  CHECK(report_to_json(a).dump() == report_to_json(run_suite("heat")).dump());
  CHECK(report_to_json(a)["seed"] == SuiteConfig{}.seed);
}

TEST_CASE("transforms suite passes") {
  const auto r = run_suite("transforms");
  for (const auto& e : r.entries) CHECK_MESSAGE(e.pass, e.id);
  CHECK(r.overall);
}

TEST_CASE("coarse grid is flagged as under-resolved") {
  SuiteConfig cfg;
  cfg.grid_n = 32;
  const auto r = run_suite("all", cfg);
  CHECK_FALSE(r.overall);
  bool flagged = false;
  for (const auto& e : r.entries)
    if (e.id == "transforms.resolution") {
      CHECK_FALSE(e.pass);
      flagged = e.diagnostic.find("under-resolved") != std::string::npos;
    }
  CHECK(flagged);
  CHECK_THROWS_AS(run_suite("nonsense"), std::invalid_argument);
}

TEST_CASE("panel schema validation") {
  Panel p;
  p.kind = "test";
  p.axes = {{"a", {0.0, 1.0}}, {"b", {0.0, 1.0, 2.0}}};
  p.values.assign(6, cplx(1.0, 2.0));
  p.equation = "e";
  p.anchor = "n";
  auto j = panel_to_json(p);
  CHECK(validate_panel_json(j).empty());
  CHECK(j["values"].size() == 2);
  CHECK(j["values"][0].size() == 3);
  p.complex_values = true;
  j = panel_to_json(p);
  CHECK(validate_panel_json(j).empty());
  CHECK(j["values"][1][2][1] == 2.0);
  CHECK(j["values_kind"] == "complex");

  auto bad = j;
  bad.erase("provenance");
  CHECK_FALSE(validate_panel_json(bad).empty());
  bad = j;
  bad["values"][0].erase(0);
  CHECK_FALSE(validate_panel_json(bad).empty());
  bad = j;
  bad["values_kind"] = "abs";
  CHECK_FALSE(validate_panel_json(bad).empty());

  const std::string csv = panel_to_csv(p);
  CHECK(csv.rfind("a,b,re,im\n", 0) == 0);
  CHECK(csv.find("1,2,1,2\n") != std::string::npos);

  Panel wrong = p;
  wrong.values.pop_back();
  CHECK_THROWS_AS(write_panel(wrong, (fs::temp_directory_path() / "phasekit_wrong.json").string()),
                  std::invalid_argument);
  CHECK_THROWS_AS(write_panel(p, "/nonexistent-dir/x.json"), PanelIOError);
}

TEST_CASE("cli: epsilon prints pi/4 at its maximizer") {
  const auto r = run({"epsilon", "--t", "0.159154943", "--alpha", "1", "--beta", "0"});
  CHECK(r.code == exit_ok);
  CHECK(r.out == "0.785398163\n");
}

TEST_CASE("cli: complex heat slice peak") {
  const auto dir = scratch_dir("gabor");
  const auto path = (dir / "o.json").string();
  const auto r = run({"gabor", "heat", "--d", "1", "--alpha", "1", "--beta", "1", "--t", "1", "--z", "0,0",
                      "--w-grid-n", "128", "--w-extent", "6", "--out", path});
  REQUIRE(r.code == exit_ok);
  const auto j = read_json(path);
  CHECK(validate_panel_json(j).empty());
  double mx = 0.0;
  for (const auto& row : j["values"])
    for (const auto& v : row) mx = std::max(mx, v.get<double>());
  CHECK(std::abs(mx - 0.228) <= 1e-3);
  CHECK(j["axes"]["y"].size() == 128);

  const auto c = run({"gabor", "heat", "--t", "1", "--w-grid-n", "8", "--format", "csv", "--phase"});
  CHECK(c.code == exit_ok);
  CHECK(c.out.rfind("y,eta,re,im\n", 0) == 0);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 65);
}

TEST_CASE("cli: other gabor and kernel forms") {
  CHECK(run({"gabor", "wave", "--t", "1", "--w-grid-n", "16"}).code == exit_ok);
  CHECK(run({"gabor", "wave", "--t", "1", "--w-grid-n", "16", "--phase"}).code == exit_ok);
  CHECK(run({"gabor", "hermite", "--theta", "1", "--w-grid-n", "16", "--normalized"}).code == exit_ok);
  CHECK(run({"gabor", "complex-hermite", "--theta", "0.7", "--mu", "1.3", "--z", "0,1", "--w-grid-n", "16"}).code ==
        exit_ok);
  CHECK(run({"gabor", "hermite", "--phase"}).code == exit_usage);
  CHECK(run({"kernel", "heat", "--t", "0.5", "--grid-n", "16"}).code == exit_ok);
  CHECK(run({"kernel", "wave", "--d", "2", "--grid-n", "16"}).code == exit_ok);
  CHECK(run({"kernel", "hermite", "--theta", "0.8", "--grid-n", "16"}).code == exit_ok);
  CHECK(run({"kernel", "complex-hermite", "--theta", "0.8", "--mu", "1", "--grid-n", "16"}).code == exit_ok);
  const auto k = run({"kernel", "from-symbol", "--t", "0.1", "--grid-n", "64", "--extent", "8"});
  CHECK(k.code == exit_ok);
  CHECK(validate_panel_json(ojson::parse(k.out)).empty());
  // the sine symbol's slow tail trips the edge check
  CHECK(run({"kernel", "from-symbol", "--symbol", "wave", "--grid-n", "64", "--extent", "8"}).code == exit_usage);
}

TEST_CASE("cli: usage and I/O errors") {
  CHECK(run({}).code == exit_usage);
  CHECK(run({"nonsense"}).code == exit_usage);
  CHECK(run({"gabor", "heat", "--bogus", "1"}).code == exit_usage);
  CHECK(run({"gabor", "heat", "--z", "0,0,0"}).code == exit_usage);
  CHECK(run({"gabor", "heat", "--t", "1", "--out", "/nonexistent-dir/o.json"}).code == exit_io);
  CHECK(run({"verify", "--suite", "nonsense"}).code == exit_usage);
  CHECK(run({"figure", "nonsense", "--out", "/tmp"}).code == exit_usage);
  ::setenv("PHASEKIT_THREADS", "zero", 1);
  CHECK(run({"epsilon", "--t", "1"}).code == exit_usage);
  ::setenv("PHASEKIT_THREADS", "1", 1);
  CHECK(run({"epsilon", "--t", "1"}).code == exit_ok);
  ::unsetenv("PHASEKIT_THREADS");
  set_thread_cap(0);
}

TEST_CASE("cli: verify exit codes") {
  const auto ok = run({"verify", "--suite", "metaplectic"});
  CHECK(ok.code == exit_ok);
  CHECK(ojson::parse(ok.out)["overall"] == true);
  const auto bad = run({"verify", "--suite", "transforms", "--grid-n", "32"});
  CHECK(bad.code == exit_verify_failed);
  CHECK(bad.err.find("under-resolved") != std::string::npos);
}

TEST_CASE("cli: figure panels") {
  const auto dir = scratch_dir("figures");
  for (const auto& name : figure_names())
    if (name != "wave-gabor") CHECK(run({"figure", name, "--out", dir.string()}).code == exit_ok);
  int count = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    CHECK(validate_panel_json(read_json(e.path())).empty());
    ++count;
  }
  // heat-real: 4 exact + 4 bound; heat-complex: 2 x 4; wave-kernels: 3; hermite-rotation: 4
  CHECK(count == 8 + 8 + 3 + 4);
  const auto h = read_json(dir / "hermite-rotation_t1.json");
  CHECK(h["params"]["theta"] == 0.7);
  const auto real0 = read_json(dir / "heat-real_a1_t0.json");
  CHECK(real0["values"][64][64].get<double>() == doctest::Approx(std::sqrt(0.5)));
}
