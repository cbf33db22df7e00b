#include "doctest.h"
#include "swanson/cli.hpp"
#include "test_support.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using namespace swanson;
namespace fs = std::filesystem;

namespace {

int run(std::vector<const char*> args) {
  std::vector<const char*> argv{"swanson-forge"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

struct Capture {
  std::ostream& os;
  std::ostringstream buf;
  std::streambuf* old;
  explicit Capture(std::ostream& s) : os(s), old(s.rdbuf(buf.rdbuf())) {}
  ~Capture() { os.rdbuf(old); }
  std::string str() const { return buf.str(); }
};

fs::path fresh_dir(const char* name) {
  fs::path dir = fs::temp_directory_path() / "swanson-forge-tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

std::vector<std::string> lines_of(const std::string& body) {
  std::vector<std::string> out;
  std::stringstream ss(body);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config json round trip") {
  RunConfig cfg;
  cfg.model = "eckart";
  cfg.params = {{"a2", 1.0}, {"b2", 2.0}};
  cfg.alpha = 0.05;
  cfg.beta = 0.1;
  cfg.grid_n = 700;
  cfg.window = std::make_pair(0.0, 9.5);
  cfg.checks = {"riccati", "spectrum"};
  cfg.nmax = 2;
  cfg.out_dir = "out/eckart";
  cfg.formats = {"json"};
  auto j = config_to_json(cfg);
  RunConfig back = config_from_json(j);
  CHECK(config_to_json(back).dump() == j.dump());
  CHECK(back.params.at("b2") == 2.0);
  REQUIRE(back.window.has_value());
  CHECK(back.window->second == 9.5);
  CHECK(back.formats == std::vector<std::string>{"json"});
}

TEST_CASE("config keys are checked") {
  auto j = ordered_json::parse(R"({"model":"morse","a2":3.0,"b2":1.0})");
  RunConfig cfg = config_from_json(j);
  CHECK(cfg.params.at("a2") == 3.0);
  CHECK(cfg.formats == std::vector<std::string>({"json", "csv"}));

  CHECK_RAISES(InvalidConfig,
               config_from_json(ordered_json::parse(R"({"frobnicate":"yes"})")));
  CHECK_RAISES(InvalidConfig,
               config_from_json(ordered_json::parse(R"({"grid_n":1.5})")));
  CHECK_RAISES(InvalidConfig,
               config_from_json(ordered_json::parse(R"({"window":[1.0]})")));
  CHECK_RAISES(InvalidConfig, config_from_json(ordered_json::parse(R"([1,2])")));
}

TEST_CASE("flag helpers") {
  RunConfig cfg;
  detail::apply_param_flags(cfg, {"a2=2", "b2=0.5"});
  CHECK(cfg.params.at("a2") == 2.0);
  CHECK(cfg.params.at("b2") == 0.5);
  CHECK_RAISES(InvalidConfig, detail::apply_param_flags(cfg, {"a2"}));
  CHECK_RAISES(InvalidConfig, detail::apply_param_flags(cfg, {"a2=abc"}));
  CHECK_RAISES(InvalidConfig, detail::apply_param_flags(cfg, {"=3"}));

  auto win = detail::parse_window("-4.5,12");
  CHECK(win.first == -4.5);
  CHECK(win.second == 12.0);
  CHECK_RAISES(InvalidConfig, detail::parse_window("1;2"));
  CHECK_RAISES(InvalidConfig, detail::parse_window("1,2,3"));

  CHECK(detail::split_list("riccati,spectrum") ==
        std::vector<std::string>({"riccati", "spectrum"}));
  CHECK(detail::split_list("json") == std::vector<std::string>({"json"}));
}

TEST_CASE("model listing") {
  std::ostringstream out;
  CHECK(cmd_list(out) == 0);
  auto ls = lines_of(out.str());
  REQUIRE(ls.size() == 8);
  std::string eckart, rm2;
  for (const auto& l : ls) {
    if (l.find("eckart") == 0) eckart = l;
    if (l.find("rosen-morse-2") == 0) rm2 = l;
  }
  CHECK(eckart.find("b > a²") != std::string::npos);
  CHECK(rm2.find("α < β") != std::string::npos);
}

TEST_CASE("spectra csv") {
  ModelSpec m = testref::ref_model("shifted-oscillator");
  PartnerParameters p = solve_partner(m);
  std::string body = spectra_csv(m, p, 800, 3, std::nullopt);
  auto ls = lines_of(body);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "n,eps_minus_closed,eps_minus_numeric,eps_plus_numeric,abs_err,mixed_err");
  int n = -1;
  double closed = 0, numeric = 0, plus = 0, abs_err = 0, mixed = 0;
  REQUIRE(std::sscanf(ls[1].c_str(), "%d,%lf,%lf,%lf,%lf,%lf", &n, &closed, &numeric,
                      &plus, &abs_err, &mixed) == 6);
  CHECK(n == 0);
  CHECK(closed == doctest::Approx(-5.0 / 3.0).epsilon(1e-8));
  CHECK(mixed < 5e-3);
  // plus column at row n pairs with the minus level n+1
  const double plus0 = plus;
  REQUIRE(std::sscanf(ls[2].c_str(), "%d,%lf,%lf,%lf,%lf,%lf", &n, &closed, &numeric,
                      &plus, &abs_err, &mixed) == 6);
  CHECK(std::abs(plus0 - numeric) / std::max(1.0, std::abs(numeric)) < 5e-3);
}

TEST_CASE("verify happy path writes reports") {
  fs::path dir = fresh_dir("verify-ok");
  Capture err(std::cerr);
  int rc = run({"verify", "--model", "shifted-oscillator", "--param", "a2=2", "--param",
                "b2=0.5", "--alpha", "0.1", "--beta", "0.3", "--checks", "riccati",
                "--grid-n", "600", "--out", dir.c_str()});
  CHECK(rc == 0);
  CHECK(err.str().empty());
  auto j = ordered_json::parse(slurp(dir / "report.json"));
  CHECK(j["pass"] == true);
  REQUIRE(j["checks"].size() == 1);
  CHECK(j["checks"][0]["name"] == "riccati");
  CHECK(j["checks"][0]["passed"] == true);
  CHECK(j["derived"]["lambda1"].get<double>() == doctest::Approx(1.5634719199).epsilon(1e-8));
  CHECK(j["config"]["model"] == "shifted-oscillator");
  CHECK(fs::exists(dir / "spectra.csv"));
  auto csv = lines_of(slurp(dir / "spectra.csv"));
  CHECK(csv.size() == 5);
}

TEST_CASE("verify reports constraint failures") {
  fs::path dir = fresh_dir("verify-constraint");
  Capture err(std::cerr);
  int rc = run({"verify", "--model", "eckart", "--param", "a2=1", "--param", "b2=0.5",
                "--alpha", "0.05", "--beta", "0.1", "--out", dir.c_str()});
  CHECK(rc == 1);
  CHECK(err.str().find("check failed: setup") != std::string::npos);
  auto j = ordered_json::parse(slurp(dir / "report.json"));
  CHECK(j["pass"] == false);
  CHECK(j["checks"][0]["name"] == "setup");
  CHECK_FALSE(fs::exists(dir / "spectra.csv"));
}

TEST_CASE("usage errors exit two") {
  Capture err(std::cerr);
  CHECK(run({"verify", "--model", "shifted-oscillator", "--param", "a2=2", "--param",
             "b2=0.5", "--alpha", "0.5", "--beta", "0.5"}) == 2);
  CHECK(err.str().find("error:") != std::string::npos);
  CHECK(run({"verify", "--bogus"}) == 2);
  CHECK(run({}) == 2);
  fs::path dir = fresh_dir("verify-badformat");
  CHECK(run({"verify", "--model", "shifted-oscillator", "--param", "a2=2", "--param",
             "b2=0.5", "--alpha", "0.1", "--beta", "0.3", "--checks", "riccati",
             "--grid-n", "400", "--format", "xml", "--out", dir.c_str()}) == 2);
}

TEST_CASE("config file merges under explicit flags") {
  fs::path dir = fresh_dir("config-merge");
  fs::path cfg_path = dir / "run.json";
  {
    std::ofstream out(cfg_path);
    out << R"({"model":"morse","a2":3.0,"b2":1.0,"alpha":0.05,"beta":0.1,"checks":["riccati"]})";
  }
  Capture out(std::cout);
  int rc = run({"verify", "--config", cfg_path.c_str(), "--alpha", "0.2", "--dump-config"});
  CHECK(rc == 0);
  auto j = ordered_json::parse(out.str());
  CHECK(j["model"] == "morse");
  CHECK(j["alpha"].get<double>() == 0.2);
  CHECK(j["beta"].get<double>() == 0.1);
  CHECK(j["a2"].get<double>() == 3.0);
  CHECK(j["checks"] == ordered_json::array({"riccati"}));
  // dump output is itself a loadable config
  RunConfig round = config_from_json(j);
  CHECK(round.alpha == 0.2);
  CHECK(round.params.at("b2") == 1.0);
}

TEST_CASE("plot writes deterministic svg") {
  fs::path a = fresh_dir("plot-a");
  fs::path b = fresh_dir("plot-b");
  for (const auto& dir : {a, b}) {
    int rc = run({"plot", "--model", "shifted-oscillator", "--param", "a2=2", "--param",
                  "b2=0.5", "--alpha", "0.1", "--beta", "0.3", "--nmax", "2", "--out",
                  dir.c_str()});
    CHECK(rc == 0);
  }
  std::string pot = slurp(a / "potentials.svg");
  CHECK(pot == slurp(b / "potentials.svg"));
  CHECK(pot.find("<polyline") != std::string::npos);
  CHECK(pot.rfind("</svg>\n") == pot.size() - 7);
  std::string wf = slurp(a / "wavefunctions.svg");
  CHECK(wf == slurp(b / "wavefunctions.svg"));
  CHECK(wf.find("<polyline") != std::string::npos);
}

TEST_CASE("thread override is accepted") {
  setenv("SWANSON_FORGE_THREADS", "1", 1);
  std::ostringstream sink;
  Capture out(std::cout);
  CHECK(run({"list"}) == 0);
  unsetenv("SWANSON_FORGE_THREADS");
  CHECK(lines_of(out.str()).size() == 8);
}

}  // TEST_SUITE
