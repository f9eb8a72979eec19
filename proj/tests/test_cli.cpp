#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "schema_check.hpp"

namespace fs = std::filesystem;
using anhosc::Json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  const fs::path tmp = fs::temp_directory_path() / "anhosc_cli_out.txt";
  const std::string cmd =
      std::string(ANHOSC_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(raw);
  std::ifstream is(tmp);
  std::stringstream ss;
  ss << is.rdbuf();
  r.stdout_text = ss.str();
  fs::remove(tmp);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("eig: harmonic csv output and exit codes") {
  const RunResult r = run_cli("eig --k 1 --l 1 --n 1 --N 64 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("j,lambda,converged") != std::string::npos);
  CHECK(r.stdout_text.find("# method=hermite") != std::string::npos);

  // validation failure: odd-degree potential
  CHECK(run_cli("eig --p \"x1^3\" --N 32").exit_code == 2);
  // validation failure: not in P_2k (leading coefficient negative)
  CHECK(run_cli("eig --p \"0 - x1^4\" --N 32").exit_code == 2);
  // unknown flag
  CHECK(run_cli("eig --definitely-not-a-flag 3").exit_code == 2);
  // numeric failure: zeta argument at the convergence abscissa
  CHECK(run_cli("zeta --harmonic --s 1.05 --N 64").exit_code == 3);
}

TEST_CASE("zeta: harmonic closed form through the pipeline") {
  const RunResult r = run_cli("zeta --harmonic --s 2");
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.stdout_text);
  CHECK(std::abs(j["value"].get<double>() - M_PI * M_PI / 8.0) < 1e-6);
  std::string why;
  CHECK_MESSAGE(
      anhosc_test::validate_against_schema(j, anhosc_test::load_schema("zeta.schema.json"),
                                           &why),
      why);
}

TEST_CASE("schatten: engel group boundary") {
  const RunResult r =
      run_cli("schatten --group engel --lambda 1 --mu 0 --r 1 --gamma 1.0 --N 320");
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.stdout_text);
  CHECK(j["verdict"].get<std::string>() == "convergent");
  CHECK(j["boundary"].get<double>() == doctest::Approx(0.75));
}

TEST_CASE("verify-metric emits axiom reports") {
  const RunResult r = run_cli("verify-metric --k 2 --l 1 --samples 2000 --seed 7");
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.stdout_text);
  CHECK(j["all_pass"].get<bool>());
  REQUIRE(j["reports"].is_array());
  std::string why;
  const Json schema = anhosc_test::load_schema("axiom_report.schema.json");
  for (const auto& rep : j["reports"])
    CHECK_MESSAGE(anhosc_test::validate_against_schema(rep, schema, &why), why);
}

TEST_CASE("manifest replay reproduces outputs bit-identically") {
  const fs::path dir1 = fs::temp_directory_path() / "anhosc_run1";
  const fs::path dir2 = fs::temp_directory_path() / "anhosc_run2";
  fs::remove_all(dir1);
  fs::remove_all(dir2);

  const RunResult r1 = run_cli("zeta --harmonic --s 2 --N 128 --seed 99 --out " + dir1.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(fs::exists(dir1 / "manifest.json"));
  REQUIRE(fs::exists(dir1 / "zeta.json"));

  // manifest validates against its schema
  std::string why;
  const Json man = Json::parse(slurp(dir1 / "manifest.json"));
  CHECK_MESSAGE(anhosc_test::validate_against_schema(
                    man, anhosc_test::load_schema("manifest.schema.json"), &why),
                why);

  // replay into a second directory
  Json man2 = man;
  man2["config"]["out"] = dir2.string();
  // the stored config drives the replayed run; out is part of the config
  {
    fs::create_directories(dir2);
    std::ofstream os(dir2 / "replay_manifest.json", std::ios::binary);
    os << man2.dump(2) << "\n";
  }
  const RunResult r2 = run_cli("replay --manifest " + (dir2 / "replay_manifest.json").string());
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(dir1 / "zeta.json") == slurp(dir2 / "zeta.json"));

  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("eig csv files round-trip through --out") {
  const fs::path dir = fs::temp_directory_path() / "anhosc_eig_out";
  fs::remove_all(dir);
  const RunResult r = run_cli("eig --k 1 --l 1 --N 48 --format csv --out " + dir.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp(dir / "eig.csv");
  CHECK(csv.find("# spec_hash=") != std::string::npos);
  CHECK(csv.find("\n0,1") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("eig can run the finite-difference oracle backend") {
  const RunResult r =
      run_cli("eig --harmonic --method fd --fd-L 12 --fd-M 1500 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("# method=fd") != std::string::npos);
  CHECK(r.stdout_text.find("# box_halfwidth=12") != std::string::npos);
  // fd realizes only monomial momentum symbols
  CHECK(run_cli("eig --q \"xi1^2 + 1\" --method fd").exit_code == 2);
}

TEST_CASE("counting csv staircase") {
  const RunResult r = run_cli("counting --p \"x1^4\" --q \"xi1^2\" --N 400 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("# volume_exponent=0.75") != std::string::npos);
  CHECK(r.stdout_text.find("lambda,count") != std::string::npos);
}

TEST_CASE("group sweep writes a bundle tree") {
  const fs::path dir = fs::temp_directory_path() / "anhosc_group_out";
  fs::remove_all(dir);
  const RunResult r = run_cli(
      "group --group heisenberg --nu 1,4 --gk 1 --gl 1 --gn 1 --N 64 --stages spectrum --out " +
      dir.string());
  REQUIRE(r.exit_code == 0);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "ground_state.csv"));
  CHECK(fs::exists(dir / "points/0/report.json"));
  CHECK(fs::exists(dir / "points/1/report.json"));
  const Json p1 = Json::parse(slurp(dir / "points/1/report.json"));
  CHECK(p1["report"]["spectrum"]["lambda0"].get<double>() == doctest::Approx(4.0));
  fs::remove_all(dir);
}

TEST_CASE("every json-producing command validates against its schema") {
  const std::pair<std::string, std::string> runs[] = {
      {"eig --harmonic --N 48", "eig.schema.json"},
      {"zeta --harmonic --s 2 --N 128", "zeta.schema.json"},
      {"counting --harmonic --N 256", "counting.schema.json"},
      {"schatten --harmonic --mu 1.2 --r 1 --N 128", "schatten.schema.json"},
      {"trace --k 1 --l 1 --mu 2 --grid-L 8 --grid-M 96", "trace.schema.json"},
      {"verify-metric --k 1 --l 1 --samples 500", "verify_metric.schema.json"},
      {"verify-symbol --k 2 --l 1 --max-order 2", "sigma_membership.schema.json"},
      {"compose --q \"xi1\" --p \"x1\" --grid-L 6 --grid-M 64", "compose.schema.json"},
  };
  for (const auto& [args, schema_name] : runs) {
    const RunResult r = run_cli(args);
    REQUIRE_MESSAGE(r.exit_code == 0, args);
    std::string why;
    const bool ok = anhosc_test::validate_against_schema(
        Json::parse(r.stdout_text), anhosc_test::load_schema(schema_name), &why);
    CHECK_MESSAGE(ok, (args + ": " + why));
  }
  // sweep bundle points validate too
  const fs::path dir = fs::temp_directory_path() / "anhosc_schema_sweep";
  fs::remove_all(dir);
  REQUIRE(run_cli("group --group heisenberg --nu 1 --N 48 --stages spectrum --out " +
                  dir.string())
              .exit_code == 0);
  std::string why;
  CHECK_MESSAGE(anhosc_test::validate_against_schema(
                    Json::parse(slurp(dir / "points/0/report.json")),
                    anhosc_test::load_schema("sweep_point.schema.json"), &why),
                why);
  fs::remove_all(dir);
}

TEST_CASE("options that the config file can carry override-style") {
  const fs::path cfg = fs::temp_directory_path() / "anhosc_test.cfg";
  {
    std::ofstream os(cfg);
    os << "N=48\nformat=csv\n";
  }
  const RunResult r = run_cli("eig --harmonic --config " + cfg.string());
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("# basis_size=48") != std::string::npos);
  // flags override the file
  const RunResult r2 = run_cli("eig --harmonic --config " + cfg.string() + " --N 32");
  CHECK(r2.stdout_text.find("# basis_size=32") != std::string::npos);
  fs::remove(cfg);
}
