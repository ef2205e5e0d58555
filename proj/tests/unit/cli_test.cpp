#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/cli.hpp"
#include "cli/cache.hpp"
#include "urnlab/urnlab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = urnlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(const std::vector<std::string>& args) {
  const Outcome o = invoke(args);
  REQUIRE_MESSAGE(o.code == 0, o.err);
  return json::parse(o.out);
}

fs::path golden_dir() { return fs::path(URNLAB_GOLDEN_DIR); }

// Structural comparison; floating values may differ in the last few ulps
// between compilers.
bool same(const json& a, const json& b, std::string path, std::string& where) {
  if (a.is_number_float() || b.is_number_float()) {
    if (!a.is_number() || !b.is_number()) {
      where = path;
      return false;
    }
    const double x = a.get<double>();
    const double y = b.get<double>();
    if (x == y || std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y))) return true;
    where = path + " (" + a.dump() + " vs " + b.dump() + ")";
    return false;
  }
  if (a.type() != b.type() || a.size() != b.size()) {
    where = path;
    return false;
  }
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key()) || !same(it.value(), b[it.key()], path + "/" + it.key(), where)) return false;
    }
    return true;
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!same(a[i], b[i], path + "/" + std::to_string(i), where)) return false;
    }
    return true;
  }
  if (a != b) where = path;
  return a == b;
}

void check_golden(const std::string& name, const std::vector<std::string>& args) {
  const Outcome o = invoke(args);
  REQUIRE_MESSAGE(o.code == 0, o.err);
  const fs::path file = golden_dir() / name;
  if (std::getenv("URNLAB_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(file) << o.out;
    return;
  }
  std::ifstream in(file);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << file.string());
  std::stringstream expected;
  expected << in.rdbuf();
  if (file.extension() == ".csv") {
    CHECK(o.out == expected.str());
    return;
  }
  std::string where;
  CHECK_MESSAGE(same(json::parse(o.out), json::parse(expected.str()), "", where), name << " differs at " << where);
}

}  // namespace

TEST_CASE("golden outputs") {
  check_golden("dist_a11_n3.json", {"dist", "--alpha", "1", "--beta", "1", "--a0", "0", "--b0", "1", "--n", "3"});
  check_golden("dist_a32_n4.csv", {"dist", "--alpha", "3", "--beta", "2", "--n", "4", "--format", "csv"});
  check_golden("moments_a11.json", {"moments", "--alpha", "1", "--beta", "1", "--n", "0,1,2,10"});
  check_golden("gf_check_a11.json", {"gf-check", "--alpha", "1", "--beta", "1", "--order", "6"});
  check_golden("saddle_a11_x2.json", {"saddle", "--alpha", "1", "--beta", "1", "--x", "2", "--n", "5,12"});
  check_golden("limits_a11.json", {"limits", "--alpha", "1", "--beta", "1", "--n", "5,20"});
  check_golden("deviations_a11.json",
               {"deviations", "--alpha", "1", "--beta", "1", "--xi", "0.5", "--points", "3", "--n", "30"});
  check_golden("simulate_a11.json",
               {"simulate", "--alpha", "1", "--beta", "1", "--n", "6", "--trials", "500", "--seed", "11"});
  check_golden("surface_a11.json",
               {"surface", "--alpha", "1", "--beta", "1", "--nx", "3", "--ny", "3"});
}

TEST_CASE("dist example masses") {
  const json doc = invoke_json({"dist", "--alpha", "1", "--beta", "1", "--a0", "0", "--b0", "1", "--n", "3"});
  CHECK(doc["masses"] == json{{"3", "15/28"}, {"4", "10/28"}, {"5", "3/28"}});
  CHECK(doc["schema_version"] == 1);
}

TEST_CASE("moments at n = 0") {
  const json doc = invoke_json({"moments", "--alpha", "2", "--beta", "3", "--n", "0"});
  CHECK(doc["rows"][0]["mean"] == "0");
  CHECK(doc["rows"][0]["variance"] == "0");
}

TEST_CASE("deviations example") {
  const json doc = invoke_json({"deviations", "--alpha", "1", "--beta", "1", "--xi", "0.5", "--t", "1.8"});
  CHECK(doc["W"].get<double>() == doctest::Approx(0.06).epsilon(1e-12));
}

TEST_CASE("empty tail is reported as null") {
  const json doc =
      invoke_json({"deviations", "--alpha", "1", "--beta", "1", "--xi", "0.01", "--t", "2.01", "--n", "20"});
  CHECK(doc["rows"][0]["empirical"][0]["exponent"].is_null());
}

TEST_CASE("simulate needs a seed and is reproducible") {
  const Outcome missing = invoke({"simulate", "--alpha", "1", "--beta", "1", "--n", "5"});
  CHECK(missing.code == 2);
  CHECK(missing.out.empty());
  const std::vector<std::string> args{"simulate", "--alpha", "2", "--beta", "1", "--n", "40",
                                      "--trials", "300", "--seed", "5"};
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(invoke(args).out == invoke(threaded).out);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"--help"}).code == 0);
  CHECK(invoke({"nope"}).code == 2);
  CHECK(invoke({"dist", "--alpha", "1", "--beta", "1"}).code == 2);
  CHECK(invoke({"dist", "--alpha", "1", "--beta", "1", "--n", "3", "--format", "xml"}).code == 2);
  CHECK(invoke({"moments", "--alpha", "1", "--beta", "1", "--n", "3", "--sign", "2"}).code == 2);

  const Outcome bad = invoke({"dist", "--alpha", "0", "--beta", "1", "--n", "3"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("error: NonPositiveParameter:", 0) == 0);
  CHECK(invoke({"dist", "--alpha", "1", "--beta", "1", "--a0", "0", "--b0", "0", "--n", "3"}).code == 1);
  CHECK(invoke({"gf-check", "--alpha", "1", "--beta", "1", "--b0", "2"}).code == 1);
  CHECK(invoke({"deviations", "--alpha", "1", "--beta", "1", "--xi", "1.5"}).code == 1);
  CHECK(invoke({"limits", "--alpha", "1", "--beta", "1", "--n", "0"}).code == 1);
  CHECK(invoke({"saddle", "--alpha", "1", "--beta", "1", "--x", "3", "--n", "10"}).code == 1);
}

TEST_CASE("csv output has one header and one line per row") {
  const Outcome o = invoke({"moments", "--alpha", "1", "--beta", "1", "--n", "1,2,3", "--format", "csv"});
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 4);
  CHECK(all[0].rfind("n,mean,variance", 0) == 0);
  CHECK(all[1].rfind("1,", 0) == 0);
}

TEST_CASE("row cache writes, reuses and repairs files") {
  const fs::path dir = fs::temp_directory_path() / "urnlab_cli_test_cache";
  fs::remove_all(dir);
  const urnlab::UrnSpec spec = urnlab::validate_urn(1, 2, 0, 1);
  const urnlab::cli::RowCache cache(dir);
  const urnlab::HistoryRow fresh = cache.row(spec, 12);
  CHECK(fresh == urnlab::history_row(spec, 12));
  const fs::path file = cache.path_for(spec, 12);
  REQUIRE(fs::exists(file));

  CHECK(cache.row(spec, 12) == fresh);
  std::ofstream(file) << "{\"schema\": \"urnlab.history_row\", \"truncated";
  CHECK(cache.row(spec, 12) == fresh);
  CHECK(urnlab::history_row_from_json(json::parse(std::ifstream(file)), spec, 12) == fresh);

  const json args_doc = invoke_json({"dist", "--alpha", "1", "--beta", "2", "--n", "12", "--cache-dir", dir.string()});
  CHECK(args_doc["total"] == urnlab::to_string(urnlab::total_histories(spec, 12)));
  fs::remove_all(dir);
}

TEST_CASE("saddle dump writes the contour") {
  const fs::path file = fs::temp_directory_path() / "urnlab_cli_contour.csv";
  fs::remove(file);
  const json doc = invoke_json({"saddle", "--alpha", "1", "--beta", "1", "--n", "8", "--samples", "5",
                                "--dump-contour", file.string()});
  CHECK(doc["contours"][0]["relative_error"].get<double>() < 1e-10);
  std::ifstream in(file);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) ++count;
  CHECK(count == 1 + 15);
  fs::remove(file);
}
