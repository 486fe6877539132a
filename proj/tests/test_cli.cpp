#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "k2ms/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = k2ms::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("k2ms_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

bool every_check_passes(const json& rep) {
  for (const json& c : rep["checks"])
    if (!c["pass"].get<bool>()) return false;
  return !rep["checks"].empty();
}

}  // namespace

TEST_CASE("verify-manin") {
  for (std::string p : {"5", "7", "11", "13", "37"}) {
    const Result r = run({"verify-manin", "--p", p, "--n", "1"});
    CHECK(r.code == 0);
    CHECK(every_check_passes(r.report()));
  }
  const Result r = run({"verify-manin", "--p", "5", "--n", "2"});
  CHECK(r.code == 0);
  CHECK(r.report()["command"] == "verify-manin");
  CHECK(run({"verify-manin", "--p", "7", "--n", "1", "--flags", "F1-F4"}).code == 0);
}

TEST_CASE("verify-hecke") {
  const Result r = run({"verify-hecke", "--p", "5", "--n", "1", "--q", "2"});
  CHECK(r.code == 0);
  CHECK(r.report()["pass"] == true);
  CHECK(run({"verify-hecke", "--p", "37", "--n", "1", "--q", "2,3"}).code == 0);
  CHECK(run({"verify-hecke", "--p", "5", "--n", "2"}).code == 0);
  // Dropping the T_2 and T_3 identities breaks the check.
  const Result bad = run({"verify-hecke", "--p", "7", "--n", "1", "--flags", "F1-F4"});
  CHECK(bad.code == 1);
  CHECK(bad.report()["pass"] == false);
}

TEST_CASE("theorem12") {
  const Result r = run({"theorem12", "--p", "37", "--k", "32"});
  CHECK(r.code == 0);
  CHECK(r.report()["data"]["rho_count"] == 1);
  CHECK(run({"theorem12", "--p", "5", "--k", "4"}).code == 0);
  CHECK(run({"theorem12", "--p", "37", "--k", "31"}).code == 2);
}

TEST_CASE("eis-dim") {
  const Result r = run({"eis-dim", "--p", "37", "--k", "32", "--primes", "2,3"});
  CHECK(r.code == 0);
  const json rep = r.report();
  CHECK(every_check_passes(rep));
  CHECK(r.out.find("\"dim_plus_eisenstein\": 1") != std::string::npos);
  CHECK(run({"eis-dim", "--p", "7", "--k", "4"}).code == 0);

  const fs::path dir = scratch("eis");
  const Result sweep = run({"eis-dim", "--max-p", "60", "--csv", (dir / "sweep.csv").string()});
  CHECK(sweep.code == 0);
  const std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind("p,k,dim_total,dim_boundary,dim_parabolic,dim_plus,dim_plus_eisenstein\n", 0) == 0);
  CHECK(csv.find("\n37,32,5,1,4,2,1\n") != std::string::npos);
  CHECK(csv.find("\n59,44,7,1,6,3,1\n") != std::string::npos);
  CHECK(run({"eis-dim", "--p", "37"}).code == 2);
  CHECK(run({"eis-dim", "--p", "37", "--k", "32", "--primes", "37"}).code == 2);
}

TEST_CASE("irregular-pairs") {
  const Result r = run({"irregular-pairs", "--max-p", "160"});
  CHECK(r.code == 0);
  CHECK(r.report()["data"]["pairs"].size() == 9);
  CHECK(r.report()["data"]["pairs"][0] == json::array({37, 32}));
  const fs::path dir = scratch("irr");
  CHECK(run({"irregular-pairs", "--max-p", "70", "--csv", (dir / "irr.csv").string()}).code == 0);
  CHECK(slurp(dir / "irr.csv") == "p,k\n37,32\n59,44\n67,58\n");
  CHECK(run({"irregular-pairs"}).code == 2);
}

TEST_CASE("lvalues") {
  const fs::path dir = scratch("lv");
  const Result r = run({"lvalues", "--p", "37", "--k", "32", "--csv", (dir / "l.csv").string()});
  CHECK(r.code == 0);
  CHECK(every_check_passes(r.report()));
  const std::string csv = slurp(dir / "l.csv");
  CHECK(csv.rfind("rho,i,L,excluded\n0,1,,1\n", 0) == 0);
  CHECK(run({"lvalues", "--p", "5", "--k", "4"}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"verify-manin", "--p", "x"}).code == 2);
  CHECK(run({"verify-manin", "--p", "4"}).code == 2);
  CHECK(run({"verify-manin", "--p", "5", "--flags", "F1-F2"}).code == 2);
  CHECK(run({"fixtures", "--scope", "nope"}).code == 2);
  const Result help = run({"--help"});
  CHECK(help.code == 0);
  for (const char* sub : {"verify-manin", "verify-hecke", "theorem12", "eis-dim", "irregular-pairs", "lvalues", "fixtures"})
    CHECK(help.out.find(sub) != std::string::npos);
}

TEST_CASE("reports are byte deterministic") {
  for (const std::vector<std::string>& args :
       std::vector<std::vector<std::string>>{{"theorem12", "--p", "37", "--k", "32"},
                                             {"verify-hecke", "--p", "5", "--n", "2"},
                                             {"eis-dim", "--p", "59", "--k", "44", "--primes", "2,3"}}) {
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("fixtures regenerate bit for bit") {
  const fs::path dir = scratch("fixtures");
  const Result r = run({"fixtures", "--scope", "all", "--fixtures", dir.string()});
  REQUIRE(r.code == 0);
  for (const char* name : {"cyclo.json", "lvalues.json", "eis.json"}) {
    INFO(name);
    const std::string fresh = slurp(dir / name);
    CHECK_FALSE(fresh.empty());
    CHECK(fresh == slurp(fs::path("tests/fixtures") / name));
  }
  const fs::path one = scratch("fixtures_one");
  CHECK(k2ms::cli::emit_fixtures("eis", one).size() == 1);
  CHECK(fs::exists(one / "eis.json"));
  CHECK_FALSE(fs::exists(one / "cyclo.json"));
}

TEST_CASE("fixture contents") {
  const json cyclo = json::parse(slurp("tests/fixtures/cyclo.json"));
  const json eis = json::parse(slurp("tests/fixtures/eis.json"));
  const json lv = json::parse(slurp("tests/fixtures/lvalues.json"));
  CHECK(cyclo == k2ms::cli::cyclo_fixture());
  CHECK(eis == k2ms::cli::eis_fixture());
  CHECK(lv == k2ms::cli::lvalues_fixture());
  std::size_t irregular = 0;
  for (const json& pair : eis["pairs"]) {
    if (pair["irregular"].get<bool>()) {
      ++irregular;
      CHECK(pair["dim_plus_eisenstein_2"] == 1);
      CHECK(pair["dim_plus_eisenstein_23"] == 1);
    } else {
      CHECK(pair["dim_plus_eisenstein_2"] == 0);
    }
  }
  CHECK(irregular == 5);
  CHECK(k2ms::cli::canonical_dump(json{{"b", 1}, {"a", 2}}) == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}
