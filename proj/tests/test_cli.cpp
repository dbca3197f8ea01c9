#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "abelsup/certify.hpp"
#include "abelsup/cli.hpp"
#include "json.hpp"

using namespace abelsup;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& stem) {
  return std::string("/tmp/abelsup_cli_") + stem + "_" + std::to_string(::getpid()) + ".json";
}

}  // namespace

TEST_CASE("enumerate") {
  auto r = run({"enumerate", "--family", "psl", "-n", "3", "-q", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("d = 3") != std::string::npos);
  CHECK(r.out.find("|Out| = 12") != std::string::npos);

  r = run({"enumerate", "--family", "psl", "-n", "2", "-q", "8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("|Out| = 3") != std::string::npos);
  CHECK(r.out.find("1 maximal abelian") != std::string::npos);

  r = run({"enumerate", "--family", "psl", "-n", "3", "-q", "4", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["d"] == 3);
  CHECK(j["order"] == 12);
  CHECK(j["maximal_abelian"].size() == 4);
}

TEST_CASE("certify exit codes") {
  auto r = run({"certify", "--family", "psl", "-n", "2", "-q", "9", "--t", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);

  r = run({"certify", "--family", "psl", "-n", "4", "-q", "5", "--t", "d^2,f"});
  CHECK(r.code == 0);

  CHECK(run({"certify", "--family", "g2", "-n", "2", "-q", "5"}).code == 2);
  CHECK(run({"certify", "--family", "psl", "-n", "3", "-q", "6"}).code == 2);
  CHECK(run({"certify", "--family", "psl", "-n", "3", "-q", "4", "--t", "99"}).code == 2);
  CHECK(run({"certify", "--family", "psl", "-n", "3", "-q", "4", "--t", "d,g"}).code == 2);
  CHECK(run({"certify", "--family", "psl", "-n", "3", "-q", "4", "--format", "xml"}).code == 2);
  CHECK(run({"certify", "--family", "psu", "-n", "3", "-q", "9", "--field-table-bound", "50"}).code ==
        2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("replay of a written certificate, and of a corrupted one") {
  auto r = run({"certify", "--family", "dn", "-n", "5", "-q", "9", "--t", "0", "--format", "json"});
  REQUIRE(r.code == 0);
  const std::string good = temp_path("good"), bad = temp_path("bad");
  std::ofstream(good) << r.out;
  auto rp = run({"replay", good});
  CHECK(rp.code == 0);
  CHECK(rp.out == "PASS\n");

  auto c = certificate_from_json(nlohmann::json::parse(r.out).dump());
  std::ofstream(bad) << certificate_to_json(mutate_certificate(c, 3));
  rp = run({"replay", bad});
  CHECK(rp.code == 1);
  CHECK(rp.out.rfind("FAIL", 0) == 0);

  CHECK(run({"replay", "/nonexistent/cert.json"}).code == 2);
  std::remove(good.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("sweep") {
  auto serial = run({"sweep", "--family", "psl,dn", "--max-n", "4", "--q-list", "4,5,7,9",
                     "--format", "json"});
  auto parallel = run({"sweep", "--family", "psl,dn", "--max-n", "4", "--q-list", "4,5,7,9",
                       "--format", "json", "--jobs", "8"});
  CHECK(serial.code == 0);
  CHECK(serial.out == parallel.out);
  auto j = nlohmann::json::parse(serial.out);
  CHECK(j["counts"]["fail"] == 0);
  CHECK(j["counts"]["pass"].get<int>() > 0);

  auto empty = run({"sweep", "--family", "psl", "--max-n", "1", "--q-list", "5", "--format", "json"});
  CHECK(empty.code == 0);
  CHECK(nlohmann::json::parse(empty.out)["entries"].empty());

  CHECK(run({"sweep", "--family", "psl", "--max-n", "3", "--q-list", "6"}).code == 2);
  CHECK(run({"sweep", "--family", "psl", "--max-n", "3", "--q-list", "5", "--jobs", "0"}).code == 2);
  CHECK(run({"sweep", "--family", "dn_odd", "--max-n", "5", "--q-list", "9"}).code == 0);
}
