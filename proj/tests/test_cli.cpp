// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "tcg/catalog.hpp"
#include "tcg/cli.hpp"
#include "tcg/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tcg;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tcg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "tcg_test_cli" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("group check rejects a V that H^T does not preserve") {
  const Run r = run({"group", "check", "--catalog", "E2", "--params", "V=1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("not translation complete") != std::string::npos);
  CHECK(Json::parse(r.out).at("translation_complete") == false);
  CHECK(run({"group", "check", "--catalog", "E2", "--params", "V=2"}).code == 0);
}

TEST_CASE("orbits with expectations") {
  const Run ok = run({"orbits", "--catalog", "dim2", "--params", "a=0,c=1", "--json", "--expect",
                      R"({"open_orbits": 2, "free": true})"});
  CHECK(ok.code == 0);
  const Json j = Json::parse(ok.out);
  CHECK(j.at("open_orbits") == 2);
  CHECK(j.at("expect").at("matched") == true);
  const Run table = run({"orbits", "--catalog", "dim2"});
  CHECK(table.code == 0);
  CHECK(table.out.find("open orbits: 2") != std::string::npos);
  const Run bad = run({"orbits", "--catalog", "dim2", "--expect", R"({"open_orbits": 3})"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("open_orbits") != std::string::npos);
}

TEST_CASE("configuration errors produce error JSON") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"orbits", "--catalog", "nope"},
           {"orbits"},
           {"orbits", "--catalog", "dim2", "--group", "x.json"},
           {"orbits", "--group", "/nonexistent/spec.json"},
           {"admissibility", "--catalog", "dim2", "--grid", "100,16"},
           {"admissibility", "--catalog", "dim2", "--quad-t", "1,2"},
           {"transform", "--catalog", "E1"},
           {"wigner-compare", "--catalog", "dim2", "--grid", "128,16"},
           {"orbits", "--catalog", "dim2", "--params", "a"},
           {"orbits", "--catalog", "E1", "--params", "beta=0"},
           {"orbits", "--catalog", "dim2", "--expect", "[1]"},
       }) {
    const Run r = run(args);
    CHECK_MESSAGE(r.code == 2, args.front());
    const Json e = Json::parse(r.err.substr(0, r.err.find('\n')));
    CHECK(e.contains("error"));
    CHECK(e.contains("message"));
  }
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("catalog emit round-trips through --group") {
  const Run list = run({"catalog", "list"});
  CHECK(list.code == 0);
  CHECK(Json::parse(list.out).size() == catalog_list().size());
  const Run emit = run({"catalog", "emit", "dim2", "--params", "a=2,c=1"});
  REQUIRE(emit.code == 0);
  const Json j = Json::parse(emit.out);
  const GroupSpec spec = group_spec_from_json(j);
  CHECK(spec.chart_id() == "dim2");
  CHECK(spec.has_closed_form());
  CHECK(spec.generators()[0](1, 0) == 1.0);
  const auto dir = scratch("emit");
  const auto path = (dir / "dim2.json").string();
  std::ofstream(path) << emit.out;
  CHECK(run({"orbits", "--group", path, "--expect", R"({"open_orbits": 2})"}).code == 0);
}

TEST_CASE("group spec JSON forms") {
  const Json nested = Json::parse(R"({"n": 2, "k": 1, "generators": [[[0, 0], [1, 1]]], "chart": "exp",
                                      "params_box": [[-3, 3]]})");
  const GroupSpec a = group_spec_from_json(nested);
  CHECK(a.generators()[0](1, 0) == 1.0);
  CHECK(a.params_box()[0].hi == 3.0);
  CHECK_FALSE(a.has_closed_form());
  const GroupSpec b = group_spec_from_json(to_json(a));
  CHECK(b.generators()[0] == a.generators()[0]);
  CHECK_THROWS_AS(group_spec_from_json(Json::parse(R"({"n": 2, "k": 1, "generators": [[1, 2, 3]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(group_spec_from_json(Json::parse(R"({"n": 2, "generators": []})")), std::invalid_argument);
}

TEST_CASE("wavelet, transform and reconstruction through files") {
  const auto dir = scratch("pipeline");
  const std::string out = dir.string();
  const Run mk = run({"make-wavelet", "--catalog", "dim2", "--grid", "64,16", "--out", out});
  REQUIRE(mk.code == 0);
  CHECK(std::filesystem::exists(dir / "psi.bin"));
  CHECK(std::filesystem::exists(dir / "psi.json"));
  CHECK(std::filesystem::exists(dir / "make_wavelet.json"));
  const std::string psi = (dir / "psi.bin").string();

  const Run adm = run({"admissibility", "--catalog", "dim2", "--grid", "64,16", "--wavelet", psi, "--expect",
                       R"({"verdict": "admissible"})"});
  CHECK(adm.code == 0);

  const Run tr = run({"transform", "--catalog", "dim2", "--grid", "64,16", "--wavelet", psi, "--out", out});
  CHECK(tr.code == 0);
  CHECK(std::filesystem::exists(dir / "coefficients.bin"));

  const Run rec = run({"reconstruct", "--catalog", "dim2", "--grid", "64,16", "--wavelet", psi, "--field",
                       (dir / "coefficients.bin").string(), "--out", out});
  CHECK(rec.code == 0);
  CHECK(Json::parse(rec.out).at("residual").get<double>() <= 0.05);
  CHECK(std::filesystem::exists(dir / "reconstruction.bin"));

  const Run wrong = run({"reconstruct", "--catalog", "dim2", "--grid", "32,16", "--wavelet", psi});
  CHECK(wrong.code == 2);
}

TEST_CASE("wigner-compare and modular") {
  const auto dir = scratch("wigner");
  const Run w = run({"wigner-compare", "--catalog", "affine1d", "--out", dir.string()});
  CHECK(w.code == 0);
  CHECK(std::filesystem::exists(dir / "wigner_compare.csv"));
  CHECK(Json::parse(w.out).at("points").size() == 10);
  const Run m = run({"modular", "--catalog", "E1", "--params", "V=1,alpha=0.5,beta=-1"});
  CHECK(m.code == 0);
  const Json j = Json::parse(m.out);
  CHECK(j.at("closed_form_unimodular") == true);
  CHECK(j.at("reference_agrees") == false);
}
