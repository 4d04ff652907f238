#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "uag/cli.hpp"
#include "uag/report.hpp"

using namespace uag;

namespace {

struct TempModel {
  std::string path;
  TempModel() {
    path = "cli_model_fixture.uag";
    std::ofstream f(path, std::ios::binary);
    f << render_model(fx::full_model());
  }
  ~TempModel() { std::remove(path.c_str()); }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return RunResult{code, out.str(), err.str()};
}

Json strip_timing(Json j) {
  j.erase("timing_ms");
  return j;
}

}  // namespace

TEST_CASE("cli verdict commands and exit codes") {
  TempModel model;
  SUBCASE("geomeq false is exit 1") {
    auto r = run_cli({"geomeq", "--model", model.path, "--a", "Z2", "--b", "Z3",
                      "--max-rank", "1", "--json"});
    CHECK(r.code == cli::kExitFalse);
    Json j = r.json();
    CHECK(j["verdict"] == false);
    CHECK(j["checked_rank"] == 1);
    CHECK(j.contains("counterexample"));
  }
  SUBCASE("autoeq over the reversal is exit 0") {
    auto r = run_cli({"autoeq", "--model", model.path, "--a", "LZ2", "--b", "RZ2", "--words",
                      "Wop", "--max-rank", "2", "--assume-applicable", "--json"});
    CHECK(r.code == cli::kExitTrue);
    Json j = r.json();
    CHECK(j["verdict"] == true);
    CHECK(j["basis"] == "user_asserted");
  }
  SUBCASE("autoeq with relative evidence") {
    auto r = run_cli({"autoeq", "--model", model.path, "--a", "LZ2", "--b", "RZ2", "--words",
                      "Wop", "--max-rank", "2", "--h0", "LZRZ", "--json"});
    CHECK(r.code == cli::kExitTrue);
    CHECK(r.json()["basis"].contains("relative_evidence"));
  }
  SUBCASE("closure prints points and coordinate size") {
    auto r = run_cli({"closure", "--model", model.path, "--algebra", "Z2", "--system", "Tsq",
                      "--json"});
    CHECK(r.code == cli::kExitTrue);
    Json j = r.json();
    CHECK(j["data"]["points"] == Json::parse("[[0],[1]]"));
    CHECK(j["data"]["coordinate_size"] == 2);
  }
  SUBCASE("closed-sets counts") {
    auto r = run_cli({"closed-sets", "--model", model.path, "--algebra", "Z2", "--rank", "1",
                      "--json"});
    CHECK(r.code == cli::kExitTrue);
    CHECK(r.json()["data"]["count"] == 2);
  }
  SUBCASE("free") {
    auto r = run_cli({"free", "--model", model.path, "--algebra", "S2", "--rank", "2", "--json"});
    CHECK(r.code == cli::kExitTrue);
    Json j = r.json();
    CHECK(j["data"]["size"] == 3);
    CHECK(j["data"]["witnesses"] == Json::parse(R"js(["x1","x2","meet(x1,x2)"])js"));
  }
  SUBCASE("derive") {
    auto r = run_cli({"derive", "--model", model.path, "--algebra", "RZ2", "--words", "Wop",
                      "--json"});
    CHECK(r.code == cli::kExitTrue);
    CHECK(r.json()["data"]["algebra"]["tables"]["mul"] == Json::parse("[0,0,1,1]"));
  }
  SUBCASE("applicable") {
    auto r = run_cli({"applicable", "--model", model.path, "--h0", "S3", "--words", "WopG",
                      "--max-rank", "2", "--json"});
    CHECK(r.code == cli::kExitTrue);
    CHECK(r.json()["verdict"] == true);
    auto bad = run_cli({"applicable", "--model", model.path, "--h0", "LZ2", "--words", "Wop",
                        "--max-rank", "2", "--json"});
    CHECK(bad.code == cli::kExitFalse);
    CHECK(bad.json()["verdict"] == false);
  }
  SUBCASE("inner-search") {
    auto r = run_cli({"inner-search", "--model", model.path, "--h0", "S3", "--words", "WopG",
                      "--max-rank", "2", "--max-depth", "1", "--json"});
    CHECK(r.code == cli::kExitTrue);
    CHECK(r.json()["data"]["witness"] == "inv(x1)");
    auto none = run_cli({"inner-search", "--model", model.path, "--h0", "LZRZ", "--words",
                         "Wop", "--max-rank", "2", "--max-depth", "2", "--json"});
    CHECK(none.code == cli::kExitFalse);
  }
  SUBCASE("check-hom and lift") {
    auto r = run_cli({"check-hom", "--model", model.path, "--algebra", "Z3", "--t1", "TdiagG",
                      "--t2", "Tsq", "--images", "mul(x1,x1)", "--json"});
    CHECK(r.code == cli::kExitTrue);
    CHECK(r.json()["verdict"] == true);
    auto bad = run_cli({"check-hom", "--model", model.path, "--algebra", "Z3", "--t1", "Tsq",
                        "--t2", "TdiagG", "--images", "x1", "--json"});
    CHECK(bad.code == cli::kExitFalse);

    auto lift = run_cli({"lift", "--model", model.path, "--algebra", "Z2", "--t1", "Tsq",
                         "--t2", "Tsq", "--gen-images", "0", "--json"});
    CHECK(lift.code == cli::kExitTrue);
    CHECK(lift.json()["data"]["images"].size() == 1);
  }
}

TEST_CASE("cli error exit codes") {
  TempModel model;
  SUBCASE("usage errors are exit 2") {
    CHECK(run_cli({"geomeq", "--model", model.path, "--a", "Z2"}).code == cli::kExitUsage);
    CHECK(run_cli({"nonsense"}).code == cli::kExitUsage);
    CHECK(run_cli({"geomeq", "--a", "Z2", "--b", "Z3", "--max-rank", "1"}).code ==
          cli::kExitUsage);
    CHECK(run_cli({"closure", "--model", "missing.uag", "--algebra", "Z2", "--system", "Tsq"})
              .code == cli::kExitUsage);
    CHECK(run_cli({"closure", "--model", model.path, "--algebra", "Zx", "--system", "Tsq"})
              .code == cli::kExitUsage);
  }
  SUBCASE("semantic errors are exit 3") {
    CHECK(run_cli({"closed-sets", "--model", model.path, "--algebra", "Q8", "--rank", "3"})
              .code == cli::kExitSemantic);
    CHECK(run_cli({"free", "--model", model.path, "--algebra", "Q8", "--rank", "9"}).code ==
          cli::kExitSemantic);
    // --point-budget lifts the default guard
    CHECK(run_cli({"free", "--model", model.path, "--algebra", "Z2", "--rank", "7",
                   "--point-budget", "128"})
              .code == cli::kExitTrue);
    // autoeq without a basis
    CHECK(run_cli({"autoeq", "--model", model.path, "--a", "LZ2", "--b", "RZ2", "--words",
                   "Wop", "--max-rank", "2"})
              .code == cli::kExitSemantic);
  }
  SUBCASE("computation errors never map to the false-verdict code") {
    std::vector<std::vector<std::string>> failing = {
        {"closed-sets", "--model", model.path, "--algebra", "Q8", "--rank", "3"},
        {"free", "--model", model.path, "--algebra", "Q8", "--rank", "9"},
        {"geomeq", "--model", model.path, "--a", "Z2", "--b", "LZ2", "--max-rank", "1"},
        {"closure", "--model", model.path, "--algebra", "Zx", "--system", "Tsq"},
        {"lift", "--model", model.path, "--algebra", "Z3", "--t1", "TdiagG", "--t2", "Tsq",
         "--gen-images", "9"},
    };
    for (const auto& args : failing) CHECK(run_cli(args).code != cli::kExitFalse);
  }
  SUBCASE("UAG_POINT_BUDGET overrides the default guard") {
    setenv("UAG_POINT_BUDGET", "200", 1);
    CHECK(run_cli({"free", "--model", model.path, "--algebra", "Z2", "--rank", "7"}).code ==
          cli::kExitTrue);
    // an explicit flag wins over the environment
    CHECK(run_cli({"free", "--model", model.path, "--algebra", "Z2", "--rank", "7",
                   "--point-budget", "64"})
              .code == cli::kExitSemantic);
    unsetenv("UAG_POINT_BUDGET");
    CHECK(run_cli({"free", "--model", model.path, "--algebra", "Z2", "--rank", "7"}).code ==
          cli::kExitSemantic);
  }
  SUBCASE("parse errors in the model are exit 2") {
    std::string bad = "bad_model_fixture.uag";
    {
      std::ofstream f(bad);
      f << "algebra A : Nope { size 1 }\n";
    }
    CHECK(run_cli({"closure", "--model", bad, "--algebra", "A", "--system", "T"}).code ==
          cli::kExitUsage);
    std::remove(bad.c_str());
  }
}

TEST_CASE("cli reports are deterministic and match the library") {
  TempModel model;
  auto first = run_cli({"geomeq", "--model", model.path, "--a", "LZ2", "--b", "RZ2",
                        "--max-rank", "2", "--json"});
  auto second = run_cli({"geomeq", "--model", model.path, "--a", "LZ2", "--b", "RZ2",
                         "--max-rank", "2", "--json"});
  CHECK(strip_timing(first.json()) == strip_timing(second.json()));
  CHECK(render_report(strip_timing(first.json())) == render_report(strip_timing(second.json())));

  // thin-adapter check: the CLI payload equals the library's rendering
  GeomVerdict v = geom_equiv(fx::lz2(), fx::rz2(), 2);
  Json expected = json_geom_verdict(v);
  Json got = first.json();
  CHECK(got["verdict"] == expected["verdict"]);
  CHECK(got["checked_rank"] == expected["checked_rank"]);
  CHECK(got["counterexample"] == expected["counterexample"]);

  // timing is last
  std::string rendered = first.out;
  auto pos = rendered.rfind("timing_ms");
  CHECK(pos != std::string::npos);
  CHECK(rendered.find('\"', pos + 10) > rendered.rfind('}'));
}

TEST_CASE("cli --out writes the report to a file") {
  TempModel model;
  std::string out_path = "cli_out_fixture.json";
  auto r = run_cli({"closure", "--model", model.path, "--algebra", "Z2", "--system", "Tsq",
                    "--json", "--out", out_path});
  CHECK(r.code == cli::kExitTrue);
  CHECK(r.out.empty());
  std::ifstream f(out_path);
  REQUIRE(f.good());
  Json j = Json::parse(f);
  CHECK(j["data"]["coordinate_size"] == 2);
  std::remove(out_path.c_str());
}
