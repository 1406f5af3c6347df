#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "psdcert/io.hpp"
#include "psdcert/sdp_cases.hpp"

using namespace psdcert;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string data(const char* name) { return std::string(PSDCERT_TEST_DATA) + "/" + name; }

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("check exit codes", "[cli]") {
  CHECK(run({"check", data("identity.txt"), "--mode", "pd"}).code == 0);
  CHECK(run({"check", data("identity.txt"), "--criterion", "both"}).code == 0);
  CHECK(run({"check", data("full_pd.json"), "--mode", "pd", "--backend", "float"}).code == 0);

  const auto h = run({"check", data("hankel5.txt"), "--criterion", "both", "--format", "json"});
  CHECK(h.code == 1);
  const auto j = json_of(h);
  CHECK(j["agree"] == true);
  CHECK(j["strong"]["psd"] == false);
  CHECK(j["classic"]["psd"] == false);
  CHECK(j["strong"]["det_evals"] == 15);
  CHECK(j["classic"]["det_evals"] == 31);

  const auto a = run({"check", data("asymmetric.txt")});
  CHECK(a.code == 2);
  CHECK(a.err.find("(1,2)") != std::string::npos);
  CHECK(run({"check", data("missing-file.txt")}).code == 2);
  CHECK(run({"check", data("example3.txt")}).code == 2);
  CHECK(run({"check", data("identity.txt"), "--mode", "nope"}).code == 2);
  CHECK(run({"check", data("identity.txt"), "--psd-cap", "0"}).code == 2);
}

TEST_CASE("backend selection", "[cli]") {
  // 0.1 + 0.2 style drift: exact rejects a matrix the float band accepts
  const auto path = (std::filesystem::temp_directory_path() / "psdcert_near_sym.txt").string();
  {
    std::ofstream f(path);
    f << "1 0.3\n0.30000000000001 1\n";
  }
  CHECK(run({"check", path, "--backend", "exact"}).code == 2);
  CHECK(run({"check", path, "--backend", "float"}).code == 0);
  CHECK(run({"check", path}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("quadratic reports the identity", "[cli]") {
  const auto r = run({"quadratic", data("hankel3.txt"), "--format", "json"});
  CHECK(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["a"] == "-3");
  CHECK(j["b"] == "16");
  CHECK(j["c"] == "-21");
  CHECK(j["discriminant"] == "4");
  CHECK(j["gap"] == "0");
  CHECK(j["identity_holds"] == true);

  CHECK(run({"quadratic", data("example3.txt"), "--corner", "2,3"}).code == 2);
  CHECK(run({"quadratic", data("hankel3.txt"), "--corner", "2,2"}).code == 2);
  CHECK(run({"quadratic", data("hankel5.txt"), "--corner", "2,4", "--backend", "float"}).code == 0);
}

TEST_CASE("range gives exact endpoints", "[cli]") {
  const auto r = run({"range", data("z_block.txt"), "--entry", "1,2", "--mode", "pd", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["interval"]["lo"] == "27/50 - 2/25*sqrt(19)");
  CHECK(j["interval"]["hi"] == "27/50 + 2/25*sqrt(19)");
  CHECK(j["interval"]["lo_radicand"] == "19");
  CHECK(j["interval"]["open_lo"] == true);

  const auto p = run({"range", data("z_block.txt"), "--entry", "2,1", "--mode", "psd"});
  CHECK(p.code == 0);
  CHECK(p.out.find("[27/50 - 2/25*sqrt(19), 27/50 + 2/25*sqrt(19)]") != std::string::npos);

  const auto several = run({"range", data("example3.txt"), "--entry", "1,5"});
  CHECK(several.code == 2);
  CHECK(several.err.find("complete") != std::string::npos);
  CHECK(run({"range", data("z_block.txt"), "--entry", "1,3"}).code == 2);  // observed
  CHECK(run({"range", data("z_block.txt"), "--entry", "1,9"}).code == 2);
  CHECK(run({"range", data("z_block.txt"), "--entry", "x"}).code == 2);
}

TEST_CASE("complete", "[cli]") {
  const auto r = run({"complete", data("example3.txt"), "--mode", "pd", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["status"] == "completed");
  REQUIRE(j["values"].size() == 3);
  CHECK(j["values"][0]["entry"] == nlohmann::json::array({3, 4}));
  const auto x = to_matrix<Rational>(read_matrix(j["matrix"].dump()));
  CHECK(check_pd_classic(x).positive);

  CHECK(run({"complete", data("cycle4.txt")}).code == 4);
  CHECK(run({"complete", data("cycle4.txt"), "--mode", "pd", "--grid", "20"}).code == 4);
  const auto bad = run({"complete", data("bad_block.txt"), "--mode", "pd", "--format", "json"});
  CHECK(bad.code == 1);
  CHECK(json_of(bad)["status"] == "certified_infeasible");
  CHECK(json_of(bad)["witness"] == nlohmann::json::array({1, 2, 3}));

  const auto full = run({"complete", data("full_pd.json"), "--format", "json"});
  CHECK(full.code == 0);
  CHECK(to_matrix<Rational>(read_matrix(json_of(full)["matrix"].dump())) ==
        to_matrix<Rational>(read_matrix(read_file(data("full_pd.json")))));
  CHECK(run({"complete", data("example3.txt"), "--grid", "1"}).code == 2);
}

TEST_CASE("complete writes files and regions", "[cli]") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto mat = (dir / "psdcert_completed.txt").string();
  const auto csv = (dir / "psdcert_region.csv").string();
  const auto r = run({"complete", data("example3.txt"), "--mode", "pd", "--grid", "12", "--out", mat, "--region", "1,2",
                      "--region-out", csv});
  REQUIRE(r.code == 0);
  CHECK(r.out == "status: completed\n");
  CHECK(check_pd_classic(to_matrix<Rational>(read_matrix(read_file(mat)))).positive);
  const auto text = read_file(csv);
  CHECK(text.rfind("x1,x2,feasible_Y,feasible_Z,feasible_both\n", 0) == 0);
  std::size_t rows = 0, both = 0;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    ++rows;
    both += line.back() == '1';
  }
  CHECK(rows == 144);
  CHECK(both > 0);
  std::filesystem::remove(mat);
  std::filesystem::remove(csv);

  const auto stdout_region = run({"complete", data("example3.txt"), "--grid", "6", "--region", "1,3"});
  CHECK(stdout_region.out.find("x1,x2,feasible_Y") != std::string::npos);
  CHECK(run({"complete", data("example3.txt"), "--grid", "6", "--region", "1,1"}).code == 2);
}

TEST_CASE("sdp-cases", "[cli]") {
  const auto j = run({"sdp-cases", "--m", "4"});
  REQUIRE(j.code == 0);
  CHECK(cases_from_json(j.out) == psd_cases_m4());
  const auto csv = run({"sdp-cases", "--format", "csv"});
  CHECK(csv.out.rfind("case,kind,indices\n", 0) == 0);
  CHECK(run({"sdp-cases", "--m", "5"}).code == 2);

  const auto e = run({"sdp-cases", "--evaluate", data("full_pd4.txt"), "--format", "text"});
  CHECK(e.code == 0);
  CHECK(e.out.find("case 1: true") != std::string::npos);
  CHECK(e.out.find("covered: true") != std::string::npos);
  const auto h = json_of(run({"sdp-cases", "--evaluate", data("sdp_counterexample.txt")}));
  CHECK(h["covered"] == false);
  CHECK(run({"sdp-cases", "--evaluate", data("identity.txt")}).code == 2);
}

TEST_CASE("output is deterministic", "[cli]") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"complete", data("example3.txt"), "--format", "json"},
        std::vector<std::string>{"check", data("hankel5.txt"), "--criterion", "both"},
        std::vector<std::string>{"complete", data("example3.txt"), "--backend", "float", "--grid", "30"}}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("help and version", "[cli]") {
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("complete") != std::string::npos);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}
