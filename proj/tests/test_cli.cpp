#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cubinv/cli.hpp"
#include "support/generators.hpp"

using namespace cubinv;

namespace {

struct CliRun {
  int code = -1;
  std::string text;
  ordered_json j;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  CliRun r;
  r.code = run_cli(args, out);
  r.text = out.str();
  if (!r.text.empty() && r.text.front() == '{')
    r.j = ordered_json::parse(r.text);
  return r;
}

std::string f1_text() { return poly_str(gen::f1_cubic()); }
std::string f2_text() { return poly_str(gen::f2_cubic()); }

}  // namespace

TEST_CASE("classify reports the involution normal form") {
  CliRun r = run({"classify", "--cubic", f2_text(), "--signs", "00011"});
  REQUIRE(r.code == 0);
  CHECK(r.j["schema_version"] == 1);
  CHECK(r.j["command"] == "classify");
  CHECK(r.j["inputs"]["cubic"] == f2_text());
  CHECK(r.j["results"]["kind"] == "NonEckardt");
  CHECK(r.j["results"]["even_positions"] == ordered_json::array({0, 1, 2}));
  CHECK(r.j["results"]["odd_positions"] == ordered_json::array({3, 4}));
  CHECK(r.j["flags"]["smoothness"] == true);

  // field values match a direct library call
  CubicWithInvolution c = classify_involution(gen::f2_cubic(), {0, 0, 0, 1, 1});
  CHECK(r.j["results"]["g"] == poly_str(c.ne->g));
  CHECK(r.j["results"]["l1"] == poly_str(c.ne->l1));
  CHECK(r.j["results"]["l3"] == poly_str(c.ne->l3));

  CliRun e = run({"classify", "--cubic", f2_text(), "--signs", "00001"});
  REQUIRE(e.code == 1);  // F2 is not invariant under a one-minus signature
  CHECK(e.j["error"]["code"] == "NotInvariant");
}

TEST_CASE("project-L reports the branch pair and the decomposition") {
  CliRun r = run({"project-L", "--cubic", f2_text()});
  REQUIRE(r.code == 0);
  CHECK(r.j["results"]["conic_part"] == "x0*x1 - x2^2");
  CHECK(r.j["results"]["cubic_part"] == "x0^3 + x1^3 + x2^3");
  CHECK(r.j["results"]["conic_rank"] == 3);
  CHECK(r.j["flags"]["transversality"] == true);
  CHECK(r.j["flags"]["smoothness"] == true);
  ordered_json dec = r.j["results"]["decomposition"];
  CHECK(dec["kernel_order"] == 16);
  CHECK(dec["invariant_factor"]["dim"] == 3);
  CHECK(dec["invariant_factor"]["polarization"] == ordered_json::array({1, 2, 2}));
  CHECK(dec["antiinvariant_factor"]["dim"] == 2);
  CHECK(r.text.find("bookkeeping") != std::string::npos);
}

TEST_CASE("project-line covers the point, line and search modes") {
  CliRun pt = run({"project-line", "--cubic", f2_text(), "--point", "0,1,-1"});
  REQUIRE(pt.code == 0);
  CHECK(pt.j["results"]["coplanar_pair"] == true);
  CHECK(pt.j["flags"]["generality"] == true);
  CHECK(pt.j["results"]["generality"]["disc_smooth"] == true);

  // the documented line on F2 fails generality but still projects
  CliRun ln = run({"project-line", "--cubic", f2_text(), "--line",
                   "x0 + x1;x2;x3 - x4"});
  REQUIRE(ln.code == 0);
  CHECK(ln.j["flags"]["generality"] == false);
  CHECK(ln.j["results"]["generality"]["disc_smooth"] == false);
  CHECK(ln.j["results"]["generality"]["fixed_points_distinct"] == true);
  CHECK(ln.j["results"]["coplanar_pair"] == true);

  CliRun sr = run({"project-line", "--cubic", f2_text(), "--search",
                   "--max-height", "2"});
  REQUIRE(sr.code == 0);
  CHECK(sr.j["results"]["found"] == true);
  CHECK(sr.j["results"]["point"] == ordered_json::array({"0", "1", "-1"}));
  CHECK(sr.j["flags"]["generality"] == true);

  CliRun both = run({"project-line", "--cubic", f2_text(), "--point", "0,1,-1",
                     "--search"});
  CHECK(both.code == 2);
  CHECK(both.j["error"]["code"] == "Usage");

  CliRun off = run({"project-line", "--cubic", f2_text(), "--point", "1,1,1"});
  CHECK(off.code == 1);  // point not on the plane cubic
  CHECK(off.j["error"]["code"] == "PointNotOnC");
}

TEST_CASE("reconstruct builds the threefold and echoes the conic form") {
  CliRun r = run({"reconstruct", "--cubic", "x0^3 + x1^3 + x2^3", "--conic",
                  "x0*x1 - x2^2"});
  REQUIRE(r.code == 0);
  CHECK(r.j["results"]["threefold"] == f2_text());
  CHECK(r.j["results"]["kind"] == "NonEckardt");
  CHECK(r.j["results"]["conic_normal_form"]["rank"] == 3);
  CHECK(r.j["results"]["conic_normal_form"]["l1"] == "x0");
  CHECK(r.j["results"]["conic_normal_form"]["l3"] == "x2");
  CHECK(r.j["results"]["conic_normal_form"]["scale"] == "1");

  CliRun sing = run({"reconstruct", "--cubic", "x0*x1*x2", "--conic",
                     "x0*x1 - x2^2"});
  CHECK(sing.code == 1);
  CHECK(sing.j["error"]["code"] == "CubicSingular");

  CliRun deg = run({"reconstruct", "--cubic", "x0*x1", "--conic",
                    "x0*x1 - x2^2"});
  CHECK(deg.code == 2);
  CHECK(deg.j["error"]["code"] == "Usage");
}

TEST_CASE("roundtrip recovers the branch pair with unit scalars") {
  CliRun r = run({"roundtrip", "--cubic", f2_text()});
  REQUIRE(r.code == 0);
  CHECK(r.j["results"]["ok"] == true);
  CHECK(r.j["results"]["g"] == "x0^3 + x1^3 + x2^3");
  CHECK(r.j["results"]["q"] == "x0*x1 - x2^2");
  CHECK(r.j["results"]["scalars"] == ordered_json::array({"1", "1"}));

  CliRun r1 = run({"roundtrip", "--cubic", f1_text()});
  REQUIRE(r1.code == 0);
  CHECK(r1.j["results"]["ok"] == true);
  CHECK(r1.j["results"]["scalars"] == ordered_json::array({"1", "1"}));
}

TEST_CASE("tower and prym report the cover arithmetic") {
  CliRun t = run({"tower", "--base-genus", "6"});
  REQUIRE(t.code == 0);
  CHECK(t.j["results"]["genera"] == ordered_json::array({11, 5, 4, 6, 2}));
  CHECK(t.j["results"]["decomposition"]["kernel_order"] == 16);
  CHECK(t.text.find("bookkeeping") != std::string::npos);

  // the default base genus is the discriminant quintic's
  CliRun td = run({"tower"});
  REQUIRE(td.code == 0);
  CHECK(td.j["results"]["genera"] == t.j["results"]["genera"]);

  CliRun p = run({"prym", "--genus", "1", "--branch", "6"});
  REQUIRE(p.code == 0);
  CHECK(p.j["results"]["prym_dim"] == 3);
  CHECK(p.j["results"]["polarization"] == ordered_json::array({1, 1, 2}));
  CHECK(p.j["results"]["dual_polarization"] == ordered_json::array({1, 2, 2}));

  CliRun p0 = run({"prym", "--genus", "0", "--branch", "6"});
  REQUIRE(p0.code == 0);
  CHECK(p0.j["results"]["prym_dim"] == 2);
  CHECK(p0.j["results"]["polarization"] == ordered_json::array({2, 2}));

  CliRun odd = run({"prym", "--genus", "1", "--branch", "5"});
  CHECK(odd.code == 1);
  CHECK(odd.j["error"]["code"] == "OddBranchCount");

  CliRun missing = run({"prym", "--genus", "1"});
  CHECK(missing.code == 2);
}

TEST_CASE("torelli reports the codifferential kernel") {
  CliRun f1 = run({"torelli", "--cubic", f1_text()});
  REQUIRE(f1.code == 0);
  CHECK(f1.j["results"]["codifferential_kernel_dim"] == 1);
  CHECK(f1.j["results"]["in_M0"] == false);
  CHECK(f1.j["results"]["hodge_split"] == ordered_json::array({3, 2}));
  CHECK(f1.j["results"]["sym2_dim"] == 6);

  CliRun f2 = run({"torelli", "--cubic", f2_text()});
  REQUIRE(f2.code == 0);
  CHECK(f2.j["results"]["codifferential_kernel_dim"] == 0);
  CHECK(f2.j["results"]["in_M0"] == true);

  CliRun cone = run({"torelli", "--cubic", "x0^3 + x1*x3^2 + x2*x4^2"});
  CHECK(cone.code == 1);
  CHECK(cone.j["error"]["code"] == "NotSmooth");
}

TEST_CASE("exit codes separate usage errors from domain errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"classify"}).code == 2);  // missing --cubic
  CHECK(run({"classify", "--cubic", f2_text(), "--nope"}).code == 2);
  CHECK(run({"classify", "--cubic", f2_text(), "--output", "xml"}).code == 2);

  CliRun syn = run({"classify", "--cubic", "x0 +"});
  CHECK(syn.code == 2);
  CHECK(syn.j["error"]["code"] == "SyntaxError");
  CHECK(!syn.j.contains("results"));

  CliRun hom = run({"classify", "--cubic", "x0 + x1^2"});
  CHECK(hom.code == 2);
  CHECK(hom.j["error"]["code"] == "NonHomogeneous");

  CliRun signs = run({"classify", "--cubic", f2_text(), "--signs", "0001"});
  CHECK(signs.code == 2);
  CHECK(signs.j["error"]["code"] == "Usage");

  CliRun help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.text.find("classify") != std::string::npos);

  CliRun sub_help = run({"classify", "--help"});
  CHECK(sub_help.code == 0);
  CHECK(sub_help.text.find("--cubic") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"tower", "--base-genus", "6"},
        std::vector<std::string>{"project-line", "--cubic", f2_text(),
                                 "--point", "0,1,-1"},
        std::vector<std::string>{"torelli", "--cubic", f1_text()}}) {
    CliRun a = run(args);
    CliRun b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.text == b.text);
  }
}

TEST_CASE("text output flattens the same report") {
  CliRun t = run({"tower", "--base-genus", "6", "--output", "text"});
  REQUIRE(t.code == 0);
  CHECK(t.text.find("results.genera = [11,5,4,6,2]") != std::string::npos);
  CHECK(t.text.find("command = tower") != std::string::npos);
  CHECK(t.text.find('{') == std::string::npos);
}

TEST_CASE("input files supply flags and explicit flags win") {
  const std::string path = "cli_input_tmp.json";
  {
    std::ofstream f(path);
    f << ordered_json{{"cubic", f1_text()}, {"signs", "00011"}}.dump();
  }
  CliRun file = run({"classify", "--input", path});
  REQUIRE(file.code == 0);
  CHECK(file.j["inputs"]["cubic"] == f1_text());

  CliRun override_flag = run({"classify", "--input", path, "--cubic", f2_text()});
  REQUIRE(override_flag.code == 0);
  CHECK(override_flag.j["inputs"]["cubic"] == f2_text());

  CliRun missing = run({"classify", "--input", "no_such_file.json"});
  CHECK(missing.code == 2);
  std::remove(path.c_str());
}
