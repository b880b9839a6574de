#include <gtest/gtest.h>

#include <blowup_calc/cli/dispatch.hpp>

using namespace blowup_calc;

namespace {

std::string scene_path(const std::string& f) { return std::string(BLOWUP_CALC_SCENES) + "/" + f; }

template <class F>
SceneError scene_error(F&& f) {
  try {
    f();
  } catch (const SceneError& e) {
    return e;
  }
  ADD_FAILURE() << "no diagnostic";
  return SceneError(ErrorKind::syntax, 0, 0, "");
}

struct CliRun {
  int rc;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "blowup_calc");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Scene, AxesFileHasFourElementLattice) {
  Scene sc = parse_scene(cli_detail::read_file(scene_path("axes.scene")));
  auto* L = sc.find<LatticeDecl>("L");
  ASSERT_NE(L, nullptr);
  EXPECT_EQ(L->elements.size(), 4u);
  SceneModel M(sc);
  Lattice lat = M.lattice("L");
  EXPECT_EQ(lat.name(lat.bottom()), "0");
  EXPECT_EQ(lat.name(lat.top()), "1");
  EXPECT_EQ(M.diagram("axes").assign.size(), 4u);
}

TEST(Scene, AntisymmetryDiagnostic) {
  auto e = scene_error([] { parse_scene("# cycle\nlattice L = {a<b, b<a}\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::invalid_lattice);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(std::string(e.what()).find("antisymmetry"), std::string::npos);
}

TEST(Scene, MissingJoinDiagnostic) {
  auto e = scene_error([] { parse_scene("lattice L = {0<a, 0<b}\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::invalid_lattice);
}

TEST(Scene, MalformedPolynomialAtSecondStar) {
  std::string line = "ideal I in R = (x**)";
  auto e = scene_error([&] { parse_scene("ring R = QQ[x]\n" + line + "\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::syntax);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), line.find("**") + 2);
}

TEST(Scene, UnresolvedNames) {
  EXPECT_EQ(scene_error([] { parse_scene("sub Y in R = (x)"); }).kind(), ErrorKind::unresolved_name);
  EXPECT_EQ(scene_error([] { parse_scene("ring R = QQ[x]\nsub Y in R = J"); }).kind(), ErrorKind::unresolved_name);
  EXPECT_EQ(scene_error([] { parse_scene("ring R = QQ[x]\nsub Y in R = (y)"); }).kind(), ErrorKind::unresolved_name);
  auto e = scene_error([] { parse_scene("ring R = QQ[x]\nsub Z in R = (x)\nchain c = Z < Y < R"); });
  EXPECT_EQ(e.kind(), ErrorKind::unresolved_name);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 15u);
}

TEST(Scene, DuplicateNameAndBadKeyword) {
  EXPECT_EQ(scene_error([] { parse_scene("ring R = QQ[x]\nring R = QQ[y]"); }).kind(), ErrorKind::invalid_input);
  auto e = scene_error([] { parse_scene("\n  scheme X = 1"); });
  EXPECT_EQ(e.kind(), ErrorKind::syntax);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 3u);
}

TEST(Scene, DiagramMustBeMonotone) {
  std::string base = "ring A2 = QQ[x, y]\nsub o in A2 = (x, y)\nsub l in A2 = (y)\nlattice L = {0<a, a<1}\n";
  EXPECT_NO_THROW(parse_scene(base + "diagram d on L = {0: o, a: l, 1: A2}\n"));
  auto e = scene_error([&] { parse_scene(base + "diagram d on L = {0: l, a: o, 1: A2}\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::invalid_diagram);
  EXPECT_EQ(e.line(), 5u);
  EXPECT_EQ(scene_error([&] { parse_scene(base + "diagram d on L = {0: o, a: l, 1: l}\n"); }).kind(),
            ErrorKind::invalid_diagram);
  EXPECT_EQ(scene_error([&] { parse_scene(base + "diagram d on L = {0: o, a: l}\n"); }).kind(),
            ErrorKind::invalid_diagram);
}

TEST(Scene, RoundTrip) {
  for (auto f : {"axes.scene", "chain.scene", "family.scene", "pushout.scene"}) {
    Scene a = parse_scene(cli_detail::read_file(scene_path(f)));
    std::string text = serialize_scene(a);
    Scene b = parse_scene(text);
    EXPECT_EQ(a, b) << f;
    EXPECT_EQ(serialize_scene(b), text) << f;
  }
  Scene c = parse_scene("lattice P = {1+2<1, 1+2<2, 1<{}, 2<{}, {}<top}\nlattice S = {pt}\n");
  EXPECT_EQ(c, parse_scene(serialize_scene(c)));
}

TEST(Scene, OrderSelectsRingOrder) {
  Scene sc = parse_scene(cli_detail::read_file(scene_path("axes.scene")));
  SceneModel lex(sc, MonomialOrder::lex());
  EXPECT_EQ(lex.space("A2")->charts[0].ring->order(), MonomialOrder::lex());
  EXPECT_EQ(SceneModel(sc).space("A2")->charts[0].ring->order(), MonomialOrder::grevlex());
}

TEST(Cli, BlowupOfOriginHasTwoCharts) {
  CliRun r = cli({"blowup", "--scene", scene_path("axes.scene"), "--center", "origin", "--output", "json"});
  ASSERT_EQ(r.rc, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["charts"].size(), 2u);
  EXPECT_EQ(j["divisors"]["E"].size(), 2u);
  EXPECT_EQ(j["verdicts"][0]["verdict"], "pass");
  std::vector<std::string> keys;
  for (auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"charts", "divisors", "verdicts"}));
}

// the cusp has multiplicity 2 at the origin, so dividing by the exceptional once leaves a copy of it
TEST(Cli, CuspStrictTransformModes) {
  auto strict = [](const char* mode) {
    CliRun r = cli({"blowup", "--scene", scene_path("axes.scene"), "--center", "origin", "--transform", "cusp",
                    "--strict-mode", mode, "--output", "json"});
    EXPECT_EQ(r.rc, 0) << r.err;
    return Json::parse(r.out)["divisors"]["cusp~"][0];
  };
  EXPECT_EQ(strict("saturate"), Json::array({"u^2 - x"}));
  EXPECT_EQ(strict("quotient"), Json::array({"x*u^2 - x^2"}));
}

TEST(Cli, PosetAndPushout) {
  CliRun p = cli({"poset-blowup", "--scene", scene_path("axes.scene"), "--diagram", "axes"});
  EXPECT_EQ(p.rc, 0) << p.err;
  EXPECT_NE(p.out.find("poset structure  pass"), std::string::npos);
  for (auto order : {"lex", "grevlex"}) {
    CliRun q = cli({"pushout-blowup", "--scene", scene_path("pushout.scene"), "--W", "W", "--Z", "Z", "--Y", "Y",
                 "--pushout-order", "both", "--order", order});
    EXPECT_EQ(q.rc, 0) << q.err;
    EXPECT_NE(q.out.find("order agreement  pass"), std::string::npos);
  }
}

TEST(Cli, CompositeTowerLog) {
  CliRun r = cli({"deform", "--kind", "composite", "--scene", scene_path("chain.scene"), "--chain", "c"});
  ASSERT_EQ(r.rc, 0) << r.err;
  EXPECT_EQ(count(r.out, "pushout-blowup "), 4u);
  EXPECT_EQ(count(r.out, "is empty: yes"), 2u);
  EXPECT_NE(r.out.find("composite vanishing  pass"), std::string::npos);
}

TEST(Cli, SingleAndMultipleDeform) {
  CliRun s = cli({"deform", "--kind", "single", "--scene", scene_path("chain.scene"), "--sub", "Z"});
  EXPECT_EQ(s.rc, 0) << s.err;
  CliRun m = cli({"deform", "--kind", "multiple", "--scene", scene_path("family.scene"), "--family", "F"});
  EXPECT_EQ(m.rc, 0) << m.err;
  EXPECT_NE(m.out.find("blow up 1+2"), std::string::npos);
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(cli({"verify", "--suite", "all"}).rc, 0);
  EXPECT_EQ(cli({"verify", "ID-BL0V", "--param", "rank=3"}).rc, 0);
  EXPECT_EQ(cli({"verify", "ID-SUBTRACT", "--param", "r=x**"}).rc, 1);
  EXPECT_EQ(cli({"verify", "ID-NOPE"}).rc, 2);
  EXPECT_EQ(cli({"verify", "ID-SUBTRACT", "--param", "noequals"}).rc, 2);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(cli({}).rc, 2);
  EXPECT_EQ(cli({"blowup", "--scene", scene_path("axes.scene")}).rc, 2);
  EXPECT_EQ(cli({"blowup", "--scene", "/nonexistent.scene", "--center", "x"}).rc, 2);
  EXPECT_EQ(cli({"blowup", "--scene", scene_path("axes.scene"), "--center", "nothere"}).rc, 2);
  EXPECT_EQ(cli({"blowup", "--scene", scene_path("axes.scene"), "--center", "origin", "--order", "weird"}).rc, 2);
  EXPECT_EQ(cli({"deform", "--kind", "multiple", "--scene", scene_path("family.scene")}).rc, 2);
  CliRun h = cli({"--help"});
  EXPECT_EQ(h.rc, 0);
  EXPECT_NE(h.out.find("poset-blowup"), std::string::npos);
}

TEST(Cli, SuiteJsonIsStable) {
  CliRun a = cli({"verify", "--suite", "all", "--output", "json"});
  CliRun b = cli({"verify", "--suite", "all", "--output", "json"});
  EXPECT_EQ(a.rc, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("seconds"), std::string::npos);
}
