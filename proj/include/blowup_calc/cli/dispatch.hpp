#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "../blowup/tower.hpp"
#include "../catalog/report.hpp"
#include "../deform/deform.hpp"
#include "scene.hpp"

namespace blowup_calc {

enum ExitCode { exit_ok = 0, exit_verification = 1, exit_input = 2 };

struct CliOptions {
  std::string scene, order = "grevlex", output = "text", strict_mode = "saturate";
  std::string center, diagram, W, Z, Y, pushout_order = "z", kind = "single", sub, family, chain;
  std::vector<std::string> transforms, params;
  std::string check;
  bool suite = false;
  std::string tag = "all";
};

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline MonomialOrder order_of(const std::string& s) { return s == "lex" ? MonomialOrder::lex() : MonomialOrder::grevlex(); }

inline StrictMode mode_of(const std::string& s) {
  return s == "quotient" ? StrictMode::quotient_once : StrictMode::saturate;
}

// a verdict made from a defect list; no source quote, these are engine self-checks
inline CheckReport self_check(const std::string& name, const std::vector<std::string>& defects) {
  CheckReport r{name, {}, {"self-check"}, Verdict::pass, {}, {}, 0};
  for (auto& d : defects) r.assertions.push_back(Assertion{d, false, {}});
  if (defects.empty()) r.assertions.push_back(Assertion{name, true, {}});
  else {
    r.verdict = Verdict::fail;
    r.reason = defects.front();
  }
  return r;
}

inline bool all_pass(const std::vector<CheckReport>& v) {
  for (auto& r : v)
    if (r.verdict == Verdict::fail) return false;
  return true;
}

// the human view of the json data model
inline std::string render_text(const Json& j, const std::vector<std::string>& log = {}) {
  std::ostringstream os;
  if (!log.empty()) {
    os << "tower log\n";
    for (auto& l : log) os << "  " << l << "\n";
  }
  if (!j["charts"].empty()) {
    os << j["charts"].size() << " charts\n";
    for (auto& c : j["charts"]) {
      os << "  " << c["label"].get<std::string>() << "  [";
      bool first = true;
      for (auto& v : c["vars"]) {
        os << (first ? "" : ", ") << v.get<std::string>();
        first = false;
      }
      os << "]";
      if (!c["relations"].empty()) {
        os << "  relations:";
        for (auto& r : c["relations"]) os << " " << r.get<std::string>();
      }
      os << "\n";
    }
  }
  for (auto& [name, per_chart] : j["divisors"].items()) {
    os << name << "\n";
    std::size_t k = 0;
    for (auto& I : per_chart) {
      os << "  chart " << k++ << ": (";
      bool first = true;
      for (auto& g : I) {
        os << (first ? "" : ", ") << g.get<std::string>();
        first = false;
      }
      os << ")\n";
    }
  }
  for (auto& v : j["verdicts"]) {
    os << v["name"].get<std::string>() << "  " << v["verdict"].get<std::string>() << "\n";
    if (!v["citation"].get<std::string>().empty())
      os << "    " << v["citation"].get<std::string>() << ": " << v["quote"].get<std::string>() << "\n";
    for (auto& a : v["assertions"])
      if (!a["ok"].get<bool>())
        os << "    FAILED " << a["what"].get<std::string>()
           << (a["detail"].get<std::string>().empty() ? "" : ": " + a["detail"].get<std::string>()) << "\n";
  }
  return os.str();
}

inline std::string log_line(const TowerLogEntry& e) {
  std::string s = "blow up " + e.step + " along";
  for (std::size_t c = 0; c < e.center.size(); ++c) s += (c ? " | " : " ") + e.center[c];
  return s + "  -> " + std::to_string(e.charts) + " charts";
}

struct Output {
  Json json;
  std::vector<std::string> log;
  bool ok = true;
  std::string text;  // overrides the rendered json when set
};

inline Output finish(const Atlas* A, const std::vector<std::pair<std::string, const ClosedSubscheme*>>& divs,
                     const std::vector<CheckReport>& verdicts, std::vector<std::string> log = {}) {
  return Output{report_json(A, divs, verdicts), std::move(log), all_pass(verdicts), {}};
}

inline Output run_blowup(const SceneModel& M, const CliOptions& o) {
  ClosedSubscheme C = M.sub(o.center);
  BlowupResult B = blow_up(C);
  std::vector<ClosedSubscheme> strict;
  for (auto& t : o.transforms) strict.push_back(strict_transform(B, M.sub(t), mode_of(o.strict_mode)));
  std::vector<std::pair<std::string, const ClosedSubscheme*>> divs{{"E", &B.exceptional.sub}};
  for (std::size_t k = 0; k < strict.size(); ++k) divs.emplace_back(o.transforms[k] + "~", &strict[k]);
  return finish(B.result.get(), divs, {self_check("universal property", universal_defects(B))});
}

inline Output run_poset(const SceneModel& M, const CliOptions& o) {
  PosetDiagram d = M.diagram(o.diagram);
  PosetBlowupResult R = poset_blow_up(d, mode_of(o.strict_mode));
  std::vector<std::pair<std::string, const ClosedSubscheme*>> divs;
  for (std::size_t e : R.order_used)
    if (R.strict_exceptionals[e]) divs.emplace_back("E'_" + d.lattice.name(e), &R.strict_exceptionals[e]->sub);
  std::vector<std::string> log;
  for (auto& s : R.steps) log.push_back(log_line(detail::log_step(s.name, s.blowup)));
  return finish(R.atlas.get(), divs, {self_check("poset structure", poset_defects(d, R))}, log);
}

inline Output run_pushout(const SceneModel& M, const CliOptions& o) {
  Square sq{M.sub(o.W), M.sub(o.Z), M.sub(o.Y)};
  std::vector<PushoutOrder> orders;
  if (o.pushout_order != "y") orders.push_back(PushoutOrder::z_first);
  if (o.pushout_order != "z") orders.push_back(PushoutOrder::y_first);
  std::vector<PushoutBlowupResult> R;
  for (auto ord : orders) R.push_back(pushout_blow_up(sq, ord));
  std::vector<std::pair<std::string, const ClosedSubscheme*>> divs;
  std::vector<CheckReport> verdicts;
  std::vector<std::string> log;
  for (auto& r : R) {
    std::string p = R.size() > 1 ? std::string(to_string(r.order)) + "/" : "";
    divs.emplace_back(p + "E'_Y", &r.e_y.sub);
    divs.emplace_back(p + "E'_Z", &r.e_z.sub);
    divs.emplace_back(p + "E'_{Y,Z}", &r.e_w.sub);
    verdicts.push_back(self_check(p + "cube", cube_defects(r)));
    for (auto& s : r.steps) log.push_back(p + log_line(detail::log_step(s.name, s.blowup)));
  }
  if (R.size() == 2) {
    std::vector<std::string> d;
    if (!(incidence(R[0]) == incidence(R[1]))) d.push_back("exceptional incidences differ between orders");
    if (R[0].atlas->size() != R[1].atlas->size()) d.push_back("chart counts differ between orders");
    verdicts.push_back(self_check("order agreement", d));
  }
  return finish(R[0].atlas.get(), divs, verdicts, log);
}

inline Output run_deform(const SceneModel& M, const CliOptions& o) {
  DeformationSpace D;
  if (o.kind == "single") {
    D = deformation_space(M.sub(o.sub));
  } else if (o.kind == "multiple") {
    auto* F = M.scene().find<FamilyDecl>(o.family);
    if (!F) throw Error(ErrorKind::unresolved_name, "unknown family '" + o.family + "'");
    std::vector<FamilyMember> fam;
    for (auto& [omega, s] : F->members) fam.push_back(FamilyMember{omega, M.sub(s)});
    D = multiple_deformation_space(fam);
  } else {
    auto* c = M.scene().find<ChainDecl>(o.chain);
    if (!c) throw Error(ErrorKind::unresolved_name, "unknown chain '" + o.chain + "'");
    D = composite_deformation_space(M.sub(c->Z), M.sub(c->Y));
  }
  std::vector<std::pair<std::string, const ClosedSubscheme*>> divs;
  std::vector<std::string> log;
  bool many = D.pieces.size() > 1;
  for (auto& P : D.pieces) {
    std::string p = many ? P.name + "/" : "";
    for (auto& [n, d] : P.divisors) divs.emplace_back(p + n, &d.sub);
    if (many) log.push_back("pushout-blowup " + P.name + ":");
    for (auto& e : P.log) log.push_back((many ? "  " : "") + log_line(e));
  }
  std::vector<CheckReport> verdicts{self_check("section avoids divisors", section_defects(D))};
  if (D.kind == DeformKind::composite) {
    auto v = composite_vanishing_defects(D);
    log.push_back(std::string("E'_Z of dY D is empty: ") + (is_empty(D.piece("dY D").divisor("E'_Z").sub) ? "yes" : "no"));
    log.push_back(std::string("E'_Z of dYZ D is empty: ") + (is_empty(D.piece("dYZ D").divisor("E'_Z").sub) ? "yes" : "no"));
    verdicts.push_back(self_check("composite vanishing", v));
  }
  return finish(D.main().total.get(), divs, verdicts, log);
}

inline Output run_verify(const CliOptions& o) {
  if (o.suite) {
    SuiteSummary s = run_suite(o.tag);
    return Output{suite_json(s), {}, s.ok(), suite_text(s)};
  }
  if (o.check.empty()) throw Error(ErrorKind::invalid_input, "verify needs a check name or --suite");
  Params prm;
  for (auto& kv : o.params) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::invalid_input, "--param expects key=value, got " + kv);
    prm[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  CheckReport r = run_check(o.check, prm);
  return Output{report_json(nullptr, {}, {r}), {}, r.verdict != Verdict::fail, {}};
}

}  // namespace cli_detail

// parses argv, runs one subcommand, writes the report to out and diagnostics to err
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"blowup_calc: blowups, poset blowups and deformation spaces over QQ"};
  app.require_subcommand(1);
  CliOptions o;
  auto common = [&](CLI::App* s, bool scene) {
    if (scene) s->add_option("--scene", o.scene, "scene file")->required();
    s->add_option("--order", o.order, "monomial order")->check(CLI::IsMember({"lex", "grevlex"}));
    s->add_option("--output", o.output, "report format")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--strict-mode", o.strict_mode, "strict transform computation")
        ->check(CLI::IsMember({"quotient", "saturate"}));
  };
  auto* bl = app.add_subcommand("blowup", "blow up a subscheme");
  common(bl, true);
  bl->add_option("--center", o.center, "subscheme to blow up")->required();
  bl->add_option("--transform", o.transforms, "subschemes whose strict transforms to report");

  auto* pb = app.add_subcommand("poset-blowup", "iterated blowup of a lattice diagram");
  common(pb, true);
  pb->add_option("--diagram", o.diagram, "diagram name")->required();

  auto* po = app.add_subcommand("pushout-blowup", "blowup of a square W in Z, W in Y");
  common(po, true);
  po->add_option("--W", o.W)->required();
  po->add_option("--Z", o.Z)->required();
  po->add_option("--Y", o.Y)->required();
  po->add_option("--pushout-order", o.pushout_order, "z (Z first), y, or both")->check(CLI::IsMember({"z", "y", "both"}));

  auto* de = app.add_subcommand("deform", "deformation spaces");
  common(de, true);
  de->add_option("--kind", o.kind)->check(CLI::IsMember({"single", "multiple", "composite"}));
  de->add_option("--sub", o.sub, "subscheme, for --kind single");
  de->add_option("--family", o.family, "family, for --kind multiple");
  de->add_option("--chain", o.chain, "chain, for --kind composite");

  auto* ve = app.add_subcommand("verify", "run identity checks");
  common(ve, false);
  ve->add_option("check", o.check, "check name");
  auto* suite = ve->add_option("--suite", o.tag, "run every check with this tag")->expected(0, 1)->default_str("all");
  ve->add_option("--param", o.params, "check parameter key=value");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o1, o2;
    int rc = app.exit(e, o1, o2);
    out << o1.str();
    err << o2.str();
    return rc == 0 ? exit_ok : exit_input;
  }
  o.suite = suite->count() > 0;
  if (o.suite && o.tag.empty()) o.tag = "all";

  try {
    cli_detail::Output res;
    if (ve->parsed()) {
      res = cli_detail::run_verify(o);
    } else {
      Scene sc = parse_scene(cli_detail::read_file(o.scene));
      SceneModel M(sc, cli_detail::order_of(o.order));
      if (bl->parsed()) res = cli_detail::run_blowup(M, o);
      else if (pb->parsed()) res = cli_detail::run_poset(M, o);
      else if (po->parsed()) res = cli_detail::run_pushout(M, o);
      else {
        if ((o.kind == "single" && o.sub.empty()) || (o.kind == "multiple" && o.family.empty()) ||
            (o.kind == "composite" && o.chain.empty()))
          throw Error(ErrorKind::invalid_input, "deform --kind " + o.kind + " needs --" +
                                                    (o.kind == "single" ? "sub" : o.kind == "multiple" ? "family" : "chain"));
        res = cli_detail::run_deform(M, o);
      }
    }
    if (o.output == "json") out << res.json.dump(2) << "\n";
    else out << (res.text.empty() ? cli_detail::render_text(res.json, res.log) : res.text);
    return res.ok ? exit_ok : exit_verification;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }
}

}  // namespace blowup_calc
