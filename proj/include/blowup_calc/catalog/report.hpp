#pragma once

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "catalog.hpp"

namespace blowup_calc {

using Json = nlohmann::ordered_json;

// {label, vars, relations} per chart, relations as a reduced basis
inline Json charts_json(const Atlas& A) {
  Json out = Json::array();
  for (auto& c : A.charts)
    out.push_back(Json{{"label", c.label}, {"vars", c.ring->vars()}, {"relations", c.relations.canonical()}});
  return out;
}

// one generator list per chart of the ambient
inline Json subscheme_json(const ClosedSubscheme& S) {
  Json out = Json::array();
  for (std::size_t c = 0; c < S.ideals.size(); ++c) {
    const Ideal& rel = S.ambient->charts[c].relations;
    out.push_back(ideal_sum(rel, S.ideals[c].generators()).canonical());
  }
  return out;
}

inline Json verdict_json(const CheckReport& r) {
  Json as = Json::array();
  for (auto& a : r.assertions) as.push_back(Json{{"what", a.what}, {"ok", a.ok}, {"detail", a.detail}});
  return Json{{"name", r.name},
              {"verdict", to_string(r.verdict)},
              {"reason", r.reason},
              {"citation", r.anchor.citation},
              {"quote", r.anchor.quote},
              {"tags", r.tags},
              {"assertions", as}};
}

// the shared schema: charts, divisors, verdicts
inline Json report_json(const Atlas* A, const std::vector<std::pair<std::string, const ClosedSubscheme*>>& divisors,
                        const std::vector<CheckReport>& verdicts) {
  Json out;
  out["charts"] = A ? charts_json(*A) : Json::array();
  Json d = Json::object();
  for (auto& [name, S] : divisors) d[name] = subscheme_json(*S);
  out["divisors"] = d;
  Json v = Json::array();
  for (auto& r : verdicts) v.push_back(verdict_json(r));
  out["verdicts"] = v;
  return out;
}

inline Json suite_json(const SuiteSummary& s) {
  Json out = report_json(nullptr, {}, s.reports);
  out["suite"] = Json{{"tag", s.tag},
                      {"pass", s.count(Verdict::pass)},
                      {"fail", s.count(Verdict::fail)},
                      {"skipped", s.count(Verdict::skipped)}};
  return out;
}

inline std::string suite_text(const SuiteSummary& s, bool timings = true) {
  std::ostringstream os;
  for (auto& r : s.reports) {
    os << r.name << "  " << to_string(r.verdict);
    if (timings) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "  %.3fs", r.seconds);
      os << buf;
    }
    os << "\n    " << r.anchor.citation << ": " << r.anchor.quote << "\n";
    if (!r.reason.empty()) os << "    " << r.reason << "\n";
    for (auto& a : r.assertions)
      if (!a.ok) os << "    FAILED " << a.what << (a.detail.empty() ? "" : ": " + a.detail) << "\n";
  }
  os << s.count(Verdict::pass) << " passed, " << s.count(Verdict::fail) << " failed, " << s.count(Verdict::skipped)
     << " skipped\n";
  return os.str();
}

}  // namespace blowup_calc
