#pragma once

#include "atlas.hpp"

namespace blowup_calc {

// presentation of I/I^2 over the chart's quotient ring: generators are a
// minimal generating list of I, relations are syzygies reduced modulo I
struct ConormalPresentation {
  std::vector<Polynomial> generators;
  std::vector<std::vector<Polynomial>> relations;
  bool free = false;  // every syzygy entry lies in I
  std::size_t rank = 0;
};

inline ConormalPresentation conormal_presentation(const Ideal& I, const Ideal& rel) {
  ConormalPresentation P;
  P.generators = minimal_generators(I, rel);
  const std::size_t m = P.generators.size();
  std::vector<Polynomial> all = P.generators;
  for (auto& r : rel.generators()) all.push_back(r);
  bool free = true;
  for (auto& row : syzygies(all)) {
    std::vector<Polynomial> red;
    bool nz = false;
    for (std::size_t k = 0; k < m; ++k) {
      red.push_back(I.reduce(row[k]));
      nz = nz || !red.back().is_zero();
    }
    if (nz) {
      free = false;
      P.relations.push_back(std::move(red));
    }
  }
  std::sort(P.relations.begin(), P.relations.end(), [](const auto& a, const auto& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].str() != b[k].str()) return a[k].str() < b[k].str();
    return false;
  });
  P.relations.erase(std::unique(P.relations.begin(), P.relations.end()), P.relations.end());
  P.free = free;
  P.rank = m;
  return P;
}

inline ConormalPresentation conormal_presentation(const ClosedSubscheme& Y, std::size_t chart) {
  return conormal_presentation(Y.ideals.at(chart), Y.ambient->charts.at(chart).relations);
}

}  // namespace blowup_calc
