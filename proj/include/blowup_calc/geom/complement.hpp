#pragma once

#include "atlas.hpp"

namespace blowup_calc {

namespace detail {

inline Atlas keep_charts(const Atlas& X, const std::vector<std::size_t>& keep) {
  Atlas out;
  std::vector<long> idx(X.size(), -1);
  for (auto c : keep) {
    idx[c] = static_cast<long>(out.charts.size());
    out.charts.push_back(X.charts[c]);
  }
  for (auto& g : X.gluings) {
    if (idx[g.i] < 0 || idx[g.j] < 0) continue;
    Gluing h = g;
    h.i = static_cast<std::size_t>(idx[g.i]);
    h.j = static_cast<std::size_t>(idx[g.j]);
    if (h.i > h.j) h = h.reversed();
    out.gluings.push_back(h);
  }
  return out;
}

}  // namespace detail

// X minus Y. Either Y misses whole charts and the remaining charts cover the
// complement, or Y is chartwise principal on a nonzerodivisor and every chart
// is localized at its generator.
inline Atlas open_complement(const ClosedSubscheme& Y) {
  const Atlas& X = *Y.ambient;
  std::vector<std::size_t> keep, drop;
  for (std::size_t c = 0; c < X.size(); ++c) (Y.ideals[c].is_unit() ? keep : drop).push_back(c);
  if (drop.empty()) return X;
  if (!keep.empty()) {
    bool covered = true;
    for (auto d : drop) {
      std::vector<Polynomial> fs;
      for (auto k : keep)
        if (auto g = X.gluing(d, k)) fs.push_back(g->fi);
      Ideal cover = ideal_sum(X.charts[d].relations, fs);
      for (auto& y : Y.ideals[d].generators())
        if (!in_radical(y, cover)) {
          covered = false;
          break;
        }
      if (!covered) break;
    }
    if (covered) return detail::keep_charts(X, keep);
  }
  // divisor case
  std::vector<std::optional<Polynomial>> gen(X.size());
  std::vector<std::size_t> live;
  for (std::size_t c = 0; c < X.size(); ++c) {
    const auto& rel = X.charts[c].relations;
    if (Y.ideals[c].is_unit()) {
      live.push_back(c);
      continue;
    }
    auto g = minimal_generators(Y.ideals[c], rel);
    if (g.empty()) continue;  // Y contains the chart
    if (g.size() != 1 || !is_nonzerodivisor(g[0], rel))
      throw Error(ErrorKind::unsupported_complement, "complement is not covered by charts on " + X.charts[c].label);
    gen[c] = g[0];
    live.push_back(c);
  }
  Atlas out;
  std::vector<long> idx(X.size(), -1);
  std::vector<std::string> uname(X.size());
  for (auto c : live) {
    const Chart& ch = X.charts[c];
    idx[c] = static_cast<long>(out.charts.size());
    if (!gen[c]) {
      out.charts.push_back(ch);
      continue;
    }
    uname[c] = fresh_name(*ch.ring, "u");
    Ring R = extend_ring(ch.ring, {uname[c]});
    auto rel = in_ring(ch.relations.generators(), R);
    rel.push_back(Polynomial::variable(R, uname[c]) * gen[c]->in_ring(R) - Polynomial::constant(R, 1));
    out.charts.push_back(make_chart(R, ch.label, rel));
  }
  auto transition = [&](const Gluing& g) -> std::pair<Polynomial, RingMap> {
    std::size_t i = g.i, j = g.j;
    const Ring& Ri = out.charts[static_cast<std::size_t>(idx[i])].ring;
    const Ring& Rj = out.charts[static_cast<std::size_t>(idx[j])].ring;
    Ring L = localized_ring(Ri);
    Polynomial w = inverse_var(L);
    Polynomial fi = g.fi.in_ring(Ri);
    Polynomial h = Polynomial::constant(Ri, 1);
    unsigned N = 0;
    if (gen[j]) {
      auto cd = clear_denominator(g.to_i.apply(*gen[j]), g.fi, X.charts[i].ring);
      h = cd.first.in_ring(Ri);
      N = cd.second;
    }
    // L = Ri[w], w = 1/(fi h)
    Polynomial inv_fi = w * h.in_ring(L);
    std::vector<Polynomial> base_im = transport_images(g.to_i, L, inv_fi);
    std::vector<Polynomial> im;
    for (auto& v : Rj->vars()) {
      if (gen[j] && v == uname[j])
        im.push_back(w * fi.in_ring(L).pow(N + 1));
      else
        im.push_back(base_im[*X.charts[j].ring->index_of(v)]);
    }
    return {fi * h, RingMap(Rj, L, im)};
  };
  for (auto& g : X.gluings) {
    if (idx[g.i] < 0 || idx[g.j] < 0) continue;
    auto [fi, toi] = transition(g);
    auto [fj, toj] = transition(g.reversed());
    Gluing ng{static_cast<std::size_t>(idx[g.i]), static_cast<std::size_t>(idx[g.j]), fi, fj, toi, toj};
    if (ng.i > ng.j) ng = ng.reversed();
    out.gluings.push_back(ng);
  }
  return out;
}

}  // namespace blowup_calc
