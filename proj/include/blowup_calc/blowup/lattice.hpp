#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "../geom/atlas.hpp"

namespace blowup_calc {

// finite lattice given by elements and a generating set of strict relations a < b
class Lattice {
 public:
  Lattice() = default;
  Lattice(std::vector<std::string> elements, const std::vector<std::pair<std::string, std::string>>& less)
      : names_(std::move(elements)) {
    const std::size_t n = names_.size();
    if (n == 0) throw Error(ErrorKind::invalid_lattice, "lattice has no elements");
    for (std::size_t i = 0; i < n; ++i) {
      if (!index_.emplace(names_[i], i).second) throw Error(ErrorKind::invalid_lattice, "duplicate element " + names_[i]);
    }
    leq_.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq_[i][i] = true;
    for (auto& [a, b] : less) leq_[index(a)][index(b)] = true;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq_[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (leq_[k][j]) leq_[i][j] = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (leq_[i][j] && leq_[j][i])
          throw Error(ErrorKind::invalid_lattice, "antisymmetry fails for " + names_[i] + " and " + names_[j]);
    meet_.assign(n, std::vector<std::size_t>(n));
    join_.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        meet_[i][j] = bound(i, j, true);
        join_[i][j] = bound(i, j, false);
      }
    bottom_ = meet_all();
    top_ = join_all();
  }

  // P(Omega)^op with a new maximum; element k < 2^n is the subset with bit mask k,
  // named by its members joined with "+" ("{}" for the empty set), top named "top"
  static Lattice power_set_op_plus(const std::vector<std::string>& omega) {
    const std::size_t n = omega.size();
    const std::size_t m = std::size_t{1} << n;
    std::vector<std::string> el;
    for (std::size_t k = 0; k < m; ++k) el.push_back(subset_name(omega, k));
    el.push_back("top");
    std::vector<std::pair<std::string, std::string>> less;
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t b = 0; b < n; ++b)
        if (k & (std::size_t{1} << b)) less.emplace_back(el[k], el[k & ~(std::size_t{1} << b)]);
      if (k == 0) less.emplace_back(el[0], "top");
    }
    return Lattice(el, less);
  }

  static std::string subset_name(const std::vector<std::string>& omega, std::size_t mask) {
    std::string s;
    for (std::size_t b = 0; b < omega.size(); ++b)
      if (mask & (std::size_t{1} << b)) s += (s.empty() ? "" : "+") + omega[b];
    return s.empty() ? "{}" : s;
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& elements() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::size_t index(const std::string& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw Error(ErrorKind::unresolved_name, "unknown lattice element " + s);
    return it->second;
  }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  bool comparable(std::size_t a, std::size_t b) const { return leq_[a][b] || leq_[b][a]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a][b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a][b]; }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  // length of the longest chain from the minimum
  std::size_t rank(std::size_t a) const {
    std::size_t r = 0;
    for (std::size_t b = 0; b < size(); ++b)
      if (b != a && leq_[b][a]) r = std::max(r, rank(b) + 1);
    return r;
  }

  // all elements but the maximum, by (rank, declaration order)
  std::vector<std::size_t> linear_extension() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (i != top_) out.push_back(i);
    std::vector<std::size_t> rk(size());
    for (std::size_t i = 0; i < size(); ++i) rk[i] = rank(i);
    std::stable_sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return rk[a] < rk[b]; });
    return out;
  }

  // strict covering pairs, used for serialization
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b) {
        if (a == b || !leq_[a][b]) continue;
        bool direct = true;
        for (std::size_t c = 0; c < size() && direct; ++c)
          if (c != a && c != b && leq_[a][c] && leq_[c][b]) direct = false;
        if (direct) out.emplace_back(a, b);
      }
    return out;
  }

  friend bool operator==(const Lattice& x, const Lattice& y) { return x.names_ == y.names_ && x.leq_ == y.leq_; }

 private:
  std::size_t bound(std::size_t a, std::size_t b, bool lower) const {
    std::vector<std::size_t> cand;
    for (std::size_t c = 0; c < size(); ++c)
      if (lower ? (leq_[c][a] && leq_[c][b]) : (leq_[a][c] && leq_[b][c])) cand.push_back(c);
    for (std::size_t c : cand) {
      bool best = true;
      for (std::size_t d : cand)
        if (lower ? !leq_[d][c] : !leq_[c][d]) best = false;
      if (best) return c;
    }
    throw Error(ErrorKind::invalid_lattice, std::string("no ") + (lower ? "meet" : "join") + " for " + names_[a] +
                                                " and " + names_[b]);
  }
  std::size_t meet_all() const {
    std::size_t m = 0;
    for (std::size_t i = 1; i < size(); ++i) m = meet_[m][i];
    return m;
  }
  std::size_t join_all() const {
    std::size_t m = 0;
    for (std::size_t i = 1; i < size(); ++i) m = join_[m][i];
    return m;
  }

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::size_t>> meet_, join_;
  std::size_t bottom_ = 0, top_ = 0;
};

// closed subschemes indexed by a lattice, all in one ambient, the maximum
// assigned the ambient itself
struct PosetDiagram {
  Lattice lattice;
  std::vector<ClosedSubscheme> assign;
  const AtlasPtr& ambient() const { return assign.front().ambient; }
};

inline PosetDiagram make_diagram(Lattice L, std::vector<ClosedSubscheme> assign) {
  if (assign.size() != L.size()) throw Error(ErrorKind::invalid_diagram, "one subscheme per lattice element required");
  for (auto& Y : assign)
    if (Y.ambient != assign.front().ambient) throw Error(ErrorKind::invalid_diagram, "diagram mixes ambients");
  const ClosedSubscheme& top = assign[L.top()];
  if (!subscheme_equal(top, whole(top.ambient)))
    throw Error(ErrorKind::invalid_diagram, "the maximum must be the ambient");
  for (std::size_t p = 0; p < L.size(); ++p)
    for (std::size_t q = 0; q < L.size(); ++q) {
      if (p == q || !L.leq(p, q)) continue;
      for (std::size_t c = 0; c < assign[p].ideals.size(); ++c)
        if (!assign[p].ideals[c].contains(assign[q].ideals[c]))
          throw Error(ErrorKind::invalid_diagram, "not monotone: " + L.name(p) + " <= " + L.name(q) + " but the ideals are not nested");
    }
  return PosetDiagram{std::move(L), std::move(assign)};
}

// pairwise-meet shadow of excessivity: I_k + I_l = I_{k meet l}
inline bool excessive_check_lattice(const PosetDiagram& d) {
  const Lattice& L = d.lattice;
  for (std::size_t k = 0; k < L.size(); ++k)
    for (std::size_t l = k + 1; l < L.size(); ++l) {
      if (L.comparable(k, l)) continue;
      const auto& m = d.assign[L.meet(k, l)];
      for (std::size_t c = 0; c < m.ideals.size(); ++c)
        if (!ideal_equal(ideal_sum(d.assign[k].ideals[c], d.assign[l].ideals[c]), m.ideals[c])) return false;
    }
  return true;
}

// W -> Z, W -> Y, Y -> X, Z -> X with X the common ambient
struct Square {
  ClosedSubscheme W, Z, Y;
  const AtlasPtr& ambient() const { return W.ambient; }
};

inline void validate_square(const Square& s) {
  if (s.Z.ambient != s.W.ambient || s.Y.ambient != s.W.ambient)
    throw Error(ErrorKind::invalid_diagram, "square mixes ambients");
  for (std::size_t c = 0; c < s.W.ideals.size(); ++c) {
    if (!s.W.ideals[c].contains(s.Z.ideals[c])) throw Error(ErrorKind::invalid_diagram, "W is not contained in Z");
    if (!s.W.ideals[c].contains(s.Y.ideals[c])) throw Error(ErrorKind::invalid_diagram, "W is not contained in Y");
  }
}

// I_Y restricted to Z generates I_W in Z, i.e. I_Y + I_Z = I_W chartwise
inline bool excessive_check_square(const Square& s) {
  validate_square(s);
  for (std::size_t c = 0; c < s.W.ideals.size(); ++c)
    if (!ideal_equal(ideal_sum(s.Y.ideals[c], s.Z.ideals[c]), s.W.ideals[c])) return false;
  return true;
}

}  // namespace blowup_calc
