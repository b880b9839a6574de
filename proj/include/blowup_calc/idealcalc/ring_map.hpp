#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ideal.hpp"

namespace blowup_calc {

// algebra map source -> target (optionally into target / modulus), given by
// the image of each source variable
class RingMap {
 public:
  RingMap() = default;
  RingMap(Ring source, Ring target, std::vector<Polynomial> images, std::optional<Ideal> modulus = std::nullopt)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), modulus_(std::move(modulus)) {
    if (images_.size() != source_->nvars())
      throw Error(ErrorKind::dimension, "ring map needs one image per source variable");
    for (auto& im : images_) require_same_ring(target_, im.ring(), "ring map image");
  }

  static RingMap identity(const Ring& r) {
    std::vector<Polynomial> im;
    for (std::size_t i = 0; i < r->nvars(); ++i) im.push_back(Polynomial::variable(r, i));
    return RingMap(r, r, std::move(im));
  }

  // variables sent to the same-named target variable unless overridden
  static RingMap by_name(const Ring& source, const Ring& target, const std::map<std::string, Polynomial>& overrides = {}) {
    std::vector<Polynomial> im;
    for (auto& v : source->vars()) {
      auto it = overrides.find(v);
      if (it != overrides.end())
        im.push_back(it->second);
      else
        im.push_back(Polynomial::variable(target, v));
    }
    return RingMap(source, target, std::move(im));
  }

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }
  const std::vector<Polynomial>& images() const { return images_; }
  const std::optional<Ideal>& modulus() const { return modulus_; }
  const Polynomial& image(std::size_t i) const { return images_[i]; }

  Polynomial apply(const Polynomial& f) const {
    require_same_ring(source_, f.ring(), "ring map application");
    Polynomial out(target_);
    // cache powers of images per variable
    std::vector<std::vector<Polynomial>> pw(images_.size());
    auto power = [&](std::size_t v, int e) -> const Polynomial& {
      auto& c = pw[v];
      if (c.empty()) c.push_back(Polynomial::constant(target_, 1));
      while (static_cast<int>(c.size()) <= e) c.push_back(c.back() * images_[v]);
      return c[static_cast<std::size_t>(e)];
    };
    for (auto& t : f.terms()) {
      Polynomial m = Polynomial::constant(target_, t.c);
      for (std::size_t v = 0; v < t.m.size(); ++v)
        if (t.m[v] != 0) m = m * power(v, t.m[v]);
      out += m;
    }
    return out;
  }

  std::vector<Polynomial> apply(const std::vector<Polynomial>& fs) const {
    std::vector<Polynomial> out;
    for (auto& f : fs) out.push_back(apply(f));
    return out;
  }

  RingMap with_modulus(std::optional<Ideal> m) const { return RingMap(source_, target_, images_, std::move(m)); }

  // images reduced by the modulus (canonical representatives)
  RingMap normalized() const {
    if (!modulus_) return *this;
    std::vector<Polynomial> im;
    for (auto& p : images_) im.push_back(modulus_->reduce(p));
    return RingMap(source_, target_, std::move(im), modulus_);
  }

 private:
  Ring source_, target_;
  std::vector<Polynomial> images_;
  std::optional<Ideal> modulus_;
};

// second ∘ first
inline RingMap compose(const RingMap& first, const RingMap& second) {
  require_same_ring(first.target(), second.source(), "compose");
  return RingMap(first.source(), second.target(), second.apply(first.images()), second.modulus());
}

// ideal generated by images of the generators, plus the target modulus
inline Ideal pullback_ideal(const RingMap& phi, const Ideal& I) {
  require_same_ring(phi.source(), I.ring(), "pullback_ideal");
  auto g = phi.apply(I.generators());
  if (phi.modulus())
    for (auto& m : phi.modulus()->generators()) g.push_back(m);
  return Ideal(phi.target(), std::move(g));
}

}  // namespace blowup_calc
