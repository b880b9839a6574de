#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "../blowup/lattice.hpp"
#include "../geom/spaces.hpp"
#include "../polycore/parse.hpp"

namespace blowup_calc {

// a diagnostic at a 1-based line and column
class SceneError : public Error {
 public:
  SceneError(ErrorKind kind, std::size_t line, std::size_t col, const std::string& what)
      : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_, col_;
};

struct RingDecl {
  std::string name;
  std::vector<std::string> vars;
  friend bool operator==(const RingDecl&, const RingDecl&) = default;
};

// ideal, sub and divisor lines; generators kept as printed polynomials
struct IdealDecl {
  enum class Kind { ideal, sub, divisor } kind = Kind::ideal;
  std::string name, ring;
  std::vector<std::string> gens;
  friend bool operator==(const IdealDecl&, const IdealDecl&) = default;
};

struct LatticeDecl {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> less;
  friend bool operator==(const LatticeDecl&, const LatticeDecl&) = default;
};

// element -> subscheme (or ring, meaning the whole ambient)
struct DiagramDecl {
  std::string name, lattice;
  std::vector<std::pair<std::string, std::string>> assign;
  friend bool operator==(const DiagramDecl&, const DiagramDecl&) = default;
};

struct ChainDecl {
  std::string name, Z, Y, X;
  friend bool operator==(const ChainDecl&, const ChainDecl&) = default;
};

// omega -> subscheme of its own ring
struct FamilyDecl {
  std::string name;
  std::vector<std::pair<std::string, std::string>> members;
  friend bool operator==(const FamilyDecl&, const FamilyDecl&) = default;
};

using Declaration = std::variant<RingDecl, IdealDecl, LatticeDecl, DiagramDecl, ChainDecl, FamilyDecl>;

class Scene {
 public:
  std::vector<Declaration> decls;

  friend bool operator==(const Scene& a, const Scene& b) { return a.decls == b.decls; }

  template <class T>
  const T* find(const std::string& name) const {
    for (auto& d : decls)
      if (auto* p = std::get_if<T>(&d); p && p->name == name) return p;
    return nullptr;
  }

  template <class T>
  std::vector<const T*> all() const {
    std::vector<const T*> out;
    for (auto& d : decls)
      if (auto* p = std::get_if<T>(&d)) out.push_back(p);
    return out;
  }
};

namespace scene_detail {

// message without the leading kind name
inline std::string bare(const Error& e) {
  std::string w = e.what();
  std::string k = std::string(kind_name(e.kind())) + ": ";
  return w.rfind(k, 0) == 0 ? w.substr(k.size()) : w;
}

inline bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '+';
}

inline const std::string& decl_name(const Declaration& d) {
  return std::visit([](auto& x) -> const std::string& { return x.name; }, d);
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what, ErrorKind k = ErrorKind::syntax) const { fail_at(i_, what, k); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& what, ErrorKind k = ErrorKind::syntax) const {
    throw SceneError(k, line_, pos + 1, what);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    skip();
    return i_ == s_.size();
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  std::size_t pos() {
    skip();
    return i_;
  }

  // identifiers; lattice element names may also contain + or be {}
  std::string name(bool element = false) {
    skip();
    std::size_t b = i_;
    if (element && s_.substr(i_, 2) == "{}") {
      i_ += 2;
      return "{}";
    }
    while (i_ < s_.size() && (element ? name_char(s_[i_]) : (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\'')))
      ++i_;
    if (b == i_) fail("expected a name");
    return std::string(s_.substr(b, i_ - b));
  }
  void keyword(std::string_view k) {
    std::size_t b = pos();
    std::string w = name();
    if (w != k) fail_at(b, "expected '" + std::string(k) + "'");
  }

  // text up to one of the stop characters at depth 0
  std::pair<std::size_t, std::string_view> until(std::string_view stops) {
    skip();
    std::size_t b = i_;
    int depth = 0;
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0 && stops.find(c) != std::string_view::npos) break;
        --depth;
      }
      if (depth == 0 && stops.find(c) != std::string_view::npos) break;
      ++i_;
    }
    return {b, s_.substr(b, i_ - b)};
  }

  std::size_t line() const { return line_; }

 private:
  std::string_view s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

}  // namespace scene_detail

// builds the diagram, which checks the top and monotonicity
inline void validate_diagram(const Scene& sc, const std::string& name);

// scene text, one declaration per line, '#' starts a comment
inline Scene parse_scene(std::string_view text) {
  using scene_detail::LineParser;
  Scene sc;
  std::map<std::string, std::size_t> names;  // -> index in decls
  std::size_t line_no = 0;
  std::size_t start = 0;
  auto declare = [&](LineParser& lp, std::size_t at, Declaration d) {
    const std::string& n = scene_detail::decl_name(d);
    if (names.count(n)) lp.fail_at(at, "name '" + n + "' already declared", ErrorKind::invalid_input);
    names.emplace(n, sc.decls.size());
    sc.decls.push_back(std::move(d));
  };
  auto ring_of = [&](LineParser& lp, std::size_t at, const std::string& n) -> const RingDecl& {
    auto* r = sc.find<RingDecl>(n);
    if (!r) lp.fail_at(at, "unknown ring '" + n + "'", ErrorKind::unresolved_name);
    return *r;
  };
  // a subscheme-valued name: a sub, divisor or ring
  auto sub_ref = [&](LineParser& lp) {
    std::size_t at = lp.pos();
    std::string n = lp.name();
    auto* i = sc.find<IdealDecl>(n);
    bool ok = (i && i->kind != IdealDecl::Kind::ideal) || sc.find<RingDecl>(n);
    if (!ok) lp.fail_at(at, "unknown subscheme '" + n + "'", ErrorKind::unresolved_name);
    return n;
  };
  auto ring_name_of = [&](const std::string& n) {
    if (auto* i = sc.find<IdealDecl>(n)) return i->ring;
    return n;
  };

  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    LineParser lp(line, line_no);
    if (lp.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    std::size_t kw_at = lp.pos();
    std::string kw = lp.name();
    if (kw == "ring") {
      std::size_t at = lp.pos();
      RingDecl r{lp.name(), {}};
      lp.expect('=');
      std::size_t qa = lp.pos();
      if (lp.name() != "QQ") lp.fail_at(qa, "only QQ is supported as base field");
      lp.expect('[');
      if (!lp.peek(']')) do {
          std::size_t va = lp.pos();
          std::string v = lp.name();
          for (auto& w : r.vars)
            if (w == v) lp.fail_at(va, "variable '" + v + "' repeated", ErrorKind::invalid_input);
          r.vars.push_back(v);
        } while (lp.accept(','));
      lp.expect(']');
      if (!lp.at_end()) lp.fail("trailing text");
      declare(lp, at, r);
    } else if (kw == "ideal" || kw == "sub" || kw == "divisor") {
      IdealDecl d;
      d.kind = kw == "ideal" ? IdealDecl::Kind::ideal : kw == "sub" ? IdealDecl::Kind::sub : IdealDecl::Kind::divisor;
      std::size_t at = lp.pos();
      d.name = lp.name();
      lp.keyword("in");
      std::size_t ra = lp.pos();
      d.ring = lp.name();
      const RingDecl& R = ring_of(lp, ra, d.ring);
      Ring ring = make_ring(R.vars);
      lp.expect('=');
      if (lp.accept('(')) {
        if (!lp.peek(')')) do {
            auto [b, txt] = lp.until(",)");
            try {
              d.gens.push_back(PolyParser(ring, txt).parse_all().str());
            } catch (const SyntaxError& e) {
              std::string m = scene_detail::bare(e);
              m = m.substr(0, m.rfind(" at offset "));
              lp.fail_at(b + e.pos(), m);
            } catch (const Error& e) {
              lp.fail_at(b, scene_detail::bare(e), e.kind());
            }
          } while (lp.accept(','));
        lp.expect(')');
      } else {
        std::size_t ia = lp.pos();
        std::string ref = lp.name();
        auto* I = sc.find<IdealDecl>(ref);
        if (!I) lp.fail_at(ia, "unknown ideal '" + ref + "'", ErrorKind::unresolved_name);
        if (I->ring != d.ring) lp.fail_at(ia, "ideal '" + ref + "' lives in " + I->ring, ErrorKind::invalid_input);
        d.gens = I->gens;
      }
      if (!lp.at_end()) lp.fail("trailing text");
      if (d.kind == IdealDecl::Kind::divisor && d.gens.size() != 1)
        lp.fail_at(at, "a divisor takes exactly one generator", ErrorKind::invalid_input);
      declare(lp, at, d);
    } else if (kw == "lattice") {
      std::size_t at = lp.pos();
      LatticeDecl L{lp.name(), {}, {}};
      lp.expect('=');
      lp.expect('{');
      auto element = [&] {
        std::string e = lp.name(true);
        if (std::find(L.elements.begin(), L.elements.end(), e) == L.elements.end()) L.elements.push_back(e);
        return e;
      };
      if (!lp.peek('}')) do {
          std::string a = element();
          while (lp.accept('<')) {
            std::string b = element();
            L.less.emplace_back(a, b);
            a = b;
          }
        } while (lp.accept(','));
      lp.expect('}');
      if (!lp.at_end()) lp.fail("trailing text");
      try {
        Lattice check(L.elements, L.less);
      } catch (const Error& e) {
        lp.fail_at(at, scene_detail::bare(e), e.kind());
      }
      declare(lp, at, L);
    } else if (kw == "diagram") {
      std::size_t at = lp.pos();
      DiagramDecl D;
      D.name = lp.name();
      lp.keyword("on");
      std::size_t la = lp.pos();
      D.lattice = lp.name();
      auto* L = sc.find<LatticeDecl>(D.lattice);
      if (!L) lp.fail_at(la, "unknown lattice '" + D.lattice + "'", ErrorKind::unresolved_name);
      lp.expect('=');
      lp.expect('{');
      std::string ring;
      if (!lp.peek('}')) do {
          std::size_t ea = lp.pos();
          std::string e = lp.name(true);
          if (std::find(L->elements.begin(), L->elements.end(), e) == L->elements.end())
            lp.fail_at(ea, "'" + e + "' is not an element of " + D.lattice, ErrorKind::unresolved_name);
          for (auto& [k, v] : D.assign)
            if (k == e) lp.fail_at(ea, "element '" + e + "' assigned twice", ErrorKind::invalid_diagram);
          lp.expect(':');
          std::size_t sa = lp.pos();
          std::string s = sub_ref(lp);
          if (ring.empty()) ring = ring_name_of(s);
          if (ring_name_of(s) != ring) lp.fail_at(sa, "diagram mixes ambients", ErrorKind::invalid_diagram);
          D.assign.emplace_back(e, s);
        } while (lp.accept(','));
      lp.expect('}');
      if (!lp.at_end()) lp.fail("trailing text");
      if (D.assign.size() != L->elements.size())
        lp.fail_at(at, "every lattice element needs a subscheme", ErrorKind::invalid_diagram);
      declare(lp, at, D);
      try {
        validate_diagram(sc, D.name);
      } catch (const Error& e) {
        lp.fail_at(at, scene_detail::bare(e), e.kind());
      }
    } else if (kw == "chain") {
      std::size_t at = lp.pos();
      ChainDecl c;
      c.name = lp.name();
      lp.expect('=');
      c.Z = sub_ref(lp);
      lp.expect('<');
      c.Y = sub_ref(lp);
      lp.expect('<');
      std::size_t xa = lp.pos();
      c.X = lp.name();
      if (!sc.find<RingDecl>(c.X)) lp.fail_at(xa, "unknown ring '" + c.X + "'", ErrorKind::unresolved_name);
      if (!lp.at_end()) lp.fail("trailing text");
      if (ring_name_of(c.Z) != c.X || ring_name_of(c.Y) != c.X)
        lp.fail_at(at, "chain members must live in " + c.X, ErrorKind::invalid_diagram);
      declare(lp, at, c);
    } else if (kw == "family") {
      std::size_t at = lp.pos();
      FamilyDecl f;
      f.name = lp.name();
      lp.expect('=');
      lp.expect('{');
      if (!lp.peek('}')) do {
          std::size_t oa = lp.pos();
          std::string o = lp.name();
          for (auto& [k, v] : f.members)
            if (k == o) lp.fail_at(oa, "index '" + o + "' repeated", ErrorKind::invalid_input);
          lp.expect(':');
          f.members.emplace_back(o, sub_ref(lp));
        } while (lp.accept(','));
      lp.expect('}');
      if (!lp.at_end()) lp.fail("trailing text");
      if (f.members.empty()) lp.fail_at(at, "empty family", ErrorKind::invalid_input);
      declare(lp, at, f);
    } else {
      lp.fail_at(kw_at, "unknown declaration '" + kw + "'");
    }
    if (end == text.size()) break;
  }
  return sc;
}

inline std::string serialize_scene(const Scene& sc) {
  std::ostringstream os;
  auto list = [&](const std::vector<std::string>& v) {
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k];
  };
  for (auto& d : sc.decls) {
    if (auto* r = std::get_if<RingDecl>(&d)) {
      os << "ring " << r->name << " = QQ[";
      list(r->vars);
      os << "]\n";
    } else if (auto* i = std::get_if<IdealDecl>(&d)) {
      const char* kw = i->kind == IdealDecl::Kind::ideal ? "ideal" : i->kind == IdealDecl::Kind::sub ? "sub" : "divisor";
      os << kw << " " << i->name << " in " << i->ring << " = (";
      list(i->gens);
      os << ")\n";
    } else if (auto* L = std::get_if<LatticeDecl>(&d)) {
      os << "lattice " << L->name << " = {";
      std::vector<std::string> items;
      for (auto& [a, b] : L->less) items.push_back(a + "<" + b);
      for (auto& e : L->elements) {
        bool used = false;
        for (auto& [a, b] : L->less) used = used || a == e || b == e;
        if (!used) items.push_back(e);
      }
      list(items);
      os << "}\n";
    } else if (auto* D = std::get_if<DiagramDecl>(&d)) {
      os << "diagram " << D->name << " on " << D->lattice << " = {";
      std::vector<std::string> items;
      for (auto& [e, s] : D->assign) items.push_back(e + ": " + s);
      list(items);
      os << "}\n";
    } else if (auto* c = std::get_if<ChainDecl>(&d)) {
      os << "chain " << c->name << " = " << c->Z << " < " << c->Y << " < " << c->X << "\n";
    } else if (auto* f = std::get_if<FamilyDecl>(&d)) {
      os << "family " << f->name << " = {";
      std::vector<std::string> items;
      for (auto& [o, s] : f->members) items.push_back(o + ": " + s);
      list(items);
      os << "}\n";
    }
  }
  return os.str();
}

// the scene's objects built as atlases; every ring is an affine space
class SceneModel {
 public:
  SceneModel(const Scene& sc, MonomialOrder order = MonomialOrder::grevlex()) : scene_(sc) {
    for (auto* r : sc.all<RingDecl>()) {
      Atlas A;
      A.charts.push_back(make_chart(make_ring(r->vars, order), "A"));
      spaces_.emplace(r->name, share(std::move(A)));
    }
  }

  const Scene& scene() const { return scene_; }

  AtlasPtr space(const std::string& ring) const {
    auto it = spaces_.find(ring);
    if (it == spaces_.end()) throw Error(ErrorKind::unresolved_name, "unknown ring '" + ring + "'");
    return it->second;
  }

  // a sub, divisor, ideal or ring name as a closed subscheme
  ClosedSubscheme sub(const std::string& name) const {
    if (scene_.find<RingDecl>(name)) return whole(space(name));
    auto* d = scene_.find<IdealDecl>(name);
    if (!d) throw Error(ErrorKind::unresolved_name, "unknown subscheme '" + name + "'");
    AtlasPtr X = space(d->ring);
    std::vector<Polynomial> g;
    for (auto& s : d->gens) g.push_back(parse_polynomial(X->charts[0].ring, s));
    return make_subscheme(X, {g});
  }

  Divisor divisor(const std::string& name) const {
    auto* d = scene_.find<IdealDecl>(name);
    if (!d || d->gens.size() != 1) throw Error(ErrorKind::invalid_input, "'" + name + "' is not a divisor");
    AtlasPtr X = space(d->ring);
    return make_divisor(X, {parse_polynomial(X->charts[0].ring, d->gens[0])});
  }

  Lattice lattice(const std::string& name) const {
    auto* L = scene_.find<LatticeDecl>(name);
    if (!L) throw Error(ErrorKind::unresolved_name, "unknown lattice '" + name + "'");
    return Lattice(L->elements, L->less);
  }

  PosetDiagram diagram(const std::string& name) const {
    auto* D = scene_.find<DiagramDecl>(name);
    if (!D) throw Error(ErrorKind::unresolved_name, "unknown diagram '" + name + "'");
    Lattice L = lattice(D->lattice);
    std::vector<ClosedSubscheme> assign;
    for (auto& e : L.elements())
      for (auto& [k, s] : D->assign)
        if (k == e) assign.push_back(sub(s));
    return make_diagram(std::move(L), std::move(assign));
  }

 private:
  Scene scene_;
  std::map<std::string, AtlasPtr> spaces_;
};

inline void validate_diagram(const Scene& sc, const std::string& name) { SceneModel(sc).diagram(name); }

}  // namespace blowup_calc
