#pragma once

// Line-oriented text format for categories, subcategories, functors,
// (co)presheaves and monads, with a canonical emitter and built-in generators.
//
//   codensity-spec 1
//   category chain3
//     objects 0 1 2
//     morphism id_0 0 0
//     ...
//     identity 0 id_0
//     compose 1<=2 0<=1 0<=2
//   end
//
// Blank lines and lines starting with '#' are ignored.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "codensity/generators.hpp"
#include "codensity/monad.hpp"
#include "codensity/presheaf.hpp"

namespace codensity {

class SpecError : public InputError {
 public:
  SpecError(std::size_t line, const std::string& msg)
      : InputError(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct SpecDocument {
  enum class Kind { category, subcategory, functor, presheaf, copresheaf, monad };
  struct Entry {
    Kind kind;
    std::string name;
    std::vector<std::string> refs;  // names of the categories it lives over
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  std::vector<Entry> entries;
  std::map<std::string, CategoryPtr> categories;  // includes subcategory categories
  std::map<std::string, FullSubcategory> subcategories;
  std::map<std::string, Functor> functors;
  std::map<std::string, Presheaf> presheaves;
  std::map<std::string, Copresheaf> copresheaves;
  std::map<std::string, Monad> monads;

  bool has(const std::string& name) const {
    return std::any_of(entries.begin(), entries.end(), [&](const Entry& e) { return e.name == name; });
  }

  const CategoryPtr& category(const std::string& name) const {
    auto it = categories.find(name);
    if (it == categories.end()) throw InputError("unknown category '" + name + "'");
    return it->second;
  }

  void add_category(const std::string& name, CategoryPtr c) {
    claim(name);
    categories[name] = std::move(c);
    entries.push_back({Kind::category, name, {}});
  }
  void add_subcategory(const std::string& name, const std::string& parent, FullSubcategory sub) {
    claim(name);
    categories[name] = sub.category;
    subcategories.emplace(name, std::move(sub));
    entries.push_back({Kind::subcategory, name, {parent}});
  }
  void add_functor(const std::string& name, const std::string& src, const std::string& tgt, Functor f) {
    claim(name);
    functors.emplace(name, std::move(f));
    entries.push_back({Kind::functor, name, {src, tgt}});
  }
  void add_presheaf(const std::string& name, const std::string& base, Presheaf p) {
    claim(name);
    presheaves.emplace(name, std::move(p));
    entries.push_back({Kind::presheaf, name, {base}});
  }
  void add_copresheaf(const std::string& name, const std::string& base, Copresheaf q) {
    claim(name);
    copresheaves.emplace(name, std::move(q));
    entries.push_back({Kind::copresheaf, name, {base}});
  }
  void add_monad(const std::string& name, const std::string& base, Monad m) {
    claim(name);
    monads.emplace(name, std::move(m));
    entries.push_back({Kind::monad, name, {base}});
  }

  friend bool operator==(const SpecDocument& x, const SpecDocument& y);

 private:
  void claim(const std::string& name) {
    if (has(name)) throw InputError("duplicate block name '" + name + "'");
  }
};

inline bool same_monad(const Monad& a, const Monad& b) {
  return a.functor() == b.functor() && a.unit().components() == b.unit().components() &&
         a.mult().components() == b.mult().components();
}

inline bool operator==(const SpecDocument& x, const SpecDocument& y) {
  if (x.entries != y.entries) return false;
  for (const auto& e : x.entries) {
    bool same = true;
    switch (e.kind) {
      case SpecDocument::Kind::category:
      case SpecDocument::Kind::subcategory:
        same = *x.categories.at(e.name) == *y.categories.at(e.name);
        break;
      case SpecDocument::Kind::functor: same = x.functors.at(e.name) == y.functors.at(e.name); break;
      case SpecDocument::Kind::presheaf: same = x.presheaves.at(e.name) == y.presheaves.at(e.name); break;
      case SpecDocument::Kind::copresheaf: same = x.copresheaves.at(e.name) == y.copresheaves.at(e.name); break;
      case SpecDocument::Kind::monad: same = same_monad(x.monads.at(e.name), y.monads.at(e.name)); break;
    }
    if (!same) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct SpecLine {
  std::size_t number;
  std::vector<std::string> words;
};

inline std::vector<SpecLine> split_lines(const std::string& text) {
  std::vector<SpecLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::istringstream ls(line);
    std::vector<std::string> words;
    for (std::string w; ls >> w;) words.push_back(w);
    if (words.empty() || words[0][0] == '#') continue;
    out.push_back({n, std::move(words)});
  }
  return out;
}

class SpecParser {
 public:
  explicit SpecParser(const std::string& text) : lines_(split_lines(text)) {}

  SpecDocument parse() {
    if (lines_.empty() || lines_[0].words.size() != 2 || lines_[0].words[0] != "codensity-spec")
      throw SpecError(lines_.empty() ? 0 : lines_[0].number, "expected header 'codensity-spec 1'");
    if (lines_[0].words[1] != "1") throw SpecError(lines_[0].number, "unsupported version '" + lines_[0].words[1] + "'");
    pos_ = 1;
    while (pos_ < lines_.size()) {
      const auto& head = lines_[pos_];
      const auto& kw = head.words[0];
      if (kw == "category") category(head);
      else if (kw == "subcategory") subcategory(head);
      else if (kw == "functor") functor(head);
      else if (kw == "presheaf") set_functor<Variance::contravariant>(head);
      else if (kw == "copresheaf") set_functor<Variance::covariant>(head);
      else if (kw == "monad") monad(head);
      else throw SpecError(head.number, "unknown block '" + kw + "'");
    }
    return std::move(doc_);
  }

 private:
  // Lines of the current block, after its header and before 'end'.
  std::vector<SpecLine> body(const SpecLine& head) {
    std::vector<SpecLine> out;
    for (++pos_; pos_ < lines_.size(); ++pos_) {
      if (lines_[pos_].words[0] == "end") {
        if (lines_[pos_].words.size() != 1) throw SpecError(lines_[pos_].number, "'end' takes no arguments");
        ++pos_;
        return out;
      }
      out.push_back(lines_[pos_]);
    }
    throw SpecError(head.number, "block '" + head.words[0] + "' is missing 'end'");
  }

  static void arity(const SpecLine& l, std::size_t n, const char* usage) {
    if (l.words.size() != n) throw SpecError(l.number, std::string("expected '") + usage + "'");
  }

  void fresh(const SpecLine& l, const std::string& name) {
    if (doc_.has(name)) throw SpecError(l.number, "duplicate block name '" + name + "'");
  }

  const CategoryPtr& ref(const SpecLine& l, const std::string& name) {
    auto it = doc_.categories.find(name);
    if (it == doc_.categories.end()) throw SpecError(l.number, "undeclared category '" + name + "'");
    return it->second;
  }

  static ObjId object_of(const SpecLine& l, const FinCategory& c, const std::string& name) {
    auto o = c.find_object(name);
    if (!o) throw SpecError(l.number, "undeclared object '" + name + "'");
    return *o;
  }

  static MorId morphism_of(const SpecLine& l, const FinCategory& c, const std::string& name) {
    auto f = c.find_morphism(name);
    if (!f) throw SpecError(l.number, "undeclared morphism '" + name + "'");
    return *f;
  }

  void category(const SpecLine& head) {
    arity(head, 2, "category <name>");
    fresh(head, head.words[1]);
    RawCategory raw;
    std::set<std::string> objects, morphisms;
    std::vector<std::pair<const SpecLine*, std::vector<std::string>>> object_refs, morphism_refs;
    const auto lines = body(head);
    for (const auto& l : lines) {
      const auto& kw = l.words[0];
      if (kw == "objects") {
        raw.objects.insert(raw.objects.end(), l.words.begin() + 1, l.words.end());
        objects.insert(l.words.begin() + 1, l.words.end());
      } else if (kw == "morphism") {
        arity(l, 4, "morphism <name> <dom> <cod>");
        raw.morphisms.push_back({l.words[1], l.words[2], l.words[3]});
        morphisms.insert(l.words[1]);
        object_refs.push_back({&l, {l.words[2], l.words[3]}});
      } else if (kw == "identity") {
        arity(l, 3, "identity <object> <morphism>");
        raw.identities.push_back({l.words[1], l.words[2]});
        object_refs.push_back({&l, {l.words[1]}});
        morphism_refs.push_back({&l, {l.words[2]}});
      } else if (kw == "compose") {
        arity(l, 4, "compose <g> <f> <g.f>");
        raw.composites.push_back({l.words[1], l.words[2], l.words[3]});
        morphism_refs.push_back({&l, {l.words[1], l.words[2], l.words[3]}});
      } else {
        throw SpecError(l.number, "unknown category field '" + kw + "'");
      }
    }
    // Dangling names are reported where they are used; declarations may come in any order.
    for (const auto& [l, names] : object_refs)
      for (const auto& n : names)
        if (!objects.count(n)) throw SpecError(l->number, "undeclared object '" + n + "'");
    for (const auto& [l, names] : morphism_refs)
      for (const auto& n : names)
        if (!morphisms.count(n)) throw SpecError(l->number, "undeclared morphism '" + n + "'");
    auto v = validate_category(raw, caps().max_morphisms);
    if (!v.ok()) {
      std::string msg = "category '" + head.words[1] + "' is invalid:";
      for (const auto& s : v.violations) msg += "\n  " + s;
      throw SpecError(head.number, msg);
    }
    doc_.add_category(head.words[1], share(std::move(*v.category)));
  }

  void subcategory(const SpecLine& head) {
    if (head.words.size() != 4 || head.words[2] != "of") throw SpecError(head.number, "expected 'subcategory <name> of <category>'");
    fresh(head, head.words[1]);
    const auto& parent = ref(head, head.words[3]);
    std::vector<ObjId> objs;
    for (const auto& l : body(head)) {
      if (l.words[0] != "objects") throw SpecError(l.number, "unknown subcategory field '" + l.words[0] + "'");
      for (std::size_t i = 1; i < l.words.size(); ++i) objs.push_back(object_of(l, *parent, l.words[i]));
    }
    doc_.add_subcategory(head.words[1], head.words[3], full_subcategory(parent, objs));
  }

  void functor(const SpecLine& head) {
    if (head.words.size() != 5 || head.words[3] != "->") throw SpecError(head.number, "expected 'functor <name> <source> -> <target>'");
    fresh(head, head.words[1]);
    const auto& s = ref(head, head.words[2]);
    const auto& t = ref(head, head.words[4]);
    std::vector<ObjId> obj(s->object_count(), -1);
    std::vector<MorId> mor(s->morphism_count(), kNoMorphism);
    for (const auto& l : body(head)) {
      if (l.words[0] == "object") {
        arity(l, 3, "object <source object> <target object>");
        obj[static_cast<std::size_t>(object_of(l, *s, l.words[1]))] = object_of(l, *t, l.words[2]);
      } else if (l.words[0] == "morphism") {
        arity(l, 3, "morphism <source morphism> <target morphism>");
        mor[static_cast<std::size_t>(morphism_of(l, *s, l.words[1]))] = morphism_of(l, *t, l.words[2]);
      } else {
        throw SpecError(l.number, "unknown functor field '" + l.words[0] + "'");
      }
    }
    for (std::size_t a = 0; a < obj.size(); ++a)
      if (obj[a] < 0) throw SpecError(head.number, "functor '" + head.words[1] + "' does not map object '" + s->object_name(static_cast<ObjId>(a)) + "'");
    for (std::size_t f = 0; f < mor.size(); ++f) {
      if (mor[f] != kNoMorphism) continue;
      if (!s->is_identity(static_cast<MorId>(f)))
        throw SpecError(head.number, "functor '" + head.words[1] + "' does not map morphism '" + s->morphism_name(static_cast<MorId>(f)) + "'");
      mor[f] = t->identity(obj[static_cast<std::size_t>(s->dom(static_cast<MorId>(f)))]);
    }
    auto v = Functor::violations(*s, *t, obj, mor);
    if (!v.empty()) throw SpecError(head.number, "functor '" + head.words[1] + "' is invalid: " + v.front());
    doc_.add_functor(head.words[1], head.words[2], head.words[4], Functor::unchecked(s, t, obj, mor));
  }

  template <Variance V>
  void set_functor(const SpecLine& head) {
    const char* kind = V == Variance::covariant ? "copresheaf" : "presheaf";
    if (head.words.size() != 4 || head.words[2] != "on") throw SpecError(head.number, std::string("expected '") + kind + " <name> on <category>'");
    fresh(head, head.words[1]);
    const auto& base = ref(head, head.words[3]);
    const auto& C = *base;
    std::vector<std::optional<FinSet>> at(C.object_count());
    std::vector<std::optional<std::vector<std::string>>> images(C.morphism_count());
    std::vector<std::size_t> where(C.morphism_count(), head.number);
    for (const auto& l : body(head)) {
      if (l.words.size() < 2) throw SpecError(l.number, "missing name");
      if (l.words[0] == "set") {
        auto a = object_of(l, C, l.words[1]);
        std::vector<std::string> toks(l.words.begin() + 2, l.words.end());
        std::vector<std::string> sorted = toks;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw SpecError(l.number, "repeated element");
        at[static_cast<std::size_t>(a)] = FinSet(std::move(toks));
      } else if (l.words[0] == "action") {
        auto f = morphism_of(l, C, l.words[1]);
        images[static_cast<std::size_t>(f)] = std::vector<std::string>(l.words.begin() + 2, l.words.end());
        where[static_cast<std::size_t>(f)] = l.number;
      } else {
        throw SpecError(l.number, std::string("unknown ") + kind + " field '" + l.words[0] + "'");
      }
    }
    std::vector<FinSet> sets;
    for (std::size_t a = 0; a < at.size(); ++a) sets.push_back(at[a] ? *at[a] : FinSet());
    std::vector<std::vector<int>> act(C.morphism_count());
    for (std::size_t f = 0; f < act.size(); ++f) {
      const auto& src = sets[static_cast<std::size_t>(SetFunctor<V>::source_of(C, static_cast<MorId>(f)))];
      const auto& tgt = sets[static_cast<std::size_t>(SetFunctor<V>::target_of(C, static_cast<MorId>(f)))];
      if (!images[f]) {
        if (C.is_identity(static_cast<MorId>(f))) {
          act[f] = FinFunction::identity(src).map;
          continue;
        }
        if (src.size() == 0) continue;
        throw SpecError(head.number, std::string(kind) + " '" + head.words[1] + "' has no action for '" + C.morphism_name(static_cast<MorId>(f)) + "'");
      }
      if (images[f]->size() != src.size()) throw SpecError(where[f], "action lists " + std::to_string(images[f]->size()) + " images for " + std::to_string(src.size()) + " elements");
      for (const auto& tok : *images[f]) {
        auto y = tgt.find(tok);
        if (!y) throw SpecError(where[f], "unknown element '" + tok + "'");
        act[f].push_back(*y);
      }
    }
    auto v = SetFunctor<V>::violations(C, sets, act);
    if (!v.empty()) throw SpecError(head.number, std::string(kind) + " '" + head.words[1] + "' is invalid: " + v.front());
    auto value = SetFunctor<V>::unchecked(base, std::move(sets), std::move(act));
    if constexpr (V == Variance::covariant) doc_.add_copresheaf(head.words[1], head.words[3], std::move(value));
    else doc_.add_presheaf(head.words[1], head.words[3], std::move(value));
  }

  void monad(const SpecLine& head) {
    if (head.words.size() != 4 || head.words[2] != "on") throw SpecError(head.number, "expected 'monad <name> on <category>'");
    fresh(head, head.words[1]);
    const auto& base = ref(head, head.words[3]);
    const auto& K = *base;
    std::vector<ObjId> obj(K.object_count(), -1);
    std::vector<MorId> mor(K.morphism_count(), kNoMorphism), eta(K.object_count(), kNoMorphism), mu(K.object_count(), kNoMorphism);
    for (const auto& l : body(head)) {
      arity(l, 3, "<field> <name> <value>");
      const auto& kw = l.words[0];
      if (kw == "object") obj[static_cast<std::size_t>(object_of(l, K, l.words[1]))] = object_of(l, K, l.words[2]);
      else if (kw == "morphism") mor[static_cast<std::size_t>(morphism_of(l, K, l.words[1]))] = morphism_of(l, K, l.words[2]);
      else if (kw == "unit") eta[static_cast<std::size_t>(object_of(l, K, l.words[1]))] = morphism_of(l, K, l.words[2]);
      else if (kw == "mult") mu[static_cast<std::size_t>(object_of(l, K, l.words[1]))] = morphism_of(l, K, l.words[2]);
      else throw SpecError(l.number, "unknown monad field '" + kw + "'");
    }
    for (std::size_t k = 0; k < obj.size(); ++k)
      if (obj[k] < 0 || eta[k] == kNoMorphism || mu[k] == kNoMorphism)
        throw SpecError(head.number, "monad '" + head.words[1] + "' is incomplete at '" + K.object_name(static_cast<ObjId>(k)) + "'");
    for (std::size_t f = 0; f < mor.size(); ++f) {
      if (mor[f] != kNoMorphism) continue;
      if (!K.is_identity(static_cast<MorId>(f)))
        throw SpecError(head.number, "monad '" + head.words[1] + "' does not map morphism '" + K.morphism_name(static_cast<MorId>(f)) + "'");
      mor[f] = K.identity(obj[static_cast<std::size_t>(K.dom(static_cast<MorId>(f)))]);
    }
    auto v = Functor::violations(K, K, obj, mor);
    if (!v.empty()) throw SpecError(head.number, "monad '" + head.words[1] + "' has an invalid endofunctor: " + v.front());
    auto T = Functor::unchecked(base, base, obj, mor);
    auto TT = compose(T, T);
    for (const auto& [fam, src, what] : {std::tuple{&eta, Functor::identity(base), "unit"}, std::tuple{&mu, TT, "multiplication"}}) {
      auto nv = NatTransformation::violations(src, T, *fam);
      if (!nv.empty()) throw SpecError(head.number, std::string("monad '") + head.words[1] + "' " + what + ": " + nv.front());
    }
    Monad m(T, NatTransformation::unchecked(Functor::identity(base), T, eta), NatTransformation::unchecked(TT, T, mu));
    auto laws = check_monad_laws(m);
    if (!laws.holds()) throw SpecError(head.number, "monad '" + head.words[1] + "' violates the monad laws: " + laws.failures.front());
    doc_.add_monad(head.words[1], head.words[3], std::move(m));
  }

  std::vector<SpecLine> lines_;
  std::size_t pos_ = 0;
  SpecDocument doc_;
};

}  // namespace detail

inline SpecDocument parse_spec(const std::string& text) { return detail::SpecParser(text).parse(); }

// ---------------------------------------------------------------------------
// Emission

namespace detail {

inline void emit_category(std::ostream& out, const std::string& name, const FinCategory& c) {
  out << "category " << name << "\n  objects";
  for (const auto& o : c.object_names()) out << ' ' << o;
  out << '\n';
  for (const auto& m : c.morphisms())
    out << "  morphism " << m.name << ' ' << c.object_name(m.dom) << ' ' << c.object_name(m.cod) << '\n';
  for (std::size_t a = 0; a < c.object_count(); ++a)
    out << "  identity " << c.object_name(static_cast<ObjId>(a)) << ' ' << c.morphism_name(c.identity(static_cast<ObjId>(a))) << '\n';
  for (std::size_t g = 0; g < c.morphism_count(); ++g)
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
      if (c.is_identity(static_cast<MorId>(g)) || c.is_identity(static_cast<MorId>(f))) continue;
      MorId gf = c.compose(static_cast<MorId>(g), static_cast<MorId>(f));
      if (gf == kNoMorphism) continue;
      out << "  compose " << c.morphism_name(static_cast<MorId>(g)) << ' ' << c.morphism_name(static_cast<MorId>(f)) << ' '
          << c.morphism_name(gf) << '\n';
    }
  out << "end\n";
}

template <Variance V>
void emit_set_functor(std::ostream& out, const char* kind, const std::string& name, const std::string& base,
                      const SetFunctor<V>& p) {
  const auto& C = p.base();
  out << kind << ' ' << name << " on " << base << '\n';
  for (std::size_t a = 0; a < C.object_count(); ++a) {
    out << "  set " << C.object_name(static_cast<ObjId>(a));
    for (const auto& t : p.at(static_cast<ObjId>(a)).tokens()) out << ' ' << t;
    out << '\n';
  }
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    if (C.is_identity(static_cast<MorId>(f))) continue;
    out << "  action " << C.morphism_name(static_cast<MorId>(f));
    const auto& tgt = p.at(SetFunctor<V>::target_of(C, static_cast<MorId>(f)));
    for (int y : p.action(static_cast<MorId>(f))) out << ' ' << tgt.token(y);
    out << '\n';
  }
  out << "end\n";
}

}  // namespace detail

/// Canonical text: blocks in document order, fields in a fixed order,
/// objects and morphisms in declaration order.
inline std::string emit_spec(const SpecDocument& doc) {
  std::ostringstream out;
  out << "codensity-spec 1\n";
  for (const auto& e : doc.entries) {
    switch (e.kind) {
      case SpecDocument::Kind::category: detail::emit_category(out, e.name, *doc.categories.at(e.name)); break;
      case SpecDocument::Kind::subcategory: {
        const auto& sub = doc.subcategories.at(e.name);
        out << "subcategory " << e.name << " of " << e.refs[0] << "\n  objects";
        for (ObjId o : sub.objects) out << ' ' << sub.parent->object_name(o);
        out << "\nend\n";
        break;
      }
      case SpecDocument::Kind::functor: {
        const auto& f = doc.functors.at(e.name);
        out << "functor " << e.name << ' ' << e.refs[0] << " -> " << e.refs[1] << '\n';
        for (std::size_t a = 0; a < f.source().object_count(); ++a)
          out << "  object " << f.source().object_name(static_cast<ObjId>(a)) << ' ' << f.target().object_name(f.on_object(static_cast<ObjId>(a))) << '\n';
        for (std::size_t m = 0; m < f.source().morphism_count(); ++m)
          out << "  morphism " << f.source().morphism_name(static_cast<MorId>(m)) << ' ' << f.target().morphism_name(f.on_morphism(static_cast<MorId>(m))) << '\n';
        out << "end\n";
        break;
      }
      case SpecDocument::Kind::presheaf: detail::emit_set_functor(out, "presheaf", e.name, e.refs[0], doc.presheaves.at(e.name)); break;
      case SpecDocument::Kind::copresheaf: detail::emit_set_functor(out, "copresheaf", e.name, e.refs[0], doc.copresheaves.at(e.name)); break;
      case SpecDocument::Kind::monad: {
        const auto& m = doc.monads.at(e.name);
        const auto& K = m.carrier();
        out << "monad " << e.name << " on " << e.refs[0] << '\n';
        for (std::size_t k = 0; k < K.object_count(); ++k)
          out << "  object " << K.object_name(static_cast<ObjId>(k)) << ' ' << K.object_name(m.on_object(static_cast<ObjId>(k))) << '\n';
        for (std::size_t f = 0; f < K.morphism_count(); ++f)
          out << "  morphism " << K.morphism_name(static_cast<MorId>(f)) << ' ' << K.morphism_name(m.functor().on_morphism(static_cast<MorId>(f))) << '\n';
        for (std::size_t k = 0; k < K.object_count(); ++k)
          out << "  unit " << K.object_name(static_cast<ObjId>(k)) << ' ' << K.morphism_name(m.eta(static_cast<ObjId>(k))) << '\n';
        for (std::size_t k = 0; k < K.object_count(); ++k)
          out << "  mult " << K.object_name(static_cast<ObjId>(k)) << ' ' << K.morphism_name(m.mu(static_cast<ObjId>(k))) << '\n';
        out << "end\n";
        break;
      }
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Built-in instances

/// chainN, diamond, walking-arrow, powersetN, finsetN, cyclicN; nullopt otherwise.
inline std::optional<CategoryPtr> builtin_category(const std::string& name) {
  auto number_after = [&](const std::string& prefix) -> std::optional<std::size_t> {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
    std::size_t n = 0;
    for (std::size_t i = prefix.size(); i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
      n = n * 10 + static_cast<std::size_t>(name[i] - '0');
      if (n > 64) return std::nullopt;
    }
    return n;
  };
  if (name == "diamond") return diamond_category();
  if (name == "walking-arrow") return walking_arrow();
  if (auto n = number_after("chain")) return chain_category(*n);
  if (auto n = number_after("powerset")) return powerset_category(*n);
  if (auto n = number_after("finset")) return finset_skeleton(*n);
  if (auto n = number_after("cyclic")) return cyclic_group_category(*n);
  return std::nullopt;
}

/// Deterministic generated documents.  Kinds: chain n, diamond, powerset n,
/// finset-skeleton m, random-category objects, random-presheaf objects max_elements.
inline SpecDocument generate(const std::string& kind, const std::vector<std::size_t>& params, std::uint64_t seed) {
  auto param = [&](std::size_t i, std::size_t dflt) { return i < params.size() ? params[i] : dflt; };
  SpecDocument doc;
  CategoryPtr c;
  std::string name;
  if (kind == "chain") {
    c = chain_category(param(0, 3));
    name = "chain" + std::to_string(param(0, 3));
  } else if (kind == "diamond") {
    c = diamond_category();
    name = "diamond";
  } else if (kind == "powerset") {
    c = powerset_category(param(0, 2));
    name = "powerset" + std::to_string(param(0, 2));
  } else if (kind == "finset-skeleton") {
    c = finset_skeleton(param(0, 3));
    name = "finset" + std::to_string(param(0, 3));
  } else if (kind == "random-category" || kind == "random-presheaf") {
    RandomCategoryParams p;
    p.objects = param(0, 3);
    c = random_category(p, seed);
    name = "random";
  } else {
    throw InputError("unknown generator '" + kind + "'");
  }
  if (c->morphism_count() > caps().max_morphisms)
    throw InputError("generated category has " + std::to_string(c->morphism_count()) + " morphisms, above the cap");
  doc.add_category(name, c);
  if (kind == "random-presheaf") {
    std::mt19937_64 rng(seed);
    doc.add_presheaf("P", name, random_presheaf(c, param(1, 3), rng));
  }
  return doc;
}

}  // namespace codensity
