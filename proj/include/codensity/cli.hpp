#pragma once

// Command dispatch: validate | kan | codensity | isbell | monad | laws | sweep.
// Exit codes: 0 every check passed, 1 a check failed, 2 input error,
// 3 budget exceeded.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "codensity/report.hpp"

namespace codensity {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitBudget = 3;

/// "name=value,name=value" applied to the global caps.
inline void apply_cap_overrides(const std::string& text) {
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("cap override '" + item + "' is not name=value");
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoull(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw InputError("cap override '" + item + "' has a non-numeric value");
    }
    if (!set_cap(caps(), item.substr(0, eq), value)) throw InputError("unknown cap '" + item.substr(0, eq) + "'");
  }
}

/// A spec file path, or the name of a built-in category.
inline SpecDocument load_document(const std::string& in) {
  if (auto c = builtin_category(in)) {
    SpecDocument doc;
    doc.add_category(in, *c);
    return doc;
  }
  if (!std::filesystem::is_regular_file(in)) throw InputError("'" + in + "' is neither a spec file nor a built-in instance");
  std::ifstream f(in);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_spec(buf.str());
}

namespace detail {

inline std::string first_of(const SpecDocument& doc, SpecDocument::Kind kind, const std::string& what) {
  for (const auto& e : doc.entries)
    if (e.kind == kind) return e.name;
  throw InputError("the input has no " + what);
}

inline std::vector<ObjId> parse_objects(const FinCategory& c, const std::string& list) {
  std::vector<ObjId> out;
  std::istringstream in(list);
  for (std::string name; std::getline(in, name, ',');) {
    if (name.empty()) continue;
    auto o = c.find_object(name);
    if (!o) throw InputError("unknown object '" + name + "' in --sub");
    out.push_back(*o);
  }
  return out;
}

inline nlohmann::ordered_json monad_table(const Monad& m) {
  const auto& K = m.carrier();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    auto kk = static_cast<ObjId>(k);
    rows.push_back({{"object", K.object_name(kk)},
                    {"T", K.object_name(m.on_object(kk))},
                    {"unit", K.morphism_name(m.eta(kk))},
                    {"mult", K.morphism_name(m.mu(kk))}});
  }
  return rows;
}

inline std::string monad_text(const Monad& m) {
  std::ostringstream out;
  const auto& K = m.carrier();
  out << "k\tT(k)\tunit\tmult\n";
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    auto kk = static_cast<ObjId>(k);
    out << K.object_name(kk) << '\t' << K.object_name(m.on_object(kk)) << '\t' << K.morphism_name(m.eta(kk)) << '\t'
        << K.morphism_name(m.mu(kk)) << '\n';
  }
  return out.str();
}

inline std::string objects_text(const FinCategory& c, const std::vector<ObjId>& objs) {
  std::string s = "{";
  for (std::size_t i = 0; i < objs.size(); ++i) s += (i ? "," : "") + c.object_name(objs[i]);
  return s + "}";
}

inline void add_monad_analysis(Report& r, const Monad& m, const std::string& kname) {
  const auto& K = m.carrier();
  auto laws = check_monad_laws(m);
  r.check("monad laws", laws.holds(), laws.holds() ? "" : laws.failures.front());

  auto fix = fixed_points(m);
  r.data["fixed_points"] = nlohmann::ordered_json::array();
  for (ObjId k : fix.subcategory.objects) r.data["fixed_points"].push_back(K.object_name(k));

  auto idem = idempotency_analysis(m);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : idem.rows)
    rows.push_back({{"object", K.object_name(row.object)},
                    {"eta_iso", row.eta_iso},
                    {"mu_iso", row.mu_iso},
                    {"eta_at_T_iso", row.eta_at_image_iso},
                    {"literal_equivalence", row.literal_equivalence_holds()}});
  r.data["idempotency"] = rows;
  r.data["idempotent"] = idem.idempotent();
  r.check("mu_k iso iff eta_Tk iso", idem.provable_violations() == 0,
          std::to_string(idem.literal_disagreements()) + " object(s) where mu_k iso and eta_k iso disagree");

  auto em = em_category(m);
  r.data["algebras"] = nlohmann::ordered_json::array();
  for (const auto& a : em.algebras) r.data["algebras"].push_back({K.object_name(a.carrier), K.morphism_name(a.structure)});
  r.check("free -| forgetful", em.adjunction.has_value(), em.adjunction_failure);
  for (const auto& a : em.algebras) {
    auto cert = limit_dense_witness(m, a);
    std::string label = "equalizer presentation of (" + K.object_name(a.carrier) + "," + K.morphism_name(a.structure) + ")";
    if (!cert.equalizer) r.checks.push_back({label, Verdict::vacuous, "no equalizer in " + kname, ""});
    else r.check(label, cert.iso_to_carrier.has_value());
  }

  auto gi = gi_search(m);
  r.data["gi_witness"] = gi.witness ? nlohmann::ordered_json(objects_text(K, gi.witness->objects)) : nlohmann::ordered_json(nullptr);
  r.data["gi_subsets_tried"] = gi.subsets_tried;

  auto probe = conjecture_probe(m);
  r.data["conjecture_probe"] = {{"phi_iso", probe.phi_iso},
                                {"psi_iso", probe.psi_iso},
                                {"mutually_inverse", probe.mutually_inverse},
                                {"note", probe.note}};
}

class CommandRunner {
 public:
  Report run(const std::string& verb, const std::vector<std::string>& args) {
    Report r;
    r.command = verb;
    r.args = args;
    auto start = std::chrono::steady_clock::now();
    Caps saved = caps();
    try {
      if (const char* env = std::getenv("CODENSITY_CAPS")) apply_cap_overrides(env);
      CLI::App app{"finite category computations"};
      app.require_subcommand(1);
      build(app);
      std::vector<std::string> argv{verb};
      argv.insert(argv.end(), args.begin(), args.end());
      std::reverse(argv.begin(), argv.end());
      app.parse(argv);
      for (const auto& c : cap_overrides_) apply_cap_overrides(c);
      if (seed_set_) r.seed = seed_;
      dispatch(app, r);
      r.exit_code = r.verdict_code();
    } catch (const CLI::CallForHelp&) {
      CLI::App app{"finite category computations"};
      build(app);
      CLI::App* sub = nullptr;
      for (auto* s : app.get_subcommands({}))
        if (s->get_name() == verb) sub = s;
      r.data["help"] = sub ? sub->help("codensity") : app.help();
      r.exit_code = kExitPass;
    } catch (const CLI::ParseError& e) {
      r.error = e.what();
      r.exit_code = kExitInputError;
    } catch (const InputError& e) {
      r.error = e.what();
      r.exit_code = kExitInputError;
    } catch (const BudgetExceeded& e) {
      r.error = e.what();
      r.exit_code = kExitBudget;
    } catch (const Error& e) {
      r.error = e.what();
      r.checks.push_back({"computation", Verdict::fail, e.what(), ""});
      r.exit_code = kExitCheckFailed;
    }
    caps() = saved;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

  const std::string& format() const { return format_; }

 private:
  void common(CLI::App* sub) {
    sub->add_option("--format", format_, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--cap", cap_overrides_, "cap override name=value");
  }

  void build(CLI::App& app) {
    auto* v = app.add_subcommand("validate", "parse and validate a spec, or generate one");
    v->add_option("--in", in_, "spec file or built-in name");
    v->add_option("--generate", generate_, "chain | diamond | powerset | finset-skeleton | random-category | random-presheaf");
    v->add_option("--param", params_, "generator parameter");
    v->add_option("--seed", seed_, "generator seed")->each([&](const std::string&) { seed_set_ = true; });
    v->add_flag("--emit", emit_, "print the canonical spec");
    common(v);

    auto* k = app.add_subcommand("kan", "pointwise Kan extension");
    k->add_option("--in", in_, "spec file or built-in name")->required();
    k->add_option("--category", category_, "category in the spec file; defaults to the first");
    k->add_option("--sub", sub_, "comma-separated objects; extends the inclusion along itself");
    k->add_option("--along", along_, "functor name F: A -> B");
    k->add_option("--of", of_, "functor name G: A -> C");
    k->add_flag("--left", left_, "left instead of right Kan extension");
    common(k);

    auto* c = app.add_subcommand("codensity", "codensity monad of a full subcategory");
    c->add_option("--in", in_, "spec file or built-in name")->required();
    c->add_option("--category", category_, "category in the spec file; defaults to the first");
    c->add_option("--sub", sub_, "comma-separated objects of the subcategory")->required();
    c->add_flag("--analysis", analysis_, "fixed points, idempotency, algebras, generic idempotency");
    common(c);

    auto* i = app.add_subcommand("isbell", "Isbell conjugation checks");
    i->add_flag("--main-theorem", main_theorem_, "Spec O P against the codensity monad of Yoneda");
    i->add_flag("--swap", swap_, "nerve-realization against conjugation, on a dense subcategory");
    i->add_flag("--conjugation", conjugation_, "T_i against L Spec O R as monads");
    i->add_flag("--ran", ran_, "compare Ran_y y# with O");
    i->add_option("--base", base_, "built-in base category");
    i->add_option("--all-presheaves-up-to", up_to_, "every presheaf with at most this many elements per object");
    i->add_option("--in", in_, "spec file or built-in name");
    i->add_option("--presheaf", presheaf_, "presheaf in the spec file");
    i->add_option("--category", category_, "category in the spec file; defaults to the first");
    i->add_option("--sub", sub_, "comma-separated objects of the subcategory");
    common(i);

    auto* m = app.add_subcommand("monad", "analyse a monad from a spec");
    m->add_option("--in", in_, "spec file")->required();
    m->add_option("--monad", monad_, "monad in the spec file; defaults to the first");
    common(m);

    auto* l = app.add_subcommand("laws", "Kan-extension law suite");
    l->add_option("--suite", suite_, "law suite")->check(CLI::IsMember({"appendix"}));
    l->add_option("--instances", instances_, "instances per law");
    l->add_option("--seed", seed_, "instance seed")->each([&](const std::string&) { seed_set_ = true; });
    l->add_option("--law", laws_, "run only these laws")->check(CLI::IsMember(law_names()));
    l->add_option("--max-objects", max_objects_, "largest generated category");
    common(l);

    auto* s = app.add_subcommand("sweep", "instance sweeps over generated corpora");
    s->add_option("--kind", kind_, "which sweep")
        ->required()
        ->check(CLI::IsMember({"soundness", "ultrafilter", "main-theorem", "conjugation", "arity", "idempotency", "lex", "yoneda",
                               "equalizer", "laws", "all"}));
    s->add_option("--seed", seed_, "corpus seed")->each([&](const std::string&) { seed_set_ = true; });
    s->add_option("--instances", instances_, "presheaves per lex or yoneda sweep; instances per law");
    common(s);
  }

  void dispatch(CLI::App& app, Report& r) {
    auto* sub = app.get_subcommands().front();
    const auto& name = sub->get_name();
    if (name == "validate") validate(r);
    else if (name == "kan") kan(r);
    else if (name == "codensity") codensity(r);
    else if (name == "isbell") isbell(r);
    else if (name == "monad") monad(r);
    else if (name == "laws") laws(r);
    else sweep(r);
  }

  CategoryPtr pick_category(const SpecDocument& doc, std::string& name) {
    name = category_.empty() ? first_of(doc, SpecDocument::Kind::category, "category") : category_;
    return doc.category(name);
  }

  void validate(Report& r) {
    if (in_.empty() == generate_.empty()) throw InputError("give exactly one of --in and --generate");
    SpecDocument doc = in_.empty() ? codensity::generate(generate_, params_, seed_) : load_document(in_);
    r.instances.push_back(in_.empty() ? generate_ : in_);
    for (const auto& e : doc.entries) r.check("valid " + e.name, true);
    auto text = emit_spec(doc);
    r.check("canonical form reparses to an equal document", parse_spec(text) == doc);
    if (emit_) {
      r.data["spec"] = text;
      r.data["text"] = text;
    }
  }

  void kan(Report& r) {
    auto doc = load_document(in_);
    SpecDocument out;
    KanResult res;
    std::string target_name;
    if (!sub_.empty()) {
      std::string kname;
      auto K = pick_category(doc, kname);
      auto sub = full_subcategory(K, parse_objects(*K, sub_));
      r.instances.push_back(kname + " A=" + objects_text(*K, sub.objects));
      res = left_ ? left_kan(sub.inclusion, sub.inclusion) : right_kan(sub.inclusion, sub.inclusion);
      out.add_category(kname, K);
      target_name = kname;
    } else {
      if (along_.empty() || of_.empty()) throw InputError("kan needs --sub or both --along and --of");
      auto fit = doc.functors.find(along_);
      auto git = doc.functors.find(of_);
      if (fit == doc.functors.end() || git == doc.functors.end()) throw InputError("unknown functor name");
      r.instances.push_back(in_ + " " + along_ + "," + of_);
      res = left_ ? left_kan(fit->second, git->second) : right_kan(fit->second, git->second);
      const auto& fe = *std::find_if(doc.entries.begin(), doc.entries.end(), [&](const auto& e) { return e.name == along_; });
      const auto& ge = *std::find_if(doc.entries.begin(), doc.entries.end(), [&](const auto& e) { return e.name == of_; });
      out.add_category(fe.refs[1], fit->second.target_ptr());
      if (ge.refs[1] != fe.refs[1]) out.add_category(ge.refs[1], git->second.target_ptr());
      target_name = ge.refs[1];
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream text;
    for (std::size_t b = 0; b < res.cones.size(); ++b) {
      const auto& src = out.category(out.entries.front().name);
      const auto& tgt = out.category(target_name);
      std::string value = res.cones[b] ? tgt->object_name(res.cones[b]->apex) : "missing";
      rows.push_back({{"object", src->object_name(static_cast<ObjId>(b))}, {"value", value}});
      text << src->object_name(static_cast<ObjId>(b)) << " -> " << value << '\n';
    }
    r.data["extension"] = rows;
    r.data["text"] = text.str();
    if (!res.exists()) {
      r.checks.push_back({"extension exists", Verdict::vacuous, std::to_string(res.missing.size()) + " object(s) without a value", ""});
      return;
    }
    out.add_functor(left_ ? "Lan" : "Ran", out.entries.front().name, target_name, res.functor());
    r.data["spec"] = emit_spec(out);
    if (res.universal_verified) r.check("universal property", *res.universal_verified);
    else r.checks.push_back({"universal property", Verdict::skipped, "competitor search above the size cap", ""});
  }

  void codensity(Report& r) {
    auto doc = load_document(in_);
    std::string kname;
    auto K = pick_category(doc, kname);
    auto sub = full_subcategory(K, parse_objects(*K, sub_));
    r.instances.push_back(kname + " A=" + objects_text(*K, sub.objects));
    auto cod = codensity_monad(sub);
    if (!cod.exists()) {
      r.check("codensity monad exists", false, "Ran_i i has no value at " + objects_text(*K, cod.kan.missing),
              subcategory_witness(kname, sub));
      return;
    }
    const auto& m = *cod.monad;
    r.data["monad"] = monad_table(m);
    r.data["text"] = monad_text(m);
    SpecDocument out;
    out.add_category(kname, K);
    out.add_monad("T", kname, m);
    r.data["spec"] = emit_spec(out);
    auto laws = check_monad_laws(m);
    r.check("monad laws", laws.holds(), laws.holds() ? "" : laws.failures.front(), laws.holds() ? "" : r.data["spec"].get<std::string>());
    bool fixes = std::all_of(sub.objects.begin(), sub.objects.end(), [&](ObjId a) { return K->is_iso(m.eta(a)); });
    r.check("unit invertible on A", fixes, "", fixes ? "" : subcategory_witness(kname, sub));
    if (analysis_) add_monad_analysis(r, m, kname);
  }

  void monad(Report& r) {
    auto doc = load_document(in_);
    auto name = monad_.empty() ? first_of(doc, SpecDocument::Kind::monad, "monad") : monad_;
    auto it = doc.monads.find(name);
    if (it == doc.monads.end()) throw InputError("unknown monad '" + name + "'");
    r.instances.push_back(in_ + " " + name);
    r.data["monad"] = monad_table(it->second);
    r.data["text"] = monad_text(it->second);
    add_monad_analysis(r, it->second, name);
  }

  void isbell(Report& r) {
    if (main_theorem_ + swap_ + conjugation_ + ran_ != 1) throw InputError("choose one of --main-theorem, --swap, --conjugation, --ran");
    if (swap_ || conjugation_) {
      auto doc = load_document(in_.empty() ? base_ : in_);
      std::string kname;
      auto K = pick_category(doc, kname);
      auto sub = full_subcategory(K, parse_objects(*K, sub_));
      r.instances.push_back(kname + " A=" + objects_text(*K, sub.objects));
      if (swap_) {
        auto rep = swap_adjunction_check(sub);
        if (rep.refused) {
          r.checks.push_back({"swap adjunction", Verdict::vacuous, "A is not dense", ""});
          return;
        }
        for (const auto& p : rep.probes)
          r.check("K(" + K->object_name(p.object) + ", L Spec " + p.copresheaf + ") ~ Nat", p.agrees(),
                  std::to_string(p.hom_count) + " vs " + std::to_string(p.nat_count), p.agrees() ? "" : subcategory_witness(kname, sub));
      } else {
        auto rep = reflection_conjugation_check(sub);
        r.data["dense"] = rep.dense;
        r.data["conjugated"] = nlohmann::ordered_json::array();
        for (ObjId k : rep.conjugated) r.data["conjugated"].push_back(K->object_name(k));
        r.check("T_i ~ L Spec O K(i-,-) as monads", rep.holds(), rep.failure, rep.holds() ? "" : subcategory_witness(kname, sub));
      }
      return;
    }
    std::vector<std::pair<std::string, Presheaf>> ps;
    std::string cname;
    CategoryPtr base;
    if (!presheaf_.empty() || (!in_.empty() && up_to_ == 0)) {
      auto doc = load_document(in_);
      auto name = presheaf_.empty() ? first_of(doc, SpecDocument::Kind::presheaf, "presheaf") : presheaf_;
      auto it = doc.presheaves.find(name);
      if (it == doc.presheaves.end()) throw InputError("unknown presheaf '" + name + "'");
      ps.push_back({name, it->second});
      base = it->second.base_ptr();
      cname = doc.entries[0].name;
      for (const auto& e : doc.entries)
        if (e.name == name) cname = e.refs[0];
    } else {
      auto src = in_.empty() ? base_ : in_;
      auto doc = load_document(src);
      base = pick_category(doc, cname);
      auto all = enumerate_set_functors(base, up_to_);
      for (std::size_t i = 0; i < all.size(); ++i) ps.push_back({"P" + std::to_string(i), all[i]});
    }
    r.instances.push_back(cname + " with " + std::to_string(ps.size()) + " presheaves");
    for (const auto& [name, p] : ps) {
      SpecDocument w;
      w.add_category(cname, base);
      w.add_presheaf(name, cname, p);
      if (main_theorem_) {
        auto rep = verify_main_theorem(p);
        r.check("Spec O " + name + " ~ T_y " + name, rep.holds(), rep.canonical ? "canonical" : "", rep.holds() ? "" : emit_spec(w));
      } else {
        auto rep = ran_of_yoneda_against_O(p);
        r.check("Ran_y y# " + name + " ~ O " + name, rep.isomorphic, "", rep.isomorphic ? "" : emit_spec(w));
      }
    }
  }

  void laws(Report& r) {
    LawSuiteSettings s;
    s.instances = instances_ ? instances_ : 100;
    s.seed = seed_;
    s.max_objects = max_objects_;
    s.only = laws_;
    r.seed = seed_;
    r.instances.push_back("law suite, " + std::to_string(s.instances) + " instances per law");
    auto suite = run_kan_law_suite(s);
    for (const auto& law : suite.laws) {
      nlohmann::ordered_json j{{"law", law.law}};
      for (auto v : {Verdict::pass, Verdict::fail, Verdict::excluded, Verdict::skipped}) j[verdict_name(v)] = law.count(v);
      r.data["laws"].push_back(j);
      for (const auto& o : law.outcomes)
        r.checks.push_back({law.law + ": #" + std::to_string(o.index) + " " + o.instance, o.verdict, o.detail,
                            o.verdict == Verdict::fail ? o.instance : ""});
    }
  }

  void sweep(Report& r) {
    r.seed = seed_;
    std::optional<std::vector<SuiteInstance>> suite;
    auto monads = [&]() -> const std::vector<SuiteInstance>& {
      if (!suite) suite = monad_suite(soundness_corpus(seed_));
      return *suite;
    };
    auto want = [&](const char* k) { return kind_ == k || kind_ == "all"; };
    std::size_t n = instances_ ? instances_ : 50;
    if (want("soundness")) r.add_sweep(sweep_codensity_soundness(monads()));
    if (want("ultrafilter")) r.add_sweep(sweep_ultrafilter_shadow());
    if (want("main-theorem")) r.add_sweep(sweep_main_theorem());
    if (want("conjugation")) r.add_sweep(sweep_reflection_conjugation());
    if (want("arity")) r.add_sweep(sweep_arity_theorem());
    if (want("laws")) {
      LawSuiteSettings s;
      s.seed = seed_;
      s.instances = instances_ ? instances_ : 100;
      r.add_sweep(sweep_law_suite(s));
    }
    if (want("idempotency")) r.add_sweep(sweep_idempotency(monads()));
    if (want("lex")) r.add_sweep(sweep_lex_preservation(seed_, n));
    if (want("yoneda")) r.add_sweep(sweep_yoneda(seed_, n));
    if (want("equalizer")) r.add_sweep(sweep_equalizer_presentation(monads()));
    r.instances.push_back(kind_);
  }

  std::string format_ = "text";
  std::vector<std::string> cap_overrides_;
  std::string in_, category_, sub_, along_, of_, generate_, base_, presheaf_, monad_, suite_ = "appendix", kind_;
  std::vector<std::size_t> params_;
  std::vector<std::string> laws_;
  std::uint64_t seed_ = 1;
  bool seed_set_ = false, emit_ = false, left_ = false, analysis_ = false;
  bool main_theorem_ = false, swap_ = false, conjugation_ = false, ran_ = false;
  std::size_t up_to_ = 0, instances_ = 0, max_objects_ = 5;
};

}  // namespace detail

/// Runs one verb; the report carries the exit code.
inline Report run_command(const std::string& verb, const std::vector<std::string>& args) {
  return detail::CommandRunner().run(verb, args);
}

/// Entry point shared by the executable and the tests.
inline int cli_main(const std::vector<std::string>& argv, std::ostream& out) {
  if (argv.empty() || argv[0] == "--help" || argv[0] == "-h") {
    out << "usage: codensity <validate|kan|codensity|isbell|monad|laws|sweep> [options]\n"
           "       codensity <verb> --help\n";
    return argv.empty() ? kExitInputError : kExitPass;
  }
  detail::CommandRunner runner;
  auto report = runner.run(argv[0], {argv.begin() + 1, argv.end()});
  if (report.data.contains("help")) out << report.data["help"].get<std::string>();
  else if (runner.format() == "json") out << to_json(report).dump(2) << '\n';
  else out << to_text(report);
  return report.exit_code;
}

}  // namespace codensity
