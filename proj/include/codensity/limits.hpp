#pragma once

// Limits and colimits of finite diagrams inside a finite category, found by
// enumerating cones and testing terminality.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "codensity/fincat.hpp"
#include "codensity/finset.hpp"
#include "codensity/presheaf.hpp"
#include "codensity/search.hpp"

namespace codensity {

/// legs[j]: apex → D(j) for a cone, D(j) → apex for a cocone.
struct Cone {
  ObjId apex = 0;
  std::vector<MorId> legs;
  friend bool operator==(const Cone&, const Cone&) = default;
};

namespace detail {

inline FunctionalCsp cone_csp(const Functor& d, ObjId apex, std::vector<std::vector<MorId>>& domains) {
  const auto& J = d.source();
  const auto& C = d.target();
  auto pos = hom_positions(C);
  FunctionalCsp csp;
  domains.assign(J.object_count(), {});
  for (std::size_t j = 0; j < J.object_count(); ++j) {
    auto h = C.hom(apex, d.on_object(static_cast<ObjId>(j)));
    domains[j].assign(h.begin(), h.end());
    csp.add_variable(static_cast<int>(h.size()));
  }
  for (std::size_t u = 0; u < J.morphism_count(); ++u) {
    if (J.is_identity(static_cast<MorId>(u))) continue;
    auto s = static_cast<std::size_t>(J.dom(static_cast<MorId>(u)));
    auto t = J.cod(static_cast<MorId>(u));
    std::vector<int> table;
    for (MorId h : domains[s]) table.push_back(pos[static_cast<std::size_t>(C.compose(d.on_morphism(static_cast<MorId>(u)), h))]);
    csp.add_constraint(static_cast<int>(s), t, std::move(table));
  }
  return csp;
}

}  // namespace detail

/// Cones over d: J → C with the given apex, in lexicographic order of legs.
inline std::vector<Cone> enumerate_cones(const Functor& d, ObjId apex, std::size_t max_results = caps().max_cones) {
  std::vector<std::vector<MorId>> domains;
  auto csp = detail::cone_csp(d, apex, domains);
  SearchBudget budget("cone enumeration");
  std::vector<Cone> out;
  csp.solve(
      [&](const std::vector<int>& v) {
        if (out.size() >= max_results) throw BudgetExceeded("more than " + std::to_string(max_results) + " cones");
        Cone c{apex, std::vector<MorId>(v.size())};
        for (std::size_t j = 0; j < v.size(); ++j) c.legs[j] = domains[j][static_cast<std::size_t>(v[j])];
        out.push_back(std::move(c));
        return true;
      },
      detail::source_first_order(d.source()), budget);
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.legs < b.legs; });
  return out;
}

inline std::size_t count_cones(const Functor& d, ObjId apex) {
  std::vector<std::vector<MorId>> domains;
  auto csp = detail::cone_csp(d, apex, domains);
  SearchBudget budget("cone counting");
  std::size_t n = 0;
  csp.solve([&](const std::vector<int>&) { ++n; return true; }, detail::source_first_order(d.source()), budget);
  return n;
}

/// The terminal cone over d, first in canonical order (apex order, then legs),
/// or nullopt when d has no limit in its target.
inline std::optional<Cone> limit_in_category(const Functor& d) {
  const auto& C = d.target();
  const std::size_t n = C.object_count();
  std::vector<std::size_t> counts(n);
  for (std::size_t c = 0; c < n; ++c) counts[c] = count_cones(d, static_cast<ObjId>(c));
  for (std::size_t c = 0; c < n; ++c) {
    if (counts[c] == 0) continue;
    // A terminal apex c has exactly |hom(c', c)| cones from every c'.
    bool plausible = true;
    for (std::size_t c2 = 0; c2 < n && plausible; ++c2)
      plausible = counts[c2] == C.hom(static_cast<ObjId>(c2), static_cast<ObjId>(c)).size();
    if (!plausible) continue;
    for (const auto& cone : enumerate_cones(d, static_cast<ObjId>(c))) {
      // With the counts equal, terminality is injectivity of h ↦ cone ∘ h.
      bool terminal = true;
      for (std::size_t c2 = 0; c2 < n && terminal; ++c2) {
        std::vector<std::vector<MorId>> seen;
        for (MorId h : C.hom(static_cast<ObjId>(c2), static_cast<ObjId>(c))) {
          std::vector<MorId> legs(cone.legs.size());
          for (std::size_t j = 0; j < legs.size(); ++j) legs[j] = C.compose(cone.legs[j], h);
          seen.push_back(std::move(legs));
        }
        std::sort(seen.begin(), seen.end());
        terminal = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
      }
      if (terminal) return cone;
    }
  }
  return std::nullopt;
}

/// The initial cocone over d, computed as a limit in the opposite category.
inline std::optional<Cone> colimit_in_category(const Functor& d) {
  auto dop = opposite(d);
  return limit_in_category(dop);
}

/// The unique h: other.apex → lim.apex with lim.legs[j] ∘ h = other.legs[j].
inline std::optional<MorId> factor_through_limit(const FinCategory& c, const Cone& lim, const Cone& other) {
  for (MorId h : c.hom(other.apex, lim.apex)) {
    bool ok = true;
    for (std::size_t j = 0; j < lim.legs.size() && ok; ++j) ok = c.compose(lim.legs[j], h) == other.legs[j];
    if (ok) return h;
  }
  return std::nullopt;
}

/// The unique h: colim.apex → other.apex with h ∘ colim.legs[j] = other.legs[j].
inline std::optional<MorId> factor_through_colimit(const FinCategory& c, const Cone& colim, const Cone& other) {
  for (MorId h : c.hom(colim.apex, other.apex)) {
    bool ok = true;
    for (std::size_t j = 0; j < colim.legs.size() && ok; ++j) ok = c.compose(h, colim.legs[j]) == other.legs[j];
    if (ok) return h;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Small shapes

/// A discrete category on n objects named 0..n-1 (or the given names).
inline CategoryPtr discrete_category(std::vector<std::string> names) {
  std::vector<MorphismInfo> mors;
  std::vector<MorId> ids;
  for (std::size_t i = 0; i < names.size(); ++i) {
    mors.push_back({"id_" + names[i], static_cast<ObjId>(i), static_cast<ObjId>(i)});
    ids.push_back(static_cast<MorId>(i));
  }
  const std::size_t m = mors.size();
  std::vector<MorId> table(m * m, kNoMorphism);
  for (std::size_t i = 0; i < m; ++i) table[i * m + i] = static_cast<MorId>(i);
  return share(FinCategory::assemble(std::move(names), std::move(mors), std::move(ids), std::move(table)));
}

inline CategoryPtr discrete_category(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return discrete_category(std::move(names));
}

/// Two objects s, t and two parallel arrows p, q: s → t.
inline CategoryPtr parallel_pair_category() {
  RawCategory r;
  r.objects = {"s", "t"};
  r.morphisms = {{"id_s", "s", "s"}, {"id_t", "t", "t"}, {"p", "s", "t"}, {"q", "s", "t"}};
  r.identities = {{"s", "id_s"}, {"t", "id_t"}};
  return make_category(r);
}

// ---------------------------------------------------------------------------
// Limit preservation by copresheaves

struct LimitProbe {
  std::string name;
  Functor diagram;
};

struct ProbeOutcome {
  std::string probe;
  enum class Status { preserved, not_preserved, no_limit } status;
  std::size_t value_at_limit = 0;   // |Q(lim D)|
  std::size_t limit_of_values = 0;  // |lim Q∘D|
};

struct PreservationReport {
  std::vector<ProbeOutcome> outcomes;
  bool all_preserved() const {
    return std::all_of(outcomes.begin(), outcomes.end(),
                       [](const ProbeOutcome& o) { return o.status != ProbeOutcome::Status::not_preserved; });
  }
  std::size_t skipped() const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [](const ProbeOutcome& o) {
      return o.status == ProbeOutcome::Status::no_limit;
    }));
  }
};

/// Compares Q(lim D) with lim Q∘D through x ↦ (Q(λ_j) x)_j for every probe.
inline PreservationReport preserves_finite_limits(const Copresheaf& q, const std::vector<LimitProbe>& probes) {
  PreservationReport report;
  for (const auto& probe : probes) {
    ProbeOutcome o{probe.name, ProbeOutcome::Status::no_limit};
    auto lim = limit_in_category(probe.diagram);
    if (!lim) {
      report.outcomes.push_back(o);
      continue;
    }
    const auto& J = probe.diagram.source();
    Diagram values{probe.diagram.source_ptr(), {}, {}};
    for (std::size_t j = 0; j < J.object_count(); ++j) values.sets.push_back(q.at(probe.diagram.on_object(static_cast<ObjId>(j))));
    for (std::size_t u = 0; u < J.morphism_count(); ++u) values.maps.push_back(q.action(probe.diagram.on_morphism(static_cast<MorId>(u))));
    auto set_lim = limit(values);
    const auto& at_apex = q.at(lim->apex);
    std::vector<std::vector<int>> legs;
    for (MorId leg : lim->legs) legs.push_back(q.action(leg));
    auto cmp = limit_factor(values, set_lim, at_apex.size(), legs);
    o.value_at_limit = at_apex.size();
    o.limit_of_values = set_lim.apex.size();
    bool bij = cmp && FinFunction{at_apex, set_lim.apex, *cmp}.bijective();
    o.status = bij ? ProbeOutcome::Status::preserved : ProbeOutcome::Status::not_preserved;
    report.outcomes.push_back(o);
  }
  return report;
}

/// Binary products (meets) of every unordered pair and the empty limit (top).
inline std::vector<LimitProbe> meet_and_top_probes(const CategoryPtr& base) {
  std::vector<LimitProbe> probes;
  auto empty = discrete_category(0);
  probes.push_back({"top", Functor::unchecked(empty, base, {}, {})});
  auto two = discrete_category(2);
  const auto& C = *base;
  for (std::size_t a = 0; a < C.object_count(); ++a)
    for (std::size_t b = a + 1; b < C.object_count(); ++b) {
      std::vector<ObjId> o{static_cast<ObjId>(a), static_cast<ObjId>(b)};
      std::vector<MorId> m{C.identity(static_cast<ObjId>(a)), C.identity(static_cast<ObjId>(b))};
      probes.push_back({"meet " + C.object_name(static_cast<ObjId>(a)) + "," + C.object_name(static_cast<ObjId>(b)),
                        Functor::unchecked(two, base, std::move(o), std::move(m))});
    }
  return probes;
}

}  // namespace codensity
