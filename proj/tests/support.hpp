#pragma once

#include <string>
#include <vector>

#include "codensity/codensity.hpp"

namespace codensity::testing {

inline ObjId obj(const CategoryPtr& c, const std::string& name) { return c->object(name); }
inline MorId mor(const CategoryPtr& c, const std::string& name) { return c->morphism_id(name); }

inline std::vector<std::string> object_names_of(const Functor& f) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < f.source().object_count(); ++a) out.push_back(f.target().object_name(f.on_object(static_cast<ObjId>(a))));
  return out;
}

inline std::vector<std::string> object_names_of(const Monad& m) { return object_names_of(m.functor()); }

/// The closure operator of {0,2} on the 3-chain: 0 ↦ 0, 1 ↦ 2, 2 ↦ 2.
inline Monad chain_reflection() { return *thin_monad(chain_category(3), {0, 2, 2}); }

/// Constant at the top of the 3-chain.
inline Monad terminal_constant() { return *thin_monad(chain_category(3), {2, 2, 2}); }

inline std::vector<std::size_t> set_sizes(const Presheaf& p) { return sizes(p); }
inline std::vector<std::size_t> set_sizes(const Copresheaf& p) { return sizes(p); }

}  // namespace codensity::testing
