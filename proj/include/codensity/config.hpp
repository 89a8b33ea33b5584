#pragma once

// Global size caps and the error types shared by every module.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace codensity {

/// Size caps that keep the exponential searches bounded.  One global block;
/// commands and tests override it through ScopedCaps.
struct Caps {
  std::size_t max_morphisms = 64;             // user-supplied categories
  std::size_t max_internal_morphisms = 4096;  // comma / element / algebra categories
  std::size_t max_tuples = 1'000'000;         // products and function sets
  std::size_t max_search_nodes = 20'000'000;  // backtracking nodes per search
  std::size_t max_cones = 200'000;            // cones enumerated per limit
  std::size_t max_subsets = 4096;             // subsets tried by gi_search
  std::size_t verify_universal_max_objects = 3;
};

inline Caps& caps() {
  static Caps instance;
  return instance;
}

/// Restores the previous caps on scope exit.
/// Sets one cap by name; false if the name is unknown.
inline bool set_cap(Caps& c, std::string_view name, std::size_t value) {
  if (name == "max_morphisms") c.max_morphisms = value;
  else if (name == "max_internal_morphisms") c.max_internal_morphisms = value;
  else if (name == "max_tuples") c.max_tuples = value;
  else if (name == "max_search_nodes") c.max_search_nodes = value;
  else if (name == "max_cones") c.max_cones = value;
  else if (name == "max_subsets") c.max_subsets = value;
  else if (name == "verify_universal_max_objects") c.verify_universal_max_objects = value;
  else return false;
  return true;
}

class ScopedCaps {
 public:
  explicit ScopedCaps(const Caps& next) : saved_(caps()) { caps() = next; }
  ~ScopedCaps() { caps() = saved_; }
  ScopedCaps(const ScopedCaps&) = delete;
  ScopedCaps& operator=(const ScopedCaps&) = delete;

 private:
  Caps saved_;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or construction would exceed one of the configured caps.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input: tables that do not describe a category, functor, etc.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Multiplies with saturation at SIZE_MAX.
inline std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > SIZE_MAX / b) return SIZE_MAX;
  return a * b;
}

inline std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r = saturating_mul(r, base);
    if (r == 0) return 0;
  }
  return r;
}

/// Counts nodes of a backtracking search against caps().max_search_nodes.
class SearchBudget {
 public:
  explicit SearchBudget(std::string_view what, std::size_t limit = caps().max_search_nodes)
      : what_(what), limit_(limit) {}

  void tick() {
    if (++used_ > limit_) {
      throw BudgetExceeded("search budget exceeded in " + what_ + " (" + std::to_string(limit_) +
                           " nodes)");
    }
  }
  std::size_t used() const { return used_; }

 private:
  std::string what_;
  std::size_t limit_;
  std::size_t used_ = 0;
};

}  // namespace codensity
