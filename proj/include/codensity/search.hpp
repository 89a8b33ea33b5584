#pragma once

// Backtracking over finite variables linked by functional constraints
// "value(target) = table[value(source)]".  Naturality squares, cone conditions
// and end (wedge) conditions all have this shape, so one engine serves them all.

#include <algorithm>
#include <functional>
#include <vector>

#include "codensity/config.hpp"

namespace codensity {

class FunctionalCsp {
 public:
  /// Adds a variable with values 0..domain_size-1; returns its index.
  int add_variable(int domain_size, int group = -1) {
    domain_.push_back(domain_size);
    group_.push_back(group);
    out_.emplace_back();
    return static_cast<int>(domain_.size()) - 1;
  }

  /// value(target) must equal table[value(source)]; a table entry of -1
  /// forbids that source value.
  void add_constraint(int source, int target, std::vector<int> table) {
    tables_.push_back(std::move(table));
    out_[static_cast<std::size_t>(source)].push_back({target, static_cast<int>(tables_.size()) - 1});
  }

  /// Variables sharing a non-negative group id must take distinct values.
  void require_distinct_groups(bool on) { distinct_ = on; }

  std::size_t variable_count() const { return domain_.size(); }

  /// Visits every solution; branching follows `order` (all variables when empty).
  /// The visitor returns false to stop.
  void solve(const std::function<bool(const std::vector<int>&)>& visit, std::vector<int> order,
             SearchBudget& budget) {
    const std::size_t n = domain_.size();
    if (order.empty()) {
      order.resize(n);
      for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    }
    for (int d : domain_)
      if (d == 0) return;
    value_.assign(n, -1);
    trail_.clear();
    used_.clear();
    if (distinct_) {
      for (std::size_t i = 0; i < n; ++i)
        if (group_[i] >= 0) {
          auto g = static_cast<std::size_t>(group_[i]);
          if (used_.size() <= g) used_.resize(g + 1);
          used_[g].resize(std::max<std::size_t>(used_[g].size(), static_cast<std::size_t>(domain_[i])), 0);
        }
    }
    stop_ = false;
    dfs(0, order, visit, budget);
  }

  std::vector<std::vector<int>> all_solutions(std::vector<int> order, SearchBudget& budget,
                                              std::size_t max_results = SIZE_MAX) {
    std::vector<std::vector<int>> out;
    solve(
        [&](const std::vector<int>& v) {
          if (out.size() >= max_results)
            throw BudgetExceeded("more than " + std::to_string(max_results) + " solutions");
          out.push_back(v);
          return true;
        },
        std::move(order), budget);
    return out;
  }

 private:
  struct Edge {
    int target;
    int table;
  };

  bool assign(int var, int val) {
    if (distinct_ && group_[static_cast<std::size_t>(var)] >= 0) {
      auto& u = used_[static_cast<std::size_t>(group_[static_cast<std::size_t>(var)])];
      if (u[static_cast<std::size_t>(val)]) return false;
      u[static_cast<std::size_t>(val)] = 1;
    }
    value_[static_cast<std::size_t>(var)] = val;
    trail_.push_back(var);
    return true;
  }

  bool propagate(int var, int val) {
    if (!assign(var, val)) return false;
    std::size_t head = trail_.size() - 1;
    while (head < trail_.size()) {
      int x = trail_[head++];
      int vx = value_[static_cast<std::size_t>(x)];
      for (const auto& e : out_[static_cast<std::size_t>(x)]) {
        int forced = tables_[static_cast<std::size_t>(e.table)][static_cast<std::size_t>(vx)];
        if (forced < 0) return false;
        int cur = value_[static_cast<std::size_t>(e.target)];
        if (cur == -1) {
          if (!assign(e.target, forced)) return false;
        } else if (cur != forced) {
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      int x = trail_.back();
      trail_.pop_back();
      if (distinct_ && group_[static_cast<std::size_t>(x)] >= 0)
        used_[static_cast<std::size_t>(group_[static_cast<std::size_t>(x)])]
             [static_cast<std::size_t>(value_[static_cast<std::size_t>(x)])] = 0;
      value_[static_cast<std::size_t>(x)] = -1;
    }
  }

  void dfs(std::size_t pos, const std::vector<int>& order,
           const std::function<bool(const std::vector<int>&)>& visit, SearchBudget& budget) {
    while (pos < order.size() && value_[static_cast<std::size_t>(order[pos])] != -1) ++pos;
    if (pos == order.size()) {
      if (!visit(value_)) stop_ = true;
      return;
    }
    int var = order[pos];
    for (int v = 0; v < domain_[static_cast<std::size_t>(var)] && !stop_; ++v) {
      budget.tick();
      std::size_t mark = trail_.size();
      if (propagate(var, v)) dfs(pos + 1, order, visit, budget);
      undo(mark);
    }
  }

  std::vector<int> domain_;
  std::vector<int> group_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<int>> tables_;
  std::vector<int> value_;
  std::vector<int> trail_;
  std::vector<std::vector<char>> used_;
  bool distinct_ = false;
  bool stop_ = false;
};

}  // namespace codensity
