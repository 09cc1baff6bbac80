#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "seqcontract/agent.hpp"
#include "seqcontract/model.hpp"
#include "seqcontract/rational.hpp"

namespace seqcontract {

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000;

// n! * m! * (m+1)^n, saturating at UINT64_MAX.
std::uint64_t strategy_count(std::size_t n, std::size_t m);

// Strategies are numbered in lexicographic order of (order, threshold,
// rank): id = (order_index * (m+1)^n + threshold_code) * m! + rank_index,
// where threshold_code reads thresholds as base-(m+1) digits, action 0 most
// significant, empty = 0 and outcome j = j + 1.
std::uint64_t strategy_id(const NonAdaptiveStrategy& s);
NonAdaptiveStrategy decode_strategy(std::uint64_t id, std::size_t n, std::size_t m);

// Visits every (order, rank, threshold) tuple once, in id order. Throws
// CapacityError when the count exceeds budget.
void enumerate_nonadaptive(std::size_t n, std::size_t m,
                           const std::function<void(const NonAdaptiveStrategy&)>& visit,
                           std::uint64_t budget = kDefaultOracleBudget);

// Strategies with identical final-outcome distribution and expected cost
// are interchangeable for every contract.
struct Behavior {
  std::vector<Rational> mass;
  Rational expected_cost;
  Rational expected_reward;
  std::vector<std::uint64_t> ids;  // ascending
};

// Every non-adaptive strategy of an instance, grouped by behavior. Built by
// depth-first search sharing action-order prefixes.
class StrategyCatalog {
 public:
  StrategyCatalog(const Instance& inst, std::uint64_t budget = kDefaultOracleBudget);

  const Instance& instance() const { return inst_; }
  const std::vector<Behavior>& behaviors() const { return behaviors_; }
  std::uint64_t strategy_total() const { return total_; }

 private:
  Instance inst_;
  std::vector<Behavior> behaviors_;
  std::uint64_t total_ = 0;
};

struct OracleReport {
  Rational agent_utility;      // best over all strategies
  Rational principal_utility;  // best among agent-optimal strategies
  std::vector<std::uint64_t> optimal_ids;  // every agent-optimal strategy, ascending
  std::uint64_t chosen_id = 0;  // lowest id attaining both maxima
  NonAdaptiveStrategy chosen;

  bool is_optimal(const NonAdaptiveStrategy& s) const;
};

OracleReport oracle_best_response(const StrategyCatalog& catalog, const Contract& t);
OracleReport oracle_best_response(const Instance& inst, const Contract& t,
                                  std::uint64_t budget = kDefaultOracleBudget);

struct OracleLinear {
  Rational alpha;
  Rational utility;
  std::size_t candidate_count = 0;
};

// Candidates: 0, 1 and every (C1 - C2) / (R1 - R2) in [0, 1] over pairs of
// cost/reward points not dominated by another strategy. Max utility, then
// min alpha.
OracleLinear oracle_best_linear(const StrategyCatalog& catalog);
OracleLinear oracle_best_linear(const Instance& inst, std::uint64_t budget = kDefaultOracleBudget);

struct GridResult {
  Contract contract;
  Rational utility;
  std::uint64_t points = 0;
};

inline constexpr std::uint64_t kDefaultGridBudget = 5'000'000;

// Best principal utility over {0, step, 2 step, ...} plus the payment bound
// itself, in every coordinate. Lexicographically smallest contract on ties.
// A zero payment bound makes the grid the single zero contract, for any
// step >= 0.
GridResult grid_search_general(const Instance& inst, const Rational& step,
                               std::uint64_t budget = kDefaultGridBudget);

}  // namespace seqcontract
