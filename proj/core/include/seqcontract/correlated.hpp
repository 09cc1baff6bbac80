#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "seqcontract/rational.hpp"

namespace seqcontract {

// Subsets of at most 64 actions, bit i set when action i is in the set.
using ActionSet = std::uint64_t;

inline constexpr std::size_t kMaxCorrelatedActions = 64;

inline bool contains(ActionSet s, std::size_t i) { return ((s >> i) & 1U) != 0; }
inline ActionSet with(ActionSet s, std::size_t i) { return s | (ActionSet{1} << i); }

// f(S) = sum of w_u over elements u covered by some action of S.
struct CoverageFunction {
  std::vector<std::string> elements;
  std::vector<Rational> weights;               // per element, >= 0
  std::vector<std::string> actions;
  std::vector<std::vector<std::size_t>> covers;  // per action, element indices

  std::size_t num_actions() const { return actions.size(); }
};

// Joint law of 0/1 action outcomes. Mass not listed sits on the all-zero
// point.
struct BernoulliJoint {
  std::vector<std::string> actions;
  std::vector<ActionSet> support;  // actions whose variable is 1
  std::vector<Rational> pdf;
};

// Joint law of non-negative action values.
struct ValueJoint {
  std::vector<std::string> actions;
  std::vector<std::vector<Rational>> support;  // point[i] = value of action i
  std::vector<Rational> pdf;
};

struct CorrelatedInstance {
  CoverageFunction f;
  std::vector<Rational> costs;  // per action
};

// Ordered, duplicate-free action sequence; the agent stops at the first
// success.
using TupleStrategy = std::vector<std::size_t>;

// Throws ValidationError on negative weights, dangling element indices,
// more than kMaxCorrelatedActions actions.
void check_coverage(const CoverageFunction& f);
// Also requires f(all actions) <= 1 and non-negative costs.
void check_correlated(const CorrelatedInstance& ci);

ActionSet all_actions(std::size_t n);

Rational coverage_eval(const CoverageFunction& f, ActionSet s);

// Pr[some action of S succeeds], read directly off the joint.
Rational correlated_or(const BernoulliJoint& joint, ActionSet s);
// E[max_{i in S} X_i], 0 for the empty set.
Rational expected_max(const ValueJoint& joint, ActionSet s);

CoverageFunction bernoulli_to_coverage(const BernoulliJoint& joint);
// Drops elements no action covers, merges elements with identical cover
// sets and puts the residual mass on the all-zero point. Throws
// ValidationError if the remaining weight exceeds 1.
BernoulliJoint coverage_to_bernoulli(const CoverageFunction& f);

// One element per (support point, positive value level) with weight
// p(v) * (level - previous level); zero-weight elements are dropped.
CoverageFunction corrmax_to_coverage(const ValueJoint& joint);
// Values in {0, L} with L the total weight.
ValueJoint coverage_to_corrmax(const CoverageFunction& f);

Rational sequence_cost(const CorrelatedInstance& ci, const TupleStrategy& s);

struct SequenceUtilities {
  Rational agent;
  Rational principal;
};
SequenceUtilities sequence_utilities(const CorrelatedInstance& ci, const Rational& alpha,
                                     const TupleStrategy& s);

struct CorrelatedCandidate {
  Rational alpha;
  Rational utility;
  TupleStrategy strategy;
};

struct CorrelatedLinearResult {
  Rational alpha;
  Rational utility;
  TupleStrategy strategy;
  std::vector<CorrelatedCandidate> candidates;  // ascending alpha
};

inline constexpr std::size_t kDefaultCorrelatedActionBound = 7;

// Exhaustive over tuple strategies. Throws CapacityError above max_actions.
CorrelatedLinearResult brute_force_best_linear(
    const CorrelatedInstance& ci, std::size_t max_actions = kDefaultCorrelatedActionBound);

// Agent best response to alpha among all tuples: max agent utility, then
// max principal utility, then shortest and lexicographically smallest.
TupleStrategy correlated_best_response(const CorrelatedInstance& ci, const Rational& alpha,
                                       std::size_t max_actions = kDefaultCorrelatedActionBound);

// Adds action "0" (index 0) covering the whole universe with cost
// 1 - gamma/8; every original action costs 3/(2(k+1)). Throws
// ValidationError unless every singleton of fprime has value 1/k and
// fprime(all) <= 1.
CorrelatedInstance hardness_reduction(const CoverageFunction& fprime, std::size_t k,
                                      const Rational& gamma);

}  // namespace seqcontract
