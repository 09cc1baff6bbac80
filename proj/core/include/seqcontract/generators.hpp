#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "seqcontract/model.hpp"
#include "seqcontract/rational.hpp"

namespace seqcontract {

// Parameters of the Partition gadget. q is a dyadic approximation of the
// root in [0, 1/4] of q^2(-10 + eps) + q(-2 - 4eps/5) + 9/10 - 99eps/100,
// with |quadratic(q)| <= residual_bound.
struct PartitionParams {
  std::vector<Rational> a;  // sums to 1/5
  Rational epsilon;         // min(a) / 100
  Rational q;
  Rational residual;  // quadratic evaluated at q
  Rational c;         // epsilon * q / 10
};

Rational partition_quadratic(const Rational& epsilon, const Rational& q);

// Throws ValidationError unless every a_i lies in (0, 1) and they sum to 1/5.
PartitionParams partition_params(const std::vector<Rational>& a);

// Outcomes: 0 (zero outcome), 1..k (reward 0), k+1 (reward 1). Actions: a
// free action hitting k+1 w.p. 1 - eps, a free action spreading a over the
// middle outcomes, and an action of cost c doing both with q on k+1.
Instance gen_partition_reduction(const PartitionParams& params);

// Pays c / (q + sum_{l in S} a_l) on S and on outcome k+1. in_set has one
// flag per middle outcome.
Contract equal_spread_contract(const PartitionParams& params, const std::vector<bool>& in_set);

// Closed form of the principal's utility under the equal-spread contract
// for a set of total mass x.
Rational equal_spread_utility(const PartitionParams& params, const Rational& x);

// Three outcomes with rewards (0, 1, 1); action i in 1..n costs
// (2^i - i) / 2^(n+1).
Instance gen_gap_instance(std::size_t n);
// (0, 1, eps)
Contract gap_general_contract(const Rational& eps);

// Two uniform actions over m outcomes with rewards 0..m-1; the first is
// free, the second costs 1/(2m).
Instance gen_critpoints_instance(std::size_t m);

struct SuperpolyInstance {
  Instance instance;
  std::size_t ell = 0;
  std::size_t dummy_actions = 0;
  // (j, i) per real action, outcome j in 2..m (1-based) and level i in 1..ell.
  std::vector<std::pair<std::size_t, std::size_t>> labels;
};

// Actions (j, i) cost i * r(j) with r(j) = ell^j and send half the mass to
// the zero outcome, half to outcome j. ell = floor(n / (m-1)); leftover
// actions are dummies that cost 1 and always yield the zero outcome.
// Throws ValidationError if m < 2 or n < m - 1.
SuperpolyInstance gen_superpoly_instance(std::size_t n, std::size_t m);

// t(j) = (2 + 1/(2 ell)) r(j) v_{j-1} for j >= 2, with v in [ell]^(m-1).
Contract superpoly_value_contract(const SuperpolyInstance& s, const std::vector<std::size_t>& v);

// t(j) = rho^{-1}(j) + 2 r(j) for j >= 2. rho lists the outcomes 2..m
// (1-based) in position order 1..m-1.
Contract superpoly_order_contract(const SuperpolyInstance& s, const std::vector<std::size_t>& rho);

struct RandomInstanceOptions {
  std::int64_t max_reward = 6;   // rewards are integers in [0, max_reward]
  std::int64_t prob_grain = 4;   // per-outcome weights are integers in [0, grain]
  std::int64_t cost_denominator = 8;
  std::int64_t max_cost_numerator = 8;
  std::uint64_t zero_cost_one_in = 6;  // chance 1/k of a free action
};

// Deterministic for a fixed seed on every platform.
Instance gen_random_instance(std::size_t n, std::size_t m, std::uint64_t seed,
                             const RandomInstanceOptions& options = {});

}  // namespace seqcontract
