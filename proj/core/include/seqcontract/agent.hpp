#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "seqcontract/model.hpp"
#include "seqcontract/rational.hpp"

namespace seqcontract {

// Agent strategy fixed in advance: take actions in `order`; before taking
// action a, halt if the currently preferred revealed outcome j satisfies
// rank[j] >= rank[*threshold[a]] (never halt there when threshold[a] is
// empty). On halting, or after the last action, the final outcome is the
// revealed outcome of highest rank. The zero outcome counts as revealed from
// the start.
struct NonAdaptiveStrategy {
  std::vector<std::size_t> order;                   // permutation of actions
  std::vector<std::size_t> rank;                    // permutation of outcomes; higher = preferred
  std::vector<std::optional<std::size_t>> threshold;  // per action

  friend bool operator==(const NonAdaptiveStrategy&, const NonAdaptiveStrategy&) = default;
};

// Distribution of the final outcome, plus the probability that each action
// is taken at all.
struct OutcomeDistribution {
  std::vector<Rational> mass;              // size m, sums to 1
  std::vector<Rational> take_probability;  // size n
};

struct ReservationDetail {
  ExtendedRational value;
  // Outcomes paying strictly more than the reservation value. Empty when the
  // value is infinite.
  std::vector<std::size_t> above;
};

// Solves E[(t(X_i) - z)^+] = c_i exactly; +infinity when c_i == 0.
ExtendedRational reservation_value(const Instance& inst, const Contract& t, std::size_t action);
ReservationDetail reservation_detail(const Instance& inst, const Contract& t, std::size_t action);
std::vector<ExtendedRational> reservation_values(const Instance& inst, const Contract& t);

// Weitzman's index policy: actions by non-increasing reservation value,
// outcomes ranked by payment, continue while the best revealed payment is
// at most the next reservation value. Ties go to the lower index.
NonAdaptiveStrategy weitzman_strategy(const Instance& inst, const Contract& t);

// Strategy that never takes an action.
NonAdaptiveStrategy idle_strategy(const Instance& inst);

OutcomeDistribution outcome_distribution(const Instance& inst, const NonAdaptiveStrategy& s);

Rational agent_utility(const Instance& inst, const Contract& t, const OutcomeDistribution& d);
Rational agent_utility(const Instance& inst, const Contract& t, const NonAdaptiveStrategy& s);
Rational principal_utility_for(const Instance& inst, const Contract& t, const OutcomeDistribution& d);
Rational principal_utility_for(const Instance& inst, const Contract& t, const NonAdaptiveStrategy& s);

// Perturbation size for t(j) + eps * (r(j) - t(j)): a third of the smallest
// positive gap among reservation values and payments, divided by
// 1 + max |r(j) - t(j)|, capped at 1.
Rational tiebreak_epsilon(const Instance& inst, const Contract& t);
Contract perturb_toward_rewards(const Instance& inst, const Contract& t, const Rational& epsilon);
Contract tiebreak_contract(const Instance& inst, const Contract& t);

struct BestResponse {
  Rational principal_utility;
  Rational agent_utility;
  NonAdaptiveStrategy strategy;
  OutcomeDistribution distribution;
};

// Principal's utility when the agent best responds and breaks ties in the
// principal's favor.
BestResponse principal_utility(const Instance& inst, const Contract& t);

}  // namespace seqcontract
