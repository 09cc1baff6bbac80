#pragma once

#include <cstddef>
#include <vector>

#include "seqcontract/rational.hpp"

namespace seqcontract {

// Independent-action contract instance. Outcome 0 is the zero outcome: it is
// always available, even before any action is taken, and has reward 0.
// Invariants (enforced by validate_instance): rewards non-decreasing,
// rewards[0] == 0, every probability row sums to exactly 1, nothing negative.
struct Instance {
  std::vector<Rational> rewards;             // size m
  std::vector<Rational> costs;               // size n
  std::vector<std::vector<Rational>> probs;  // n x m, probs[i][j] = Pr[X_i = j]

  std::size_t num_actions() const { return costs.size(); }
  std::size_t num_outcomes() const { return rewards.size(); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Instance as read from a document, before any checks or relabeling.
struct RawInstance {
  std::vector<Rational> rewards;
  std::vector<Rational> costs;
  std::vector<std::vector<Rational>> probs;
};

struct NormalizedInstance {
  Instance instance;
  // outcome_order[k] is the original label of normalized outcome k.
  std::vector<std::size_t> outcome_order;
};

struct Contract {
  std::vector<Rational> payments;  // size m, all >= 0

  friend bool operator==(const Contract&, const Contract&) = default;
};

struct LinearContract {
  Rational alpha;  // in [0, 1]
};

// Checks the model assumptions and relabels outcomes into non-decreasing
// reward order (stable, so tied rewards keep their relative order).
// Throws ValidationError.
NormalizedInstance validate_instance(const RawInstance& raw);

// Re-checks an already normalized instance; throws ValidationError.
void check_instance(const Instance& inst);

// Throws ValidationError if the contract has the wrong length or a negative
// payment.
void check_contract(const Instance& inst, const Contract& t);

Contract induced_payments(const LinearContract& lin, const Instance& inst);

// Contracts travel in the document's outcome labeling; these map between it
// and the normalized labeling.
Contract to_normalized(const Contract& original, const std::vector<std::size_t>& outcome_order);
Contract to_original(const Contract& normalized, const std::vector<std::size_t>& outcome_order);

RawInstance to_raw(const Instance& inst);

}  // namespace seqcontract
