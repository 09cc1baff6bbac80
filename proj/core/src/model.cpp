#include "seqcontract/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "seqcontract/errors.hpp"

namespace seqcontract {
namespace {

void check_shape(const RawInstance& raw) {
  const std::size_t n = raw.costs.size();
  const std::size_t m = raw.rewards.size();
  if (n == 0) throw ValidationError("instance has no actions (n = 0)");
  if (m == 0) throw ValidationError("instance has no outcomes (m = 0)");
  if (raw.probs.size() != n) {
    throw ValidationError("probs has " + std::to_string(raw.probs.size()) +
                          " rows, expected " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (raw.probs[i].size() != m) {
      throw ValidationError("probs row " + std::to_string(i + 1) + " has " +
                            std::to_string(raw.probs[i].size()) + " entries, expected " +
                            std::to_string(m));
    }
  }
}

void check_values(const std::vector<Rational>& rewards, const std::vector<Rational>& costs,
                  const std::vector<std::vector<Rational>>& probs) {
  for (std::size_t j = 0; j < rewards.size(); ++j) {
    if (rewards[j] < 0) throw ValidationError("negative reward at outcome " + std::to_string(j + 1));
  }
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (costs[i] < 0) throw ValidationError("negative cost at action " + std::to_string(i + 1));
  }
  for (std::size_t i = 0; i < probs.size(); ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < probs[i].size(); ++j) {
      if (probs[i][j] < 0) {
        throw ValidationError("negative probability at action " + std::to_string(i + 1) +
                              ", outcome " + std::to_string(j + 1));
      }
      sum += probs[i][j];
    }
    if (sum != 1) {
      throw ValidationError("row sum != 1 for action " + std::to_string(i + 1) + " (sum is " +
                            format_rational(sum) + ")");
    }
  }
  const Rational min_reward = *std::min_element(rewards.begin(), rewards.end());
  if (min_reward != 0) {
    throw ValidationError("minimum reward must be 0 (got " + format_rational(min_reward) + ")");
  }
}

}  // namespace

NormalizedInstance validate_instance(const RawInstance& raw) {
  check_shape(raw);
  check_values(raw.rewards, raw.costs, raw.probs);

  const std::size_t m = raw.rewards.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw.rewards[a] < raw.rewards[b];
  });

  NormalizedInstance out;
  out.outcome_order = order;
  out.instance.costs = raw.costs;
  out.instance.rewards.reserve(m);
  for (std::size_t k : order) out.instance.rewards.push_back(raw.rewards[k]);
  out.instance.probs.resize(raw.probs.size());
  for (std::size_t i = 0; i < raw.probs.size(); ++i) {
    out.instance.probs[i].reserve(m);
    for (std::size_t k : order) out.instance.probs[i].push_back(raw.probs[i][k]);
  }
  return out;
}

void check_instance(const Instance& inst) {
  const NormalizedInstance normalized = validate_instance(to_raw(inst));
  for (std::size_t k = 0; k < normalized.outcome_order.size(); ++k) {
    if (normalized.outcome_order[k] != k) {
      throw ValidationError("instance rewards are not sorted non-decreasingly");
    }
  }
}

void check_contract(const Instance& inst, const Contract& t) {
  if (t.payments.size() != inst.num_outcomes()) {
    throw ValidationError("contract has " + std::to_string(t.payments.size()) +
                          " payments, expected " + std::to_string(inst.num_outcomes()));
  }
  for (std::size_t j = 0; j < t.payments.size(); ++j) {
    if (t.payments[j] < 0) {
      throw ValidationError("negative payment at outcome " + std::to_string(j + 1));
    }
  }
}

Contract induced_payments(const LinearContract& lin, const Instance& inst) {
  Contract out;
  out.payments.reserve(inst.num_outcomes());
  for (const Rational& r : inst.rewards) out.payments.push_back(lin.alpha * r);
  return out;
}

Contract to_normalized(const Contract& original, const std::vector<std::size_t>& outcome_order) {
  if (original.payments.size() != outcome_order.size()) {
    throw ValidationError("contract length does not match the instance");
  }
  Contract out;
  out.payments.reserve(outcome_order.size());
  for (std::size_t k : outcome_order) out.payments.push_back(original.payments[k]);
  return out;
}

Contract to_original(const Contract& normalized, const std::vector<std::size_t>& outcome_order) {
  Contract out;
  out.payments.resize(outcome_order.size());
  for (std::size_t k = 0; k < outcome_order.size(); ++k) {
    out.payments[outcome_order[k]] = normalized.payments[k];
  }
  return out;
}

RawInstance to_raw(const Instance& inst) { return {inst.rewards, inst.costs, inst.probs}; }

}  // namespace seqcontract
