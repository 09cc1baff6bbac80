#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "seqcontract/agent.hpp"
#include "seqcontract/model.hpp"
#include "seqcontract/rational.hpp"

namespace seqcontract {

struct Segment {
  Rational start;
  std::optional<Rational> end;  // exclusive; empty means +infinity
  Rational slope;
  Rational intercept;
};

// z_i(alpha) for the linear contract alpha * r. Convex, continuous, one
// segment per distinct suffix of outcomes that can sit above z.
struct PiecewiseLinearFn {
  bool infinite = false;  // free action: z == +infinity everywhere
  std::vector<Segment> segments;

  ExtendedRational operator()(const Rational& alpha) const;
};

PiecewiseLinearFn reservation_pwl(const Instance& inst, std::size_t action);

// 0, 1 and every alpha in [0, 1] where two reservation functions meet or a
// reservation function meets a payment line alpha * r(j). Sorted, distinct.
std::vector<Rational> candidate_alphas(const Instance& inst);

struct CandidateValue {
  Rational alpha;
  Rational utility;
  NonAdaptiveStrategy strategy;
  OutcomeDistribution distribution;
};

struct LinearSolution {
  Rational alpha;
  Rational utility;
  NonAdaptiveStrategy strategy;
  std::vector<CandidateValue> candidates;
};

// Maximizes principal utility over the candidates; smallest alpha on ties.
LinearSolution solve_linear(const Instance& inst);

// Number of consecutive candidate pairs whose best responses differ in
// final-outcome distribution or take probabilities.
std::size_t count_response_changes(const LinearSolution& solution);

}  // namespace seqcontract
