#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "seqcontract/agent.hpp"
#include "seqcontract/correlated.hpp"
#include "seqcontract/model.hpp"
#include "seqcontract/rational.hpp"

namespace seqcontract::testing {

// rewards (0, 1), one action of cost 1/10 hitting either outcome w.p. 1/2.
Instance binary_instance();

Contract payments(std::initializer_list<Rational> values);

// Plays the strategy on every joint realization of all actions (m^n of
// them) and sums the probabilities. Shares no code with the library.
OutcomeDistribution simulate(const Instance& inst, const NonAdaptiveStrategy& s);

// E[(t(X_i) - z)^+], summed term by term.
Rational expected_excess(const Instance& inst, const Contract& t, std::size_t action,
                         const Rational& z);

// Rational in [0, hi] on the grid of multiples of 1/den.
Rational random_grid_value(std::mt19937_64& rng, const Rational& hi, long den);

// Mix of grid payments, linear contracts and payments copied from other
// outcomes, so ties and reward-proportional contracts both show up.
Contract random_contract(const Instance& inst, std::mt19937_64& rng);

// Random joint of 0/1 variables over n actions with up to max_support
// points of positive mass (sum <= 1).
BernoulliJoint random_bernoulli(std::mt19937_64& rng, std::size_t n, std::size_t max_support);

// Random joint of values with distinct values drawn from a pool no larger
// than the support.
ValueJoint random_value_joint(std::mt19937_64& rng, std::size_t n, std::size_t max_support);

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

}  // namespace seqcontract::testing
