#include "support.hpp"

#include <algorithm>

namespace seqcontract::testing {

Instance binary_instance() {
  Instance inst;
  inst.rewards = {Rational(0), Rational(1)};
  inst.costs = {ratio(1, 10)};
  inst.probs = {{ratio(1, 2), ratio(1, 2)}};
  return inst;
}

Contract payments(std::initializer_list<Rational> values) { return Contract{std::vector<Rational>(values)}; }

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

OutcomeDistribution simulate(const Instance& inst, const NonAdaptiveStrategy& s) {
  const std::size_t n = inst.num_actions();
  const std::size_t m = inst.num_outcomes();
  OutcomeDistribution d;
  d.mass.assign(m, Rational(0));
  d.take_probability.assign(n, Rational(0));

  std::vector<std::size_t> realization(n, 0);
  while (true) {
    Rational p = 1;
    for (std::size_t i = 0; i < n; ++i) p *= inst.probs[i][realization[i]];
    if (p != 0) {
      std::size_t preferred = 0;
      for (std::size_t action : s.order) {
        const auto& thr = s.threshold[action];
        if (thr && s.rank[preferred] >= s.rank[*thr]) break;
        d.take_probability[action] += p;
        const std::size_t seen = realization[action];
        if (s.rank[seen] > s.rank[preferred]) preferred = seen;
      }
      d.mass[preferred] += p;
    }
    std::size_t i = 0;
    while (i < n && ++realization[i] == m) realization[i++] = 0;
    if (i == n) break;
  }
  return d;
}

Rational expected_excess(const Instance& inst, const Contract& t, std::size_t action,
                         const Rational& z) {
  Rational sum = 0;
  for (std::size_t j = 0; j < inst.num_outcomes(); ++j) {
    if (t.payments[j] > z) sum += inst.probs[action][j] * (t.payments[j] - z);
  }
  return sum;
}

Rational random_grid_value(std::mt19937_64& rng, const Rational& hi, long den) {
  const Rational steps = hi * den;
  const mpz_class top = steps.get_num() / steps.get_den();
  const auto k = draw(rng, 0, top.get_ui());
  return ratio(static_cast<long>(k), den);
}

Contract random_contract(const Instance& inst, std::mt19937_64& rng) {
  const std::size_t m = inst.num_outcomes();
  const Rational top = inst.rewards.back() + 1;
  Contract t{std::vector<Rational>(m, Rational(0))};
  switch (draw(rng, 0, 3)) {
    case 0: {
      const Rational alpha = ratio(static_cast<long>(draw(rng, 0, 12)), 12);
      for (std::size_t j = 0; j < m; ++j) t.payments[j] = alpha * inst.rewards[j];
      break;
    }
    case 1:
      for (std::size_t j = 0; j < m; ++j) t.payments[j] = random_grid_value(rng, top, 4);
      for (std::size_t j = 0; j < m; ++j) {
        if (draw(rng, 0, 2) == 0) t.payments[j] = t.payments[draw(rng, 0, m - 1)];
      }
      break;
    case 2:
      for (std::size_t j = 0; j < m; ++j) t.payments[j] = random_grid_value(rng, top, 10);
      break;
    default:
      for (std::size_t j = 1; j < m; ++j) t.payments[j] = random_grid_value(rng, top, 2);
      break;
  }
  return t;
}

BernoulliJoint random_bernoulli(std::mt19937_64& rng, std::size_t n, std::size_t max_support) {
  BernoulliJoint joint;
  for (std::size_t i = 0; i < n; ++i) joint.actions.push_back("a" + std::to_string(i + 1));
  const std::size_t size = draw(rng, 1, max_support);
  std::vector<std::uint64_t> weights;
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < size; ++k) {
    ActionSet point = rng() & all_actions(n);
    if (std::find(joint.support.begin(), joint.support.end(), point) != joint.support.end()) continue;
    joint.support.push_back(point);
    weights.push_back(draw(rng, 1, 6));
    total += weights.back();
  }
  // Leave some mass off the listed support half of the time.
  const std::uint64_t scale = total + (draw(rng, 0, 1) == 1 ? draw(rng, 1, 4) : 0);
  for (std::uint64_t w : weights) joint.pdf.push_back(ratio(static_cast<long>(w), static_cast<long>(scale)));
  return joint;
}

ValueJoint random_value_joint(std::mt19937_64& rng, std::size_t n, std::size_t max_support) {
  ValueJoint joint;
  for (std::size_t i = 0; i < n; ++i) joint.actions.push_back("x" + std::to_string(i + 1));
  const std::size_t size = draw(rng, 1, max_support);
  std::vector<Rational> pool{Rational(0)};
  while (pool.size() < size) pool.push_back(ratio(static_cast<long>(draw(rng, 1, 12)), 2));
  std::vector<std::uint64_t> weights;
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < size; ++k) {
    std::vector<Rational> point;
    for (std::size_t i = 0; i < n; ++i) point.push_back(pool[draw(rng, 0, pool.size() - 1)]);
    joint.support.push_back(std::move(point));
    weights.push_back(draw(rng, 1, 5));
    total += weights.back();
  }
  for (std::uint64_t w : weights) joint.pdf.push_back(ratio(static_cast<long>(w), static_cast<long>(total)));
  return joint;
}

}  // namespace seqcontract::testing
