#include <doctest.h>

#include <random>

#include "seqcontract/agent.hpp"
#include "seqcontract/generators.hpp"
#include "seqcontract/oracle.hpp"
#include "support.hpp"

using namespace seqcontract;
using namespace seqcontract::testing;

TEST_CASE("reservation values on the binary instance") {
  const Instance inst = binary_instance();
  CHECK(reservation_value(inst, payments({0, ratio(2, 5)}), 0) == ExtendedRational(ratio(1, 5)));
  // Both outcomes pay 0 > z, so the whole mass counts: -z = 1/10.
  CHECK(reservation_value(inst, payments({0, 0}), 0) == ExtendedRational(ratio(-1, 10)));

  Instance free = inst;
  free.costs[0] = 0;
  CHECK(reservation_value(free, payments({0, ratio(2, 5)}), 0).is_infinite());
}

TEST_CASE("reservation values satisfy the fixed point and prefix rule") {
  std::mt19937_64 rng(5);
  int finite = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const Instance inst = gen_random_instance(1 + seed % 4, 1 + seed % 5, seed);
    const Contract t = random_contract(inst, rng);
    for (std::size_t i = 0; i < inst.num_actions(); ++i) {
      const ReservationDetail d = reservation_detail(inst, t, i);
      if (d.value.is_infinite()) {
        CHECK(inst.costs[i] == 0);
        continue;
      }
      ++finite;
      CHECK(expected_excess(inst, t, i, d.value.value()) == inst.costs[i]);
      for (std::size_t j = 0; j < inst.num_outcomes(); ++j) {
        const bool listed = std::find(d.above.begin(), d.above.end(), j) != d.above.end();
        CHECK(listed == (t.payments[j] > d.value.value()));
      }
    }
  }
  CHECK(finite > 100);
}

TEST_CASE("weitzman strategy on the binary instance") {
  const Instance inst = binary_instance();
  SUBCASE("acts and keeps the paid outcome") {
    const Contract t = payments({0, ratio(2, 5)});
    const NonAdaptiveStrategy s = weitzman_strategy(inst, t);
    CHECK(s.order == std::vector<std::size_t>{0});
    CHECK(s.rank == std::vector<std::size_t>{0, 1});
    // z = 1/5: the zero outcome (paying 0) does not stop the agent; outcome 1
    // (paying 2/5) would.
    REQUIRE(s.threshold[0].has_value());
    CHECK(*s.threshold[0] == 1);
    const OutcomeDistribution d = outcome_distribution(inst, s);
    CHECK(d.mass == std::vector<Rational>{ratio(1, 2), ratio(1, 2)});
    CHECK(d.take_probability == std::vector<Rational>{1});
    CHECK(agent_utility(inst, t, s) == ratio(1, 10));
    CHECK(principal_utility_for(inst, t, s) == ratio(3, 10));
  }
  SUBCASE("zero contract halts at once") {
    const Contract t = payments({0, 0});
    const OutcomeDistribution d = outcome_distribution(inst, weitzman_strategy(inst, t));
    CHECK(d.mass == std::vector<Rational>{1, 0});
    CHECK(d.take_probability == std::vector<Rational>{0});
  }
}

TEST_CASE("weitzman strategy on the two-action critical-point instance") {
  const Instance inst = gen_critpoints_instance(3);
  const Contract t = induced_payments({ratio(1, 6)}, inst);
  CHECK(reservation_value(inst, t, 1) == ExtendedRational(Rational(0)));
  const NonAdaptiveStrategy s = weitzman_strategy(inst, t);
  CHECK(s.order == std::vector<std::size_t>{0, 1});
  CHECK(!s.threshold[0].has_value());
  REQUIRE(s.threshold[1].has_value());
  CHECK(*s.threshold[1] == 1);

  const OutcomeDistribution d = outcome_distribution(inst, s);
  CHECK(d.take_probability == std::vector<Rational>{1, ratio(1, 3)});
  Rational reward = 0;
  for (std::size_t j = 0; j < 3; ++j) reward += d.mass[j] * inst.rewards[j];
  CHECK(reward == ratio(4, 3));
  CHECK(principal_utility(inst, t).principal_utility == ratio(10, 9));
}

TEST_CASE("outcome distribution matches full enumeration of realizations") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const std::size_t m = 1 + (seed / 3) % 4;
    const Instance inst = gen_random_instance(n, m, seed);
    const std::uint64_t id = rng() % strategy_count(n, m);
    const NonAdaptiveStrategy s = decode_strategy(id, n, m);
    const OutcomeDistribution fast = outcome_distribution(inst, s);
    const OutcomeDistribution slow = simulate(inst, s);
    CHECK(fast.mass == slow.mass);
    CHECK(fast.take_probability == slow.take_probability);
    Rational total = 0;
    for (const Rational& x : fast.mass) total += x;
    CHECK(total == 1);
  }
}

TEST_CASE("idle strategy only transfers the zero-outcome payment") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = gen_random_instance(3, 3, seed);
    const NonAdaptiveStrategy s = idle_strategy(inst);
    const OutcomeDistribution d = outcome_distribution(inst, s);
    CHECK(d.mass[0] == 1);
    const Contract t = random_contract(inst, rng);
    CHECK(agent_utility(inst, t, s) == t.payments[0]);
    CHECK(principal_utility_for(inst, t, s) == -t.payments[0]);
  }
}

TEST_CASE("tiebreak contract examples") {
  const Instance inst = binary_instance();
  const Contract t = payments({0, ratio(1, 5)});
  CHECK(tiebreak_epsilon(inst, t) == ratio(1, 27));
  CHECK(tiebreak_contract(inst, t).payments ==
        std::vector<Rational>{0, ratio(1, 5) + ratio(4, 5) * ratio(1, 27)});

  const Contract full = payments({0, 1});
  CHECK(tiebreak_contract(inst, full) == full);

  const Contract zero = payments({0, 0});
  const Rational eps = tiebreak_epsilon(inst, zero);
  CHECK(eps > 0);
  CHECK(tiebreak_contract(inst, zero).payments == std::vector<Rational>{0, eps});
  // z moves from -1/5 but stays below both payments.
  CHECK(reservation_value(inst, tiebreak_contract(inst, zero), 0) < ExtendedRational(Rational(0)));
}

TEST_CASE("principal utility favors the principal on ties") {
  const Instance inst = binary_instance();
  const BestResponse indifferent = principal_utility(inst, payments({0, ratio(1, 5)}));
  CHECK(indifferent.principal_utility == ratio(2, 5));
  CHECK(indifferent.agent_utility == 0);
  CHECK(principal_utility(inst, payments({0, 1})).principal_utility == 0);
}

TEST_CASE("perturbing payments by delta moves reservation values by at most delta") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 200; ++k) {
    const Instance inst = gen_random_instance(1 + rng() % 4, 2 + rng() % 3, rng());
    const Contract t = random_contract(inst, rng);
    const Rational delta = ratio(static_cast<long>(1 + rng() % 10), 40);
    Contract moved = t;
    for (Rational& x : moved.payments) {
      x += delta * ratio(static_cast<long>(rng() % 21) - 10, 10);
      if (x < 0) x = 0;
    }
    for (std::size_t i = 0; i < inst.num_actions(); ++i) {
      const ExtendedRational a = reservation_value(inst, t, i);
      const ExtendedRational b = reservation_value(inst, moved, i);
      if (a.is_infinite()) {
        CHECK(b.is_infinite());
        continue;
      }
      CHECK(abs(Rational(a.value() - b.value())) <= delta);
    }
  }
}

TEST_CASE("agent utility under the perturbed contract splits into both utilities") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng() % 3;
    const std::size_t m = 1 + rng() % 4;
    const Instance inst = gen_random_instance(n, m, rng());
    const Contract t = random_contract(inst, rng);
    const Rational eps = ratio(static_cast<long>(1 + rng() % 9), 10);
    const NonAdaptiveStrategy s = decode_strategy(rng() % strategy_count(n, m), n, m);
    const Contract moved = perturb_toward_rewards(inst, t, eps);
    CHECK(agent_utility(inst, moved, s) ==
          eps * principal_utility_for(inst, t, s) + agent_utility(inst, t, s));
  }
}

TEST_CASE("weitzman preference order sorts outcomes by payment") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = gen_random_instance(2, 1 + rng() % 5, rng());
    const Contract t = random_contract(inst, rng);
    const NonAdaptiveStrategy s = weitzman_strategy(inst, t);
    for (std::size_t a = 0; a < t.payments.size(); ++a) {
      for (std::size_t b = 0; b < t.payments.size(); ++b) {
        if (t.payments[a] < t.payments[b]) CHECK(s.rank[a] < s.rank[b]);
      }
    }
  }
}

TEST_CASE("weitzman order is non-increasing in reservation value") {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 100; ++k) {
    const Instance inst = gen_random_instance(1 + rng() % 4, 1 + rng() % 4, rng());
    const Contract t = random_contract(inst, rng);
    const std::vector<ExtendedRational> z = reservation_values(inst, t);
    const NonAdaptiveStrategy s = weitzman_strategy(inst, t);
    for (std::size_t k2 = 1; k2 < s.order.size(); ++k2) CHECK(z[s.order[k2 - 1]] >= z[s.order[k2]]);
  }
}
