#include <doctest.h>

#include <set>

#include "seqcontract/agent.hpp"
#include "seqcontract/errors.hpp"
#include "seqcontract/generators.hpp"
#include "seqcontract/oracle.hpp"

using namespace seqcontract;

namespace {

const Rational kResidualBound = ratio(1, 1'000'000'000'000'000'000L);

std::vector<Rational> yes_multiset() { return {ratio(1, 20), ratio(1, 20), ratio(1, 25), ratio(3, 50)}; }
std::vector<Rational> no_multiset() { return {ratio(2, 25), ratio(1, 20), ratio(1, 25), ratio(3, 100)}; }

std::vector<bool> subset_flags(unsigned mask, std::size_t k) {
  std::vector<bool> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = ((mask >> i) & 1U) != 0;
  return out;
}

Rational subset_sum(const std::vector<Rational>& a, unsigned mask) {
  Rational x = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((mask >> i) & 1U) x += a[i];
  }
  return x;
}

}  // namespace

TEST_CASE("partition parameters") {
  const PartitionParams p = partition_params(yes_multiset());
  CHECK(p.epsilon == ratio(1, 2500));
  CHECK(abs(p.residual) <= kResidualBound);
  CHECK(p.residual == partition_quadratic(p.epsilon, p.q));
  CHECK(p.q > ratio(21615, 100000));
  CHECK(p.q < ratio(21617, 100000));
  CHECK(p.c == p.epsilon * p.q / 10);

  CHECK_THROWS_AS(partition_params({ratio(1, 10), ratio(1, 20)}), ValidationError);
  CHECK_THROWS_AS(partition_params({ratio(1, 4), ratio(-1, 20)}), ValidationError);
}

TEST_CASE("partition reduction instance") {
  const PartitionParams p = partition_params(yes_multiset());
  const Instance inst = gen_partition_reduction(p);
  REQUIRE(inst.num_outcomes() == 6);
  REQUIRE(inst.num_actions() == 3);
  CHECK_NOTHROW(check_instance(inst));
  CHECK(inst.rewards == std::vector<Rational>{0, 0, 0, 0, 0, 1});
  CHECK(inst.costs == std::vector<Rational>{0, 0, p.c});
  CHECK(inst.probs[0] == std::vector<Rational>{p.epsilon, 0, 0, 0, 0, 1 - p.epsilon});
  CHECK(inst.probs[1] ==
        std::vector<Rational>{ratio(4, 5), ratio(1, 20), ratio(1, 20), ratio(1, 25), ratio(3, 50), 0});
  CHECK(inst.probs[2] == std::vector<Rational>{ratio(4, 5) - p.q, ratio(1, 20), ratio(1, 20),
                                               ratio(1, 25), ratio(3, 50), p.q});
}

TEST_CASE("equal-spread contracts") {
  const PartitionParams p = partition_params(yes_multiset());
  const Contract empty = equal_spread_contract(p, subset_flags(0, 4));
  CHECK(empty.payments == std::vector<Rational>{0, 0, 0, 0, 0, p.c / p.q});

  const Contract full = equal_spread_contract(p, subset_flags(0b1111, 4));
  const Rational pay = p.c / (p.q + ratio(1, 5));
  CHECK(full.payments == std::vector<Rational>{0, pay, pay, pay, pay, pay});

  const Instance inst = gen_partition_reduction(p);
  for (unsigned mask = 0; mask < 16; ++mask) {
    CAPTURE(mask);
    const Contract t = equal_spread_contract(p, subset_flags(mask, 4));
    CHECK(principal_utility(inst, t).principal_utility ==
          equal_spread_utility(p, subset_sum(p.a, mask)));
  }
}

TEST_CASE("x = 1/10 uniquely maximizes the equal-spread utility") {
  const PartitionParams p = partition_params(yes_multiset());
  const Rational best = equal_spread_utility(p, ratio(1, 10));
  CHECK(best > 1 - p.epsilon);
  for (long k = 0; k <= 1000; ++k) {
    if (k == 500) continue;
    CHECK(equal_spread_utility(p, ratio(k, 5000)) < best);
  }
}

TEST_CASE("partition yes and no multisets separate") {
  const PartitionParams yes = partition_params(yes_multiset());
  const Rational yes_best = equal_spread_utility(yes, ratio(1, 10));
  for (unsigned mask = 0; mask < 16; ++mask) {
    const Rational x = subset_sum(yes.a, mask);
    if (x == ratio(1, 10)) {
      CHECK(equal_spread_utility(yes, x) == yes_best);
    } else {
      CHECK(equal_spread_utility(yes, x) < yes_best);
    }
  }
  const PartitionParams no = partition_params(no_multiset());
  const Rational no_target = equal_spread_utility(no, ratio(1, 10));
  for (unsigned mask = 0; mask < 16; ++mask) {
    CHECK(subset_sum(no.a, mask) != ratio(1, 10));
    CHECK(equal_spread_utility(no, subset_sum(no.a, mask)) < no_target);
  }
}

TEST_CASE("gap instance") {
  const Instance two = gen_gap_instance(2);
  CHECK(two.costs == std::vector<Rational>{ratio(1, 8), ratio(1, 4)});
  CHECK(two.rewards == std::vector<Rational>{0, 1, 1});
  for (std::size_t n : {1, 3, 6, 10}) {
    const Instance inst = gen_gap_instance(n);
    CHECK_NOTHROW(check_instance(inst));
    const Rational eps = ratio(1, 100);
    const Contract t = gap_general_contract(eps);
    CHECK(t.payments == std::vector<Rational>{0, 1, eps});
    Rational pow2 = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      pow2 /= 2;
      CHECK(reservation_value(inst, t, i - 1) == ExtendedRational(eps * static_cast<long>(i) * pow2));
    }
  }
}

TEST_CASE("critical-point instance") {
  const Instance three = gen_critpoints_instance(3);
  CHECK(three.rewards == std::vector<Rational>{0, 1, 2});
  CHECK(three.costs == std::vector<Rational>{0, ratio(1, 6)});
  CHECK(three.probs[1] == std::vector<Rational>(3, ratio(1, 3)));
  for (std::size_t m : {2, 3, 5, 10, 20}) {
    const Instance inst = gen_critpoints_instance(m);
    CHECK_NOTHROW(check_instance(inst));
    const Contract full{inst.rewards};
    const Contract zero{std::vector<Rational>(m, 0)};
    CHECK(reservation_value(inst, full, 1) > ExtendedRational(Rational(static_cast<long>(m) - 2)));
    CHECK(reservation_value(inst, zero, 1) < ExtendedRational(Rational(0)));
  }
}

TEST_CASE("superpolynomial family") {
  const SuperpolyInstance s = gen_superpoly_instance(4, 3);
  CHECK(s.ell == 2);
  CHECK(s.dummy_actions == 0);
  CHECK(s.instance.rewards == std::vector<Rational>{0, 4, 8});
  CHECK_NOTHROW(check_instance(s.instance));
  REQUIRE(s.labels.size() == 4);
  std::set<std::pair<std::size_t, std::size_t>> labels(s.labels.begin(), s.labels.end());
  CHECK(labels.size() == 4);
  for (std::size_t a = 0; a < 4; ++a) {
    const auto [j, i] = s.labels[a];
    const Rational r = s.instance.rewards[j - 1];
    CHECK(s.instance.costs[a] == r * static_cast<long>(i));
    CHECK(s.instance.probs[a][0] == ratio(1, 2));
    CHECK(s.instance.probs[a][j - 1] == ratio(1, 2));
  }
  CHECK(superpoly_value_contract(s, {1, 2}).payments == std::vector<Rational>{0, 9, 36});

  const SuperpolyInstance padded = gen_superpoly_instance(5, 3);
  CHECK(padded.ell == 2);
  CHECK(padded.dummy_actions == 1);
  CHECK(padded.instance.costs.back() == 1);
  CHECK(padded.instance.probs.back() == std::vector<Rational>{1, 0, 0});

  CHECK_THROWS_AS(gen_superpoly_instance(4, 1), ValidationError);
  CHECK_THROWS_AS(gen_superpoly_instance(2, 4), ValidationError);
}

TEST_CASE("superpolynomial contracts induce distinct best responses") {
  const SuperpolyInstance s = gen_superpoly_instance(4, 3);
  std::set<std::vector<bool>> taken;
  for (std::size_t v1 = 1; v1 <= 2; ++v1) {
    for (std::size_t v2 = 1; v2 <= 2; ++v2) {
      const OracleReport r = oracle_best_response(s.instance, superpoly_value_contract(s, {v1, v2}));
      const OutcomeDistribution d = outcome_distribution(s.instance, r.chosen);
      std::vector<bool> positive;
      for (const Rational& p : d.take_probability) positive.push_back(p > 0);
      taken.insert(positive);
    }
  }
  CHECK(taken.size() == 4);
}

TEST_CASE("random instances") {
  CHECK(gen_random_instance(2, 2, 1) == gen_random_instance(2, 2, 1));
  CHECK(gen_random_instance(3, 4, 7) != gen_random_instance(3, 4, 8));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = gen_random_instance(1 + seed % 4, 1 + seed % 5, seed);
    CHECK_NOTHROW(check_instance(inst));
    CHECK(inst.rewards.front() == 0);
    CHECK(std::is_sorted(inst.rewards.begin(), inst.rewards.end()));
    for (const auto& row : inst.probs) {
      Rational sum = 0;
      for (const Rational& p : row) sum += p;
      CHECK(sum == 1);
    }
  }
}
