#include "seqcontract/generators.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "seqcontract/errors.hpp"

namespace seqcontract {
namespace {

Rational pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(1 / Rational(p)) : Rational(p);
}

Rational ipow(std::size_t base, std::size_t e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, e);
  return Rational(p);
}

}  // namespace

Rational partition_quadratic(const Rational& epsilon, const Rational& q) {
  return q * q * (-10 + epsilon) + q * (-2 - ratio(4, 5) * epsilon) + ratio(9, 10) -
         ratio(99, 100) * epsilon;
}

PartitionParams partition_params(const std::vector<Rational>& a) {
  if (a.empty()) throw ValidationError("partition: need at least one number");
  Rational sum = 0;
  for (const Rational& x : a) {
    if (x <= 0 || x >= 1) throw ValidationError("partition: numbers must lie in (0, 1)");
    sum += x;
  }
  if (sum != ratio(1, 5)) {
    throw ValidationError("partition: numbers sum to " + format_rational(sum) + ", expected 1/5");
  }
  PartitionParams params;
  params.a = a;
  params.epsilon = *std::min_element(a.begin(), a.end()) / 100;

  // The quadratic is positive at 0 and negative at 1/4; bisect on dyadics.
  const Rational tolerance = ratio(1, 1'000'000'000) / 1'000'000'000;
  Rational lo = 0;
  Rational hi = ratio(1, 4);
  Rational mid = (lo + hi) / 2;
  Rational value = partition_quadratic(params.epsilon, mid);
  while (abs(value) > tolerance) {
    if (value > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = (lo + hi) / 2;
    value = partition_quadratic(params.epsilon, mid);
  }
  params.q = mid;
  params.residual = value;
  params.c = params.epsilon * params.q / 10;
  return params;
}

Instance gen_partition_reduction(const PartitionParams& params) {
  const std::size_t k = params.a.size();
  const std::size_t m = k + 2;
  Instance inst;
  inst.rewards.assign(m, Rational(0));
  inst.rewards[k + 1] = 1;
  inst.costs = {Rational(0), Rational(0), params.c};

  std::vector<Rational> first(m, Rational(0));
  first[0] = params.epsilon;
  first[k + 1] = 1 - params.epsilon;

  std::vector<Rational> second(m, Rational(0));
  second[0] = ratio(4, 5);
  for (std::size_t j = 0; j < k; ++j) second[j + 1] = params.a[j];

  std::vector<Rational> third = second;
  third[0] = ratio(4, 5) - params.q;
  third[k + 1] = params.q;

  inst.probs = {std::move(first), std::move(second), std::move(third)};
  return inst;
}

Contract equal_spread_contract(const PartitionParams& params, const std::vector<bool>& in_set) {
  const std::size_t k = params.a.size();
  Rational x = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (in_set[j]) x += params.a[j];
  }
  const Rational pay = params.c / (params.q + x);
  Contract t{std::vector<Rational>(k + 2, Rational(0))};
  for (std::size_t j = 0; j < k; ++j) {
    if (in_set[j]) t.payments[j + 1] = pay;
  }
  t.payments[k + 1] = pay;
  return t;
}

Rational equal_spread_utility(const PartitionParams& params, const Rational& x) {
  const Rational& eps = params.epsilon;
  const Rational& q = params.q;
  return 1 - eps + eps * (1 - x) * q - (1 - eps * (1 - x) * (1 - x - q)) * params.c / (x + q);
}

Instance gen_gap_instance(std::size_t n) {
  if (n == 0) throw ValidationError("gap instance: n must be positive");
  Instance inst;
  inst.rewards = {Rational(0), Rational(1), Rational(1)};
  const Rational scale = pow2(-static_cast<long>(n + 1));
  for (std::size_t i = 1; i <= n; ++i) {
    const Rational cost = (pow2(static_cast<long>(i)) - static_cast<long>(i)) * scale;
    const Rational top = pow2(static_cast<long>(i) - static_cast<long>(n) - 1);
    inst.costs.push_back(cost);
    inst.probs.push_back({1 - top, cost, top - cost});
  }
  return inst;
}

Contract gap_general_contract(const Rational& eps) {
  return Contract{{Rational(0), Rational(1), eps}};
}

Instance gen_critpoints_instance(std::size_t m) {
  if (m < 2) throw ValidationError("critical-point instance: m must be at least 2");
  Instance inst;
  for (std::size_t j = 0; j < m; ++j) inst.rewards.emplace_back(static_cast<long>(j));
  const Rational uniform = ratio(1, static_cast<long>(m));
  inst.costs = {Rational(0), ratio(1, 2 * static_cast<long>(m))};
  inst.probs.assign(2, std::vector<Rational>(m, uniform));
  return inst;
}

SuperpolyInstance gen_superpoly_instance(std::size_t n, std::size_t m) {
  if (m < 2) throw ValidationError("superpolynomial family: m must be at least 2");
  if (n < m - 1) throw ValidationError("superpolynomial family: need n >= m - 1");
  SuperpolyInstance out;
  out.ell = n / (m - 1);
  out.dummy_actions = n - out.ell * (m - 1);

  Instance& inst = out.instance;
  inst.rewards.push_back(Rational(0));
  for (std::size_t j = 2; j <= m; ++j) inst.rewards.push_back(ipow(out.ell, j));
  for (std::size_t j = 2; j <= m; ++j) {
    for (std::size_t i = 1; i <= out.ell; ++i) {
      inst.costs.push_back(static_cast<long>(i) * inst.rewards[j - 1]);
      std::vector<Rational> row(m, Rational(0));
      row[0] = ratio(1, 2);
      row[j - 1] = ratio(1, 2);
      inst.probs.push_back(std::move(row));
      out.labels.emplace_back(j, i);
    }
  }
  for (std::size_t d = 0; d < out.dummy_actions; ++d) {
    inst.costs.push_back(Rational(1));
    std::vector<Rational> row(m, Rational(0));
    row[0] = 1;
    inst.probs.push_back(std::move(row));
  }
  return out;
}

Contract superpoly_value_contract(const SuperpolyInstance& s, const std::vector<std::size_t>& v) {
  const std::size_t m = s.instance.num_outcomes();
  if (v.size() != m - 1) throw ValidationError("t_v needs one level per outcome 2..m");
  const Rational factor = 2 + ratio(1, 2 * static_cast<long>(s.ell));
  Contract t{{Rational(0)}};
  for (std::size_t j = 2; j <= m; ++j) {
    const std::size_t level = v[j - 2];
    if (level < 1 || level > s.ell) throw ValidationError("t_v levels must lie in 1..ell");
    t.payments.push_back(factor * s.instance.rewards[j - 1] * static_cast<long>(level));
  }
  return t;
}

Contract superpoly_order_contract(const SuperpolyInstance& s, const std::vector<std::size_t>& rho) {
  const std::size_t m = s.instance.num_outcomes();
  if (rho.size() != m - 1) throw ValidationError("t_rho needs a bijection onto outcomes 2..m");
  std::vector<std::size_t> position(m + 1, 0);
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (rho[k] < 2 || rho[k] > m || position[rho[k]] != 0) {
      throw ValidationError("t_rho needs a bijection onto outcomes 2..m");
    }
    position[rho[k]] = k + 1;
  }
  Contract t{{Rational(0)}};
  for (std::size_t j = 2; j <= m; ++j) {
    t.payments.push_back(static_cast<long>(position[j]) + 2 * s.instance.rewards[j - 1]);
  }
  return t;
}

Instance gen_random_instance(std::size_t n, std::size_t m, std::uint64_t seed,
                             const RandomInstanceOptions& options) {
  if (n == 0 || m == 0) throw ValidationError("random instance: n and m must be positive");
  // Plain modulo keeps the stream identical across standard libraries.
  std::mt19937_64 rng(seed);
  auto draw = [&](std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(rng() % span);
  };

  Instance inst;
  inst.rewards.emplace_back(0);
  std::vector<std::int64_t> rewards;
  for (std::size_t j = 1; j < m; ++j) rewards.push_back(draw(0, options.max_reward));
  std::sort(rewards.begin(), rewards.end());
  for (std::int64_t r : rewards) inst.rewards.emplace_back(static_cast<long>(r));

  for (std::size_t i = 0; i < n; ++i) {
    if (rng() % options.zero_cost_one_in == 0) {
      inst.costs.emplace_back(0);
    } else {
      inst.costs.push_back(ratio(static_cast<long>(draw(1, options.max_cost_numerator)),
                                 static_cast<long>(options.cost_denominator)));
    }
    std::vector<std::int64_t> weights;
    std::int64_t total = 0;
    for (std::size_t j = 0; j < m; ++j) {
      weights.push_back(draw(0, options.prob_grain));
      total += weights.back();
    }
    if (total == 0) {
      weights[static_cast<std::size_t>(draw(0, static_cast<std::int64_t>(m) - 1))] = 1;
      total = 1;
    }
    std::vector<Rational> row;
    for (std::int64_t w : weights) row.push_back(ratio(static_cast<long>(w), static_cast<long>(total)));
    inst.probs.push_back(std::move(row));
  }
  return inst;
}

}  // namespace seqcontract
