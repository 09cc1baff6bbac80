#include "seqcontract/agent.hpp"

#include <algorithm>
#include <numeric>

namespace seqcontract {

ReservationDetail reservation_detail(const Instance& inst, const Contract& t, std::size_t action) {
  const Rational& cost = inst.costs[action];
  if (cost == 0) return {ExtendedRational::infinity(), {}};

  const std::vector<Rational>& p = inst.probs[action];
  const std::size_t m = inst.num_outcomes();
  std::vector<std::size_t> by_payment(m);
  std::iota(by_payment.begin(), by_payment.end(), std::size_t{0});
  std::stable_sort(by_payment.begin(), by_payment.end(), [&](std::size_t a, std::size_t b) {
    return t.payments[a] > t.payments[b];
  });

  // Walk distinct payment levels from the top. The solution set
  // {j : t(j) > z} is a prefix of levels; the right prefix is the one whose
  // candidate z lies in [next level, current level).
  Rational mass = 0;
  Rational weighted = 0;
  std::size_t k = 0;
  while (k < m) {
    const Rational level = t.payments[by_payment[k]];
    std::size_t end = k;
    while (end < m && t.payments[by_payment[end]] == level) {
      mass += p[by_payment[end]];
      weighted += p[by_payment[end]] * t.payments[by_payment[end]];
      ++end;
    }
    if (mass > 0) {
      Rational z = (weighted - cost) / mass;
      const bool below_level = z < level;
      const bool above_next = end == m || z >= t.payments[by_payment[end]];
      if (below_level && above_next) {
        std::vector<std::size_t> above(by_payment.begin(), by_payment.begin() + end);
        std::sort(above.begin(), above.end());
        return {ExtendedRational(std::move(z)), std::move(above)};
      }
    }
    k = end;
  }
  return {ExtendedRational::infinity(), {}};
}

ExtendedRational reservation_value(const Instance& inst, const Contract& t, std::size_t action) {
  return reservation_detail(inst, t, action).value;
}

std::vector<ExtendedRational> reservation_values(const Instance& inst, const Contract& t) {
  std::vector<ExtendedRational> out;
  out.reserve(inst.num_actions());
  for (std::size_t i = 0; i < inst.num_actions(); ++i) out.push_back(reservation_value(inst, t, i));
  return out;
}

namespace {

NonAdaptiveStrategy weitzman_from(const Instance& inst, const Contract& t,
                                  const std::vector<ExtendedRational>& z) {
  const std::size_t n = inst.num_actions();
  const std::size_t m = inst.num_outcomes();
  NonAdaptiveStrategy s;

  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), std::size_t{0});
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](std::size_t a, std::size_t b) { return z[a] > z[b]; });

  std::vector<std::size_t> ascending(m);
  std::iota(ascending.begin(), ascending.end(), std::size_t{0});
  std::stable_sort(ascending.begin(), ascending.end(), [&](std::size_t a, std::size_t b) {
    return t.payments[a] < t.payments[b];
  });
  s.rank.resize(m);
  for (std::size_t r = 0; r < m; ++r) s.rank[ascending[r]] = r;

  // Halt before action i exactly when the best revealed payment exceeds z_i;
  // the threshold is the lowest-ranked outcome paying more than z_i.
  s.threshold.assign(n, std::nullopt);
  for (std::size_t i = 0; i < n; ++i) {
    if (z[i].is_infinite()) continue;
    for (std::size_t outcome : ascending) {
      if (t.payments[outcome] > z[i].value()) {
        s.threshold[i] = outcome;
        break;
      }
    }
  }
  return s;
}

}  // namespace

NonAdaptiveStrategy weitzman_strategy(const Instance& inst, const Contract& t) {
  return weitzman_from(inst, t, reservation_values(inst, t));
}

NonAdaptiveStrategy idle_strategy(const Instance& inst) {
  const std::size_t n = inst.num_actions();
  const std::size_t m = inst.num_outcomes();
  NonAdaptiveStrategy s;
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), std::size_t{0});
  s.rank.resize(m);
  std::iota(s.rank.begin(), s.rank.end(), std::size_t{0});
  s.threshold.assign(n, std::optional<std::size_t>{0});
  return s;
}

OutcomeDistribution outcome_distribution(const Instance& inst, const NonAdaptiveStrategy& s) {
  const std::size_t n = inst.num_actions();
  const std::size_t m = inst.num_outcomes();
  std::vector<Rational> active(m, Rational(0));
  std::vector<Rational> halted(m, Rational(0));
  std::vector<Rational> next(m, Rational(0));
  active[0] = 1;

  OutcomeDistribution out;
  out.take_probability.assign(n, Rational(0));
  for (std::size_t action : s.order) {
    if (const auto& thr = s.threshold[action]) {
      const std::size_t bar = s.rank[*thr];
      for (std::size_t j = 0; j < m; ++j) {
        if (active[j] != 0 && s.rank[j] >= bar) {
          halted[j] += active[j];
          active[j] = 0;
        }
      }
    }
    Rational taken = 0;
    for (const Rational& a : active) taken += a;
    if (taken == 0) break;
    out.take_probability[action] = taken;

    std::fill(next.begin(), next.end(), Rational(0));
    const std::vector<Rational>& p = inst.probs[action];
    for (std::size_t j = 0; j < m; ++j) {
      if (active[j] == 0) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (p[k] == 0) continue;
        next[s.rank[k] > s.rank[j] ? k : j] += active[j] * p[k];
      }
    }
    active.swap(next);
  }

  out.mass.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.mass[j] = active[j] + halted[j];
  return out;
}

Rational agent_utility(const Instance& inst, const Contract& t, const OutcomeDistribution& d) {
  Rational u = 0;
  for (std::size_t j = 0; j < d.mass.size(); ++j) u += d.mass[j] * t.payments[j];
  for (std::size_t i = 0; i < d.take_probability.size(); ++i) {
    u -= d.take_probability[i] * inst.costs[i];
  }
  return u;
}

Rational agent_utility(const Instance& inst, const Contract& t, const NonAdaptiveStrategy& s) {
  return agent_utility(inst, t, outcome_distribution(inst, s));
}

Rational principal_utility_for(const Instance& inst, const Contract& t,
                               const OutcomeDistribution& d) {
  Rational u = 0;
  for (std::size_t j = 0; j < d.mass.size(); ++j) u += d.mass[j] * (inst.rewards[j] - t.payments[j]);
  return u;
}

Rational principal_utility_for(const Instance& inst, const Contract& t,
                               const NonAdaptiveStrategy& s) {
  return principal_utility_for(inst, t, outcome_distribution(inst, s));
}

Rational tiebreak_epsilon(const Instance& inst, const Contract& t) {
  const std::size_t m = inst.num_outcomes();
  const std::vector<ExtendedRational> z = reservation_values(inst, t);

  std::optional<Rational> min_gap;
  auto consider = [&](const Rational& a, const Rational& b) {
    Rational gap = abs(Rational(a - b));
    if (gap > 0 && (!min_gap || gap < *min_gap)) min_gap = std::move(gap);
  };
  for (std::size_t a = 0; a < z.size(); ++a) {
    if (z[a].is_infinite()) continue;
    for (std::size_t b = a + 1; b < z.size(); ++b) {
      if (z[b].is_finite()) consider(z[a].value(), z[b].value());
    }
    for (std::size_t j = 0; j < m; ++j) consider(t.payments[j], z[a].value());
  }
  for (std::size_t j1 = 0; j1 < m; ++j1) {
    for (std::size_t j2 = j1 + 1; j2 < m; ++j2) consider(t.payments[j1], t.payments[j2]);
  }

  Rational spread = 0;
  for (std::size_t j = 0; j < m; ++j) spread = std::max(spread, abs(Rational(inst.rewards[j] - t.payments[j])));

  const Rational delta = min_gap ? Rational(*min_gap / 3) : Rational(1);
  Rational eps = delta / (1 + spread);
  if (eps > 1) eps = 1;
  return eps;
}

Contract perturb_toward_rewards(const Instance& inst, const Contract& t, const Rational& epsilon) {
  Contract out;
  out.payments.reserve(t.payments.size());
  for (std::size_t j = 0; j < t.payments.size(); ++j) {
    out.payments.push_back(t.payments[j] + epsilon * (inst.rewards[j] - t.payments[j]));
  }
  return out;
}

Contract tiebreak_contract(const Instance& inst, const Contract& t) {
  return perturb_toward_rewards(inst, t, tiebreak_epsilon(inst, t));
}

BestResponse principal_utility(const Instance& inst, const Contract& t) {
  const Contract perturbed = tiebreak_contract(inst, t);
  BestResponse out;
  out.strategy = weitzman_strategy(inst, perturbed);
  out.distribution = outcome_distribution(inst, out.strategy);
  out.principal_utility = principal_utility_for(inst, t, out.distribution);
  out.agent_utility = agent_utility(inst, t, out.distribution);
  return out;
}

}  // namespace seqcontract
