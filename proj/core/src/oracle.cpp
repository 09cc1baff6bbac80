#include "seqcontract/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "seqcontract/errors.hpp"
#include "seqcontract/general_solver.hpp"

namespace seqcontract {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t factorial(std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 2; i <= k; ++i) out = mul_sat(out, i);
  return out;
}

std::uint64_t power(std::uint64_t base, std::size_t e) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < e; ++i) out = mul_sat(out, base);
  return out;
}

// Position of a permutation in lexicographic order.
std::uint64_t permutation_index(const std::vector<std::size_t>& perm) {
  const std::size_t k = perm.size();
  std::uint64_t index = 0;
  for (std::size_t a = 0; a < k; ++a) {
    std::uint64_t smaller = 0;
    for (std::size_t b = a + 1; b < k; ++b) {
      if (perm[b] < perm[a]) ++smaller;
    }
    index = index * (k - a) + smaller;
  }
  return index;
}

std::vector<std::size_t> permutation_at(std::uint64_t index, std::size_t k) {
  std::vector<std::size_t> digits(k);
  for (std::size_t a = k; a-- > 0;) {
    const std::size_t base = k - a;
    digits[a] = static_cast<std::size_t>(index % base);
    index /= base;
  }
  std::vector<std::size_t> pool(k);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> perm;
  for (std::size_t a = 0; a < k; ++a) {
    perm.push_back(pool[digits[a]]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[a]));
  }
  return perm;
}

std::uint64_t threshold_code(const std::vector<std::optional<std::size_t>>& threshold,
                             std::size_t m) {
  std::uint64_t code = 0;
  for (const auto& thr : threshold) code = code * (m + 1) + (thr ? *thr + 1 : 0);
  return code;
}

std::uint64_t compose_id(std::uint64_t order_index, std::uint64_t code, std::uint64_t rank_index,
                         std::size_t n, std::size_t m) {
  return (order_index * power(m + 1, n) + code) * factorial(m) + rank_index;
}

}  // namespace

std::uint64_t strategy_count(std::size_t n, std::size_t m) {
  return mul_sat(mul_sat(factorial(n), factorial(m)), power(m + 1, n));
}

std::uint64_t strategy_id(const NonAdaptiveStrategy& s) {
  const std::size_t n = s.order.size();
  const std::size_t m = s.rank.size();
  return compose_id(permutation_index(s.order), threshold_code(s.threshold, m),
                    permutation_index(s.rank), n, m);
}

NonAdaptiveStrategy decode_strategy(std::uint64_t id, std::size_t n, std::size_t m) {
  const std::uint64_t ranks = factorial(m);
  const std::uint64_t codes = power(m + 1, n);
  NonAdaptiveStrategy s;
  s.rank = permutation_at(id % ranks, m);
  id /= ranks;
  std::uint64_t code = id % codes;
  s.order = permutation_at(id / codes, n);
  s.threshold.assign(n, std::nullopt);
  for (std::size_t a = n; a-- > 0;) {
    const std::uint64_t digit = code % (m + 1);
    code /= m + 1;
    if (digit != 0) s.threshold[a] = static_cast<std::size_t>(digit - 1);
  }
  return s;
}

void enumerate_nonadaptive(std::size_t n, std::size_t m,
                           const std::function<void(const NonAdaptiveStrategy&)>& visit,
                           std::uint64_t budget) {
  const std::uint64_t count = strategy_count(n, m);
  if (count > budget) {
    throw CapacityError("strategy enumeration needs " + std::to_string(count) +
                        " strategies, budget is " + std::to_string(budget));
  }
  for (std::uint64_t id = 0; id < count; ++id) visit(decode_strategy(id, n, m));
}

namespace {

class CatalogBuilder {
 public:
  explicit CatalogBuilder(const Instance& inst)
      : inst_(inst), n_(inst.num_actions()), m_(inst.num_outcomes()) {
    levels_.resize(n_ + 1);
    for (Level& level : levels_) {
      level.active.assign(m_, Rational(0));
      level.halted.assign(m_, Rational(0));
    }
    threshold_.assign(n_, std::nullopt);
    used_.assign(n_, 0);
  }

  std::vector<Behavior> build() {
    std::vector<std::size_t> rank(m_);
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    do {
      rank_ = rank;
      rank_index_ = permutation_index(rank);
      Level& root = levels_[0];
      for (std::size_t j = 0; j < m_; ++j) {
        root.active[j] = j == 0 ? 1 : 0;
        root.halted[j] = 0;
      }
      root.cost = 0;
      descend(0);
    } while (std::next_permutation(rank.begin(), rank.end()));

    for (Behavior& b : behaviors_) std::sort(b.ids.begin(), b.ids.end());
    return std::move(behaviors_);
  }

 private:
  struct Level {
    std::vector<Rational> active;
    std::vector<Rational> halted;
    Rational cost;
  };

  void descend(std::size_t depth) {
    if (depth == n_) {
      record(levels_[depth], current_behavior(levels_[depth]));
      return;
    }
    const Level& here = levels_[depth];
    bool idle = true;
    for (const Rational& a : here.active) {
      if (a != 0) {
        idle = false;
        break;
      }
    }
    if (idle) {
      // Nothing left to act on: every completion behaves the same.
      const std::size_t behavior = current_behavior(here);
      complete_ids(depth, behavior);
      return;
    }

    Level& next = levels_[depth + 1];
    for (std::size_t action = 0; action < n_; ++action) {
      if (used_[action]) continue;
      used_[action] = 1;
      order_.push_back(action);
      for (std::size_t code = 0; code <= m_; ++code) {
        threshold_[action] = code == 0 ? std::nullopt : std::optional<std::size_t>(code - 1);
        step(here, next, action);
        descend(depth + 1);
      }
      threshold_[action] = std::nullopt;
      order_.pop_back();
      used_[action] = 0;
    }
  }

  void step(const Level& here, Level& next, std::size_t action) {
    for (std::size_t j = 0; j < m_; ++j) {
      next.halted[j] = here.halted[j];
      next.active[j] = 0;
    }
    next.cost = here.cost;
    scratch_ = here.active;
    if (const auto& thr = threshold_[action]) {
      const std::size_t bar = rank_[*thr];
      for (std::size_t j = 0; j < m_; ++j) {
        if (scratch_[j] != 0 && rank_[j] >= bar) {
          next.halted[j] += scratch_[j];
          scratch_[j] = 0;
        }
      }
    }
    taken_ = 0;
    for (const Rational& a : scratch_) taken_ += a;
    if (taken_ == 0) return;
    next.cost += taken_ * inst_.costs[action];
    const std::vector<Rational>& p = inst_.probs[action];
    for (std::size_t j = 0; j < m_; ++j) {
      if (scratch_[j] == 0) continue;
      for (std::size_t k = 0; k < m_; ++k) {
        if (p[k] == 0) continue;
        next.active[rank_[k] > rank_[j] ? k : j] += scratch_[j] * p[k];
      }
    }
  }

  std::size_t current_behavior(const Level& level) {
    key_.resize(m_ + 1);
    for (std::size_t j = 0; j < m_; ++j) key_[j] = level.active[j] + level.halted[j];
    key_[m_] = level.cost;
    auto [it, inserted] = index_.try_emplace(key_, behaviors_.size());
    if (inserted) {
      Behavior b;
      b.mass.assign(key_.begin(), key_.end() - 1);
      b.expected_cost = level.cost;
      b.expected_reward = 0;
      for (std::size_t j = 0; j < m_; ++j) b.expected_reward += b.mass[j] * inst_.rewards[j];
      behaviors_.push_back(std::move(b));
    }
    return it->second;
  }

  void record(const Level&, std::size_t behavior) {
    behaviors_[behavior].ids.push_back(
        compose_id(permutation_index(order_), threshold_code(threshold_, m_), rank_index_, n_, m_));
  }

  // Enumerates every completion of the current prefix without simulating.
  void complete_ids(std::size_t depth, std::size_t behavior) {
    if (depth == n_) {
      record(levels_[depth], behavior);
      return;
    }
    for (std::size_t action = 0; action < n_; ++action) {
      if (used_[action]) continue;
      used_[action] = 1;
      order_.push_back(action);
      for (std::size_t code = 0; code <= m_; ++code) {
        threshold_[action] = code == 0 ? std::nullopt : std::optional<std::size_t>(code - 1);
        complete_ids(depth + 1, behavior);
      }
      threshold_[action] = std::nullopt;
      order_.pop_back();
      used_[action] = 0;
    }
  }

  const Instance& inst_;
  std::size_t n_;
  std::size_t m_;
  std::vector<Level> levels_;
  std::vector<std::size_t> rank_;
  std::uint64_t rank_index_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::optional<std::size_t>> threshold_;
  std::vector<char> used_;
  std::vector<Rational> scratch_;
  std::vector<Rational> key_;
  Rational taken_;
  std::map<std::vector<Rational>, std::size_t> index_;
  std::vector<Behavior> behaviors_;
};

}  // namespace

StrategyCatalog::StrategyCatalog(const Instance& inst, std::uint64_t budget) : inst_(inst) {
  total_ = strategy_count(inst.num_actions(), inst.num_outcomes());
  if (total_ > budget) {
    throw CapacityError("oracle needs " + std::to_string(total_) +
                        " strategies, budget is " + std::to_string(budget));
  }
  behaviors_ = CatalogBuilder(inst_).build();
}

bool OracleReport::is_optimal(const NonAdaptiveStrategy& s) const {
  return std::binary_search(optimal_ids.begin(), optimal_ids.end(), strategy_id(s));
}

OracleReport oracle_best_response(const StrategyCatalog& catalog, const Contract& t) {
  const Instance& inst = catalog.instance();
  const std::vector<Behavior>& behaviors = catalog.behaviors();
  std::vector<Rational> agent(behaviors.size());
  std::vector<Rational> principal(behaviors.size());
  OracleReport report;
  for (std::size_t b = 0; b < behaviors.size(); ++b) {
    Rational paid = 0;
    for (std::size_t j = 0; j < behaviors[b].mass.size(); ++j) {
      paid += behaviors[b].mass[j] * t.payments[j];
    }
    agent[b] = paid - behaviors[b].expected_cost;
    principal[b] = behaviors[b].expected_reward - paid;
    if (b == 0 || agent[b] > report.agent_utility) report.agent_utility = agent[b];
  }

  bool have = false;
  for (std::size_t b = 0; b < behaviors.size(); ++b) {
    if (agent[b] != report.agent_utility) continue;
    report.optimal_ids.insert(report.optimal_ids.end(), behaviors[b].ids.begin(),
                              behaviors[b].ids.end());
    const std::uint64_t lowest = behaviors[b].ids.front();
    if (!have || principal[b] > report.principal_utility ||
        (principal[b] == report.principal_utility && lowest < report.chosen_id)) {
      report.principal_utility = principal[b];
      report.chosen_id = lowest;
      have = true;
    }
  }
  std::sort(report.optimal_ids.begin(), report.optimal_ids.end());
  report.chosen = decode_strategy(report.chosen_id, inst.num_actions(), inst.num_outcomes());
  return report;
}

OracleReport oracle_best_response(const Instance& inst, const Contract& t, std::uint64_t budget) {
  return oracle_best_response(StrategyCatalog(inst, budget), t);
}

OracleLinear oracle_best_linear(const StrategyCatalog& catalog) {
  // Cheapest way to reach each expected reward.
  std::map<Rational, Rational> cheapest;
  for (const Behavior& b : catalog.behaviors()) {
    auto [it, inserted] = cheapest.try_emplace(b.expected_reward, b.expected_cost);
    if (!inserted && b.expected_cost < it->second) it->second = b.expected_cost;
  }
  // Keep points whose cost strictly exceeds that of every lower reward;
  // the rest are dominated for every alpha >= 0.
  std::vector<Rational> reward, cost;
  for (auto it = cheapest.rbegin(); it != cheapest.rend(); ++it) {
    if (!cost.empty() && it->second >= cost.back()) continue;
    reward.push_back(it->first);
    cost.push_back(it->second);
  }
  std::reverse(reward.begin(), reward.end());
  std::reverse(cost.begin(), cost.end());

  std::vector<Rational> alphas{Rational(0), Rational(1)};
  for (std::size_t a = 0; a < reward.size(); ++a) {
    for (std::size_t b = a + 1; b < reward.size(); ++b) {
      Rational alpha = (cost[b] - cost[a]) / (reward[b] - reward[a]);
      if (alpha >= 0 && alpha <= 1) alphas.push_back(std::move(alpha));
    }
  }
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  OracleLinear out;
  out.candidate_count = alphas.size();
  bool have = false;
  for (const Rational& alpha : alphas) {
    std::size_t pick = 0;
    Rational best = alpha * reward[0] - cost[0];
    for (std::size_t k = 1; k < reward.size(); ++k) {
      Rational u = alpha * reward[k] - cost[k];
      if (u >= best) {  // rewards ascend: ties go to the principal
        best = std::move(u);
        pick = k;
      }
    }
    Rational utility = (1 - alpha) * reward[pick];
    if (!have || utility > out.utility) {
      out.alpha = alpha;
      out.utility = std::move(utility);
      have = true;
    }
  }
  return out;
}

OracleLinear oracle_best_linear(const Instance& inst, std::uint64_t budget) {
  return oracle_best_linear(StrategyCatalog(inst, budget));
}

GridResult grid_search_general(const Instance& inst, const Rational& step, std::uint64_t budget) {
  const Rational bound = payment_bound(inst);
  if (step < 0 || (step == 0 && bound > 0)) throw ValidationError("grid step must be positive");
  std::vector<Rational> axis{Rational(0)};
  if (bound > 0) {
    for (Rational x = step; x < bound; x += step) axis.push_back(x);
    axis.push_back(bound);
  }

  const std::size_t m = inst.num_outcomes();
  const std::uint64_t points = power(axis.size(), m);
  if (points > budget) {
    throw CapacityError("grid has " + std::to_string(points) + " points, budget is " +
                        std::to_string(budget));
  }

  GridResult out;
  out.points = points;
  std::vector<std::size_t> digit(m, 0);
  Contract t{std::vector<Rational>(m, axis[0])};
  bool have = false;
  while (true) {
    BestResponse br = principal_utility(inst, t);
    if (!have || br.principal_utility > out.utility) {
      out.utility = std::move(br.principal_utility);
      out.contract = t;
      have = true;
    }
    std::size_t j = m;
    while (j > 0) {
      --j;
      if (++digit[j] < axis.size()) {
        t.payments[j] = axis[digit[j]];
        break;
      }
      digit[j] = 0;
      t.payments[j] = axis[0];
      if (j == 0) return out;
    }
    if (m == 0) return out;
  }
}

}  // namespace seqcontract
