#include "seqcontract/correlated.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "seqcontract/errors.hpp"

namespace seqcontract {
namespace {

// Per element, the set of actions covering it.
std::vector<ActionSet> element_covers(const CoverageFunction& f) {
  std::vector<ActionSet> out(f.elements.size(), 0);
  for (std::size_t i = 0; i < f.covers.size(); ++i) {
    for (std::size_t u : f.covers[i]) out[u] = with(out[u], i);
  }
  return out;
}

}  // namespace

void check_coverage(const CoverageFunction& f) {
  if (f.weights.size() != f.elements.size()) {
    throw ValidationError("coverage: weight count does not match universe size");
  }
  if (f.covers.size() != f.actions.size()) {
    throw ValidationError("coverage: cover count does not match action count");
  }
  if (f.actions.size() > kMaxCorrelatedActions) {
    throw ValidationError("coverage: at most 64 actions are supported");
  }
  for (std::size_t u = 0; u < f.weights.size(); ++u) {
    if (f.weights[u] < 0) throw ValidationError("coverage: negative weight for element " + f.elements[u]);
  }
  for (std::size_t i = 0; i < f.covers.size(); ++i) {
    for (std::size_t u : f.covers[i]) {
      if (u >= f.elements.size()) {
        throw ValidationError("coverage: action " + f.actions[i] + " covers an unknown element");
      }
    }
  }
}

void check_correlated(const CorrelatedInstance& ci) {
  check_coverage(ci.f);
  if (ci.costs.size() != ci.f.num_actions()) {
    throw ValidationError("correlated instance: cost count does not match action count");
  }
  for (std::size_t i = 0; i < ci.costs.size(); ++i) {
    if (ci.costs[i] < 0) throw ValidationError("correlated instance: negative cost for " + ci.f.actions[i]);
  }
  const Rational total = coverage_eval(ci.f, all_actions(ci.f.num_actions()));
  if (total > 1) {
    throw ValidationError("correlated instance: f(A) = " + format_rational(total) + " exceeds 1");
  }
}

ActionSet all_actions(std::size_t n) {
  return n >= 64 ? ~ActionSet{0} : (ActionSet{1} << n) - 1;
}

Rational coverage_eval(const CoverageFunction& f, ActionSet s) {
  std::vector<char> covered(f.elements.size(), 0);
  for (std::size_t i = 0; i < f.covers.size(); ++i) {
    if (!contains(s, i)) continue;
    for (std::size_t u : f.covers[i]) covered[u] = 1;
  }
  Rational sum = 0;
  for (std::size_t u = 0; u < covered.size(); ++u) {
    if (covered[u]) sum += f.weights[u];
  }
  return sum;
}

Rational correlated_or(const BernoulliJoint& joint, ActionSet s) {
  Rational sum = 0;
  for (std::size_t k = 0; k < joint.support.size(); ++k) {
    if ((joint.support[k] & s) != 0) sum += joint.pdf[k];
  }
  return sum;
}

Rational expected_max(const ValueJoint& joint, ActionSet s) {
  Rational sum = 0;
  for (std::size_t k = 0; k < joint.support.size(); ++k) {
    Rational best = 0;
    for (std::size_t i = 0; i < joint.support[k].size(); ++i) {
      if (contains(s, i) && joint.support[k][i] > best) best = joint.support[k][i];
    }
    sum += joint.pdf[k] * best;
  }
  return sum;
}

CoverageFunction bernoulli_to_coverage(const BernoulliJoint& joint) {
  CoverageFunction f;
  f.actions = joint.actions;
  f.covers.resize(joint.actions.size());
  for (std::size_t k = 0; k < joint.support.size(); ++k) {
    f.elements.push_back("u" + std::to_string(k + 1));
    f.weights.push_back(joint.pdf[k]);
    for (std::size_t i = 0; i < joint.actions.size(); ++i) {
      if (contains(joint.support[k], i)) f.covers[i].push_back(k);
    }
  }
  return f;
}

BernoulliJoint coverage_to_bernoulli(const CoverageFunction& f) {
  const std::vector<ActionSet> covers = element_covers(f);
  BernoulliJoint joint;
  joint.actions = f.actions;
  Rational total = 0;
  for (std::size_t u = 0; u < covers.size(); ++u) {
    if (covers[u] == 0 || f.weights[u] == 0) continue;
    total += f.weights[u];
    auto it = std::find(joint.support.begin(), joint.support.end(), covers[u]);
    if (it == joint.support.end()) {
      joint.support.push_back(covers[u]);
      joint.pdf.push_back(f.weights[u]);
    } else {
      joint.pdf[static_cast<std::size_t>(it - joint.support.begin())] += f.weights[u];
    }
  }
  if (total > 1) {
    throw ValidationError("coverage: covered weight " + format_rational(total) +
                          " exceeds 1, not a correlated-OR function");
  }
  if (total < 1) {
    joint.support.push_back(0);
    joint.pdf.push_back(1 - total);
  }
  return joint;
}

CoverageFunction corrmax_to_coverage(const ValueJoint& joint) {
  std::vector<Rational> levels;
  for (const auto& point : joint.support) {
    for (const Rational& v : point) {
      if (v > 0) levels.push_back(v);
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  CoverageFunction f;
  f.actions = joint.actions;
  f.covers.resize(joint.actions.size());
  for (std::size_t k = 0; k < joint.support.size(); ++k) {
    const auto& point = joint.support[k];
    Rational previous = 0;
    for (const Rational& level : levels) {
      Rational weight = joint.pdf[k] * (level - previous);
      previous = level;
      std::vector<std::size_t> coverers;
      for (std::size_t i = 0; i < point.size(); ++i) {
        if (point[i] >= level) coverers.push_back(i);
      }
      if (weight == 0 || coverers.empty()) continue;
      const std::size_t u = f.elements.size();
      f.elements.push_back("v" + std::to_string(k + 1) + "@" + format_rational(level));
      f.weights.push_back(std::move(weight));
      for (std::size_t i : coverers) f.covers[i].push_back(u);
    }
  }
  return f;
}

ValueJoint coverage_to_corrmax(const CoverageFunction& f) {
  const std::vector<ActionSet> covers = element_covers(f);
  const std::size_t n = f.actions.size();
  Rational total = 0;
  for (const Rational& w : f.weights) total += w;

  ValueJoint joint;
  joint.actions = f.actions;
  if (total == 0) {
    joint.support.emplace_back(n, Rational(0));
    joint.pdf.emplace_back(1);
    return joint;
  }
  std::vector<ActionSet> seen;
  for (std::size_t u = 0; u < covers.size(); ++u) {
    if (f.weights[u] == 0) continue;
    auto it = std::find(seen.begin(), seen.end(), covers[u]);
    if (it != seen.end()) {
      joint.pdf[static_cast<std::size_t>(it - seen.begin())] += f.weights[u] / total;
      continue;
    }
    seen.push_back(covers[u]);
    std::vector<Rational> point(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (contains(covers[u], i)) point[i] = total;
    }
    joint.support.push_back(std::move(point));
    joint.pdf.push_back(f.weights[u] / total);
  }
  return joint;
}

Rational sequence_cost(const CorrelatedInstance& ci, const TupleStrategy& s) {
  Rational cost = 0;
  ActionSet prefix = 0;
  for (std::size_t action : s) {
    cost += (1 - coverage_eval(ci.f, prefix)) * ci.costs[action];
    prefix = with(prefix, action);
  }
  return cost;
}

SequenceUtilities sequence_utilities(const CorrelatedInstance& ci, const Rational& alpha,
                                     const TupleStrategy& s) {
  ActionSet taken = 0;
  for (std::size_t action : s) taken = with(taken, action);
  const Rational success = coverage_eval(ci.f, taken);
  return {alpha * success - sequence_cost(ci, s), (1 - alpha) * success};
}

namespace {

// Cheapest tuple for every reachable success probability.
struct TupleFront {
  std::vector<Rational> success;
  std::vector<Rational> cost;
  std::vector<TupleStrategy> tuple;
};

bool shorter_or_smaller(const TupleStrategy& a, const TupleStrategy& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

TupleFront tuple_front(const CorrelatedInstance& ci, std::size_t max_actions) {
  const std::size_t n = ci.f.num_actions();
  if (n > max_actions) {
    throw CapacityError("correlated brute force limited to " + std::to_string(max_actions) +
                        " actions, instance has " + std::to_string(n));
  }
  std::unordered_map<ActionSet, Rational> f_cache;
  auto f_of = [&](ActionSet s) -> const Rational& {
    auto it = f_cache.find(s);
    if (it == f_cache.end()) it = f_cache.emplace(s, coverage_eval(ci.f, s)).first;
    return it->second;
  };

  struct Best {
    Rational cost;
    TupleStrategy tuple;
  };
  std::map<Rational, Best> best;
  auto offer = [&](const Rational& success, const Rational& cost, const TupleStrategy& tuple) {
    auto it = best.find(success);
    if (it == best.end()) {
      best.emplace(success, Best{cost, tuple});
    } else if (cost < it->second.cost ||
               (cost == it->second.cost && shorter_or_smaller(tuple, it->second.tuple))) {
      it->second = Best{cost, tuple};
    }
  };

  TupleStrategy tuple;
  auto extend = [&](auto&& self, ActionSet taken, const Rational& cost) -> void {
    const Rational& success = f_of(taken);
    offer(success, cost, tuple);
    // Further actions would never be reached.
    if (success == 1) return;
    for (std::size_t i = 0; i < n; ++i) {
      if (contains(taken, i)) continue;
      tuple.push_back(i);
      self(self, with(taken, i), cost + (1 - success) * ci.costs[i]);
      tuple.pop_back();
    }
  };
  extend(extend, 0, Rational(0));

  TupleFront front;
  for (auto& [success, b] : best) {
    front.success.push_back(success);
    front.cost.push_back(std::move(b.cost));
    front.tuple.push_back(std::move(b.tuple));
  }
  return front;
}

std::size_t respond(const TupleFront& front, const Rational& alpha) {
  std::size_t pick = 0;
  Rational best = alpha * front.success[0] - front.cost[0];
  for (std::size_t k = 1; k < front.success.size(); ++k) {
    Rational u = alpha * front.success[k] - front.cost[k];
    // Success values ascend, so ">=" prefers the principal on ties.
    if (u >= best) {
      best = std::move(u);
      pick = k;
    }
  }
  return pick;
}

}  // namespace

TupleStrategy correlated_best_response(const CorrelatedInstance& ci, const Rational& alpha,
                                       std::size_t max_actions) {
  const TupleFront front = tuple_front(ci, max_actions);
  return front.tuple[respond(front, alpha)];
}

CorrelatedLinearResult brute_force_best_linear(const CorrelatedInstance& ci,
                                               std::size_t max_actions) {
  const TupleFront front = tuple_front(ci, max_actions);
  std::vector<Rational> alphas{Rational(0), Rational(1)};
  for (std::size_t a = 0; a < front.success.size(); ++a) {
    for (std::size_t b = a + 1; b < front.success.size(); ++b) {
      Rational alpha = (front.cost[b] - front.cost[a]) / (front.success[b] - front.success[a]);
      if (alpha >= 0 && alpha <= 1) alphas.push_back(std::move(alpha));
    }
  }
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  CorrelatedLinearResult out;
  bool have = false;
  for (const Rational& alpha : alphas) {
    const std::size_t k = respond(front, alpha);
    Rational utility = (1 - alpha) * front.success[k];
    if (!have || utility > out.utility) {
      out.alpha = alpha;
      out.utility = utility;
      out.strategy = front.tuple[k];
      have = true;
    }
    out.candidates.push_back({alpha, std::move(utility), front.tuple[k]});
  }
  return out;
}

CorrelatedInstance hardness_reduction(const CoverageFunction& fprime, std::size_t k,
                                      const Rational& gamma) {
  check_coverage(fprime);
  if (k == 0) throw ValidationError("hardness reduction: k must be positive");
  if (gamma <= 0 || gamma >= 1) throw ValidationError("hardness reduction: gamma must lie in (0, 1)");
  if (fprime.num_actions() + 1 > kMaxCorrelatedActions) {
    throw ValidationError("hardness reduction: too many actions");
  }
  const Rational one_over_k = ratio(1, static_cast<long>(k));
  for (std::size_t i = 0; i < fprime.num_actions(); ++i) {
    const Rational single = coverage_eval(fprime, with(0, i));
    if (single != one_over_k) {
      throw ValidationError("hardness reduction: f'({" + fprime.actions[i] + "}) = " +
                            format_rational(single) + ", expected 1/" + std::to_string(k));
    }
    if (fprime.actions[i] == "0") {
      throw ValidationError("hardness reduction: action name \"0\" is reserved");
    }
  }
  Rational total = 0;
  for (const Rational& w : fprime.weights) total += w;
  if (total > 1) {
    throw ValidationError("hardness reduction: total weight " + format_rational(total) +
                          " exceeds 1");
  }

  CorrelatedInstance ci;
  ci.f.elements = fprime.elements;
  ci.f.weights = fprime.weights;
  if (total < 1) {
    ci.f.elements.push_back("residual");
    ci.f.weights.push_back(1 - total);
  }
  ci.f.actions.push_back("0");
  std::vector<std::size_t> everything(ci.f.elements.size());
  for (std::size_t u = 0; u < everything.size(); ++u) everything[u] = u;
  ci.f.covers.push_back(std::move(everything));
  ci.costs.push_back(1 - gamma / 8);

  const Rational action_cost = ratio(3, 2 * static_cast<long>(k + 1));
  for (std::size_t i = 0; i < fprime.num_actions(); ++i) {
    ci.f.actions.push_back(fprime.actions[i]);
    ci.f.covers.push_back(fprime.covers[i]);
    ci.costs.push_back(action_cost);
  }
  return ci;
}

}  // namespace seqcontract
