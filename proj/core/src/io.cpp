#include "seqcontract/io.hpp"

#include <fstream>
#include <map>

#include "seqcontract/errors.hpp"

namespace seqcontract {
namespace {

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) throw ValidationError("expected a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw ValidationError(std::string("missing field \"") + name + "\"");
  return *it;
}

std::size_t index_from_json(const Json& value, std::size_t limit, const char* what) {
  if (!value.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  const auto raw = value.get<long long>();
  if (raw < 1 || static_cast<unsigned long long>(raw) > limit) {
    throw ValidationError(std::string(what) + " " + std::to_string(raw) + " out of range 1.." +
                          std::to_string(limit));
  }
  return static_cast<std::size_t>(raw - 1);
}

std::vector<std::size_t> permutation_from_json(const Json& value, std::size_t size,
                                               const char* what) {
  if (!value.is_array() || value.size() != size) {
    throw ValidationError(std::string(what) + " must be an array of length " + std::to_string(size));
  }
  std::vector<std::size_t> out;
  std::vector<char> seen(size, 0);
  for (const Json& entry : value) {
    const std::size_t k = index_from_json(entry, size, what);
    if (seen[k]) throw ValidationError(std::string(what) + " is not a permutation");
    seen[k] = 1;
    out.push_back(k);
  }
  return out;
}

std::vector<std::string> names_from_json(const Json& value) {
  if (!value.is_array()) throw ValidationError("\"actions\" must be an array of names");
  std::vector<std::string> out;
  for (const Json& name : value) {
    if (!name.is_string()) throw ValidationError("action names must be strings");
    out.push_back(name.get<std::string>());
  }
  if (out.size() > kMaxCorrelatedActions) throw ValidationError("at most 64 actions are supported");
  return out;
}

}  // namespace

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return parse_rational(value.dump());
  throw ValidationError("expected a rational string \"num/den\" or an integer, got " + value.dump());
}

Json rational_to_json(const Rational& value) { return format_rational(value); }

std::vector<Rational> rationals_from_json(const Json& value, const std::string& name) {
  if (!value.is_array()) throw ValidationError("\"" + name + "\" must be an array");
  std::vector<Rational> out;
  out.reserve(value.size());
  for (const Json& entry : value) out.push_back(rational_from_json(entry));
  return out;
}

Json rationals_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const Rational& v : values) out.push_back(rational_to_json(v));
  return out;
}

RawInstance raw_instance_from_json(const Json& doc) {
  RawInstance raw;
  raw.rewards = rationals_from_json(field(doc, "rewards"), "rewards");
  raw.costs = rationals_from_json(field(doc, "costs"), "costs");
  const Json& probs = field(doc, "probs");
  if (!probs.is_array()) throw ValidationError("\"probs\" must be an array of rows");
  for (const Json& row : probs) raw.probs.push_back(rationals_from_json(row, "probs row"));
  return raw;
}

NormalizedInstance instance_from_json(const Json& doc) {
  return validate_instance(raw_instance_from_json(doc));
}

Json instance_to_json(const Instance& inst) {
  Json out;
  out["rewards"] = rationals_to_json(inst.rewards);
  out["costs"] = rationals_to_json(inst.costs);
  Json rows = Json::array();
  for (const auto& row : inst.probs) rows.push_back(rationals_to_json(row));
  out["probs"] = std::move(rows);
  return out;
}

Contract contract_from_json(const Json& doc) {
  return Contract{rationals_from_json(field(doc, "payments"), "payments")};
}

Json contract_to_json(const Contract& t) {
  Json out;
  out["payments"] = rationals_to_json(t.payments);
  return out;
}

Json strategy_to_json(const NonAdaptiveStrategy& s, const std::vector<std::size_t>& outcome_order) {
  const std::size_t m = s.rank.size();
  Json sigma = Json::array();
  for (std::size_t a : s.order) sigma.push_back(a + 1);
  std::vector<std::size_t> rho(m);
  for (std::size_t k = 0; k < m; ++k) rho[outcome_order[k]] = s.rank[k] + 1;
  Json tau = Json::array();
  for (const auto& thr : s.threshold) {
    if (thr) {
      tau.push_back(outcome_order[*thr] + 1);
    } else {
      tau.push_back(nullptr);
    }
  }
  Json out;
  out["sigma"] = std::move(sigma);
  out["rho"] = rho;
  out["tau"] = std::move(tau);
  return out;
}

NonAdaptiveStrategy strategy_from_json(const Json& doc,
                                       const std::vector<std::size_t>& outcome_order) {
  const std::size_t m = outcome_order.size();
  std::vector<std::size_t> normalized(m);
  for (std::size_t k = 0; k < m; ++k) normalized[outcome_order[k]] = k;

  const Json& tau = field(doc, "tau");
  if (!tau.is_array()) throw ValidationError("\"tau\" must be an array");
  NonAdaptiveStrategy s;
  s.order = permutation_from_json(field(doc, "sigma"), tau.size(), "sigma");
  const std::vector<std::size_t> rho = permutation_from_json(field(doc, "rho"), m, "rho");
  s.rank.resize(m);
  for (std::size_t j = 0; j < m; ++j) s.rank[normalized[j]] = rho[j];
  for (const Json& entry : tau) {
    if (entry.is_null()) {
      s.threshold.emplace_back(std::nullopt);
    } else {
      s.threshold.emplace_back(normalized[index_from_json(entry, m, "tau")]);
    }
  }
  return s;
}

CorrelatedInstance coverage_from_json(const Json& doc) {
  CorrelatedInstance ci;
  std::map<std::string, std::size_t> element_index;
  const Json& universe = field(doc, "universe");
  if (!universe.is_array()) throw ValidationError("\"universe\" must be an array");
  for (const Json& element : universe) {
    const Json& id = field(element, "id");
    const std::string name = id.is_string() ? id.get<std::string>() : id.dump();
    if (!element_index.emplace(name, ci.f.elements.size()).second) {
      throw ValidationError("duplicate universe element " + name);
    }
    ci.f.elements.push_back(name);
    ci.f.weights.push_back(rational_from_json(field(element, "weight")));
  }
  const Json& actions = field(doc, "actions");
  if (!actions.is_object()) throw ValidationError("\"actions\" must map names to element lists");
  for (const auto& [name, ids] : actions.items()) {
    if (!ids.is_array()) throw ValidationError("cover of action " + name + " must be an array");
    std::vector<std::size_t> cover;
    for (const Json& id : ids) {
      const std::string key = id.is_string() ? id.get<std::string>() : id.dump();
      auto it = element_index.find(key);
      if (it == element_index.end()) {
        throw ValidationError("action " + name + " covers unknown element " + key);
      }
      cover.push_back(it->second);
    }
    ci.f.actions.push_back(name);
    ci.f.covers.push_back(std::move(cover));
  }
  if (auto it = doc.find("costs"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("\"costs\" must map action names to rationals");
    ci.costs.assign(ci.f.num_actions(), Rational(0));
    std::vector<char> seen(ci.f.num_actions(), 0);
    for (const auto& [name, cost] : it->items()) {
      auto pos = std::find(ci.f.actions.begin(), ci.f.actions.end(), name);
      if (pos == ci.f.actions.end()) throw ValidationError("cost given for unknown action " + name);
      const auto i = static_cast<std::size_t>(pos - ci.f.actions.begin());
      ci.costs[i] = rational_from_json(cost);
      seen[i] = 1;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) throw ValidationError("missing cost for action " + ci.f.actions[i]);
    }
  }
  check_coverage(ci.f);
  return ci;
}

Json coverage_to_json(const CoverageFunction& f, const std::vector<Rational>& costs) {
  Json universe = Json::array();
  for (std::size_t u = 0; u < f.elements.size(); ++u) {
    Json element;
    element["id"] = f.elements[u];
    element["weight"] = rational_to_json(f.weights[u]);
    universe.push_back(std::move(element));
  }
  Json actions = Json::object();
  for (std::size_t i = 0; i < f.actions.size(); ++i) {
    Json ids = Json::array();
    for (std::size_t u : f.covers[i]) ids.push_back(f.elements[u]);
    actions[f.actions[i]] = std::move(ids);
  }
  Json out;
  out["universe"] = std::move(universe);
  out["actions"] = std::move(actions);
  if (!costs.empty()) {
    Json c = Json::object();
    for (std::size_t i = 0; i < f.actions.size(); ++i) c[f.actions[i]] = rational_to_json(costs[i]);
    out["costs"] = std::move(c);
  }
  return out;
}

BernoulliJoint bernoulli_from_json(const Json& doc) {
  BernoulliJoint joint;
  joint.actions = names_from_json(field(doc, "actions"));
  const Json& support = field(doc, "support");
  if (!support.is_array()) throw ValidationError("\"support\" must be an array");
  Rational total = 0;
  for (const Json& entry : support) {
    const Json& point = field(entry, "point");
    if (!point.is_array() || point.size() != joint.actions.size()) {
      throw ValidationError("support point must have one 0/1 entry per action");
    }
    ActionSet bits = 0;
    for (std::size_t i = 0; i < point.size(); ++i) {
      const Rational v = rational_from_json(point[i]);
      if (v != 0 && v != 1) throw ValidationError("Bernoulli support values must be 0 or 1");
      if (v == 1) bits = with(bits, i);
    }
    Rational p = rational_from_json(field(entry, "p"));
    if (p < 0) throw ValidationError("negative probability in support");
    total += p;
    joint.support.push_back(bits);
    joint.pdf.push_back(std::move(p));
  }
  if (total > 1) throw ValidationError("support probabilities sum to more than 1");
  return joint;
}

Json bernoulli_to_json(const BernoulliJoint& joint) {
  Json support = Json::array();
  for (std::size_t k = 0; k < joint.support.size(); ++k) {
    Json point = Json::array();
    for (std::size_t i = 0; i < joint.actions.size(); ++i) point.push_back(contains(joint.support[k], i) ? 1 : 0);
    Json entry;
    entry["point"] = std::move(point);
    entry["p"] = rational_to_json(joint.pdf[k]);
    support.push_back(std::move(entry));
  }
  Json out;
  out["actions"] = joint.actions;
  out["support"] = std::move(support);
  return out;
}

ValueJoint value_joint_from_json(const Json& doc) {
  ValueJoint joint;
  joint.actions = names_from_json(field(doc, "actions"));
  const Json& support = field(doc, "support");
  if (!support.is_array()) throw ValidationError("\"support\" must be an array");
  Rational total = 0;
  for (const Json& entry : support) {
    std::vector<Rational> point = rationals_from_json(field(entry, "point"), "point");
    if (point.size() != joint.actions.size()) {
      throw ValidationError("support point must have one value per action");
    }
    for (const Rational& v : point) {
      if (v < 0) throw ValidationError("values must be non-negative");
    }
    Rational p = rational_from_json(field(entry, "p"));
    if (p < 0) throw ValidationError("negative probability in support");
    total += p;
    joint.support.push_back(std::move(point));
    joint.pdf.push_back(std::move(p));
  }
  if (total != 1) throw ValidationError("support probabilities must sum to 1");
  return joint;
}

Json value_joint_to_json(const ValueJoint& joint) {
  Json support = Json::array();
  for (std::size_t k = 0; k < joint.support.size(); ++k) {
    Json entry;
    entry["point"] = rationals_to_json(joint.support[k]);
    entry["p"] = rational_to_json(joint.pdf[k]);
    support.push_back(std::move(entry));
  }
  Json out;
  out["actions"] = joint.actions;
  out["support"] = std::move(support);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace seqcontract
