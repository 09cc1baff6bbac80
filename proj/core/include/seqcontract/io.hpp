#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "seqcontract/agent.hpp"
#include "seqcontract/correlated.hpp"
#include "seqcontract/model.hpp"
#include "seqcontract/rational.hpp"

namespace seqcontract {

using Json = nlohmann::ordered_json;

// Rationals travel as "num/den" strings; bare JSON integers are accepted on
// input.
Rational rational_from_json(const Json& value);
Json rational_to_json(const Rational& value);
std::vector<Rational> rationals_from_json(const Json& value, const std::string& field);
Json rationals_to_json(const std::vector<Rational>& values);

// {"rewards": [...], "costs": [...], "probs": [[...], ...], "meta": {...}}.
// Unknown fields, including meta, are ignored on input.
RawInstance raw_instance_from_json(const Json& doc);
NormalizedInstance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& inst);

// {"payments": [...]}
Contract contract_from_json(const Json& doc);
Json contract_to_json(const Contract& t);

// {"sigma": [...], "rho": [...], "tau": [...]}, 1-based. rho[j] is the
// preference rank of outcome j (higher is preferred); tau entries are
// outcome labels or null. Outcome labels are the document's: outcome_order
// maps normalized outcomes back to them.
Json strategy_to_json(const NonAdaptiveStrategy& s, const std::vector<std::size_t>& outcome_order);
NonAdaptiveStrategy strategy_from_json(const Json& doc,
                                       const std::vector<std::size_t>& outcome_order);

// {"universe": [{"id", "weight"}], "actions": {name: [ids]}, "costs": {name: "p/q"}}.
// Costs are optional; without them the returned instance has no costs.
CorrelatedInstance coverage_from_json(const Json& doc);
Json coverage_to_json(const CoverageFunction& f, const std::vector<Rational>& costs = {});

// {"actions": [names], "support": [{"point": [0/1, ...], "p": "p/q"}]}
BernoulliJoint bernoulli_from_json(const Json& doc);
Json bernoulli_to_json(const BernoulliJoint& joint);

// {"actions": [names], "support": [{"point": ["v", ...], "p": "p/q"}]}
ValueJoint value_joint_from_json(const Json& doc);
Json value_joint_to_json(const ValueJoint& joint);

// Throws ValidationError when the file is missing or not JSON.
Json read_json_file(const std::string& path);

}  // namespace seqcontract
