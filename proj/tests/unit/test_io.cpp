#include <doctest.h>

#include <random>

#include "seqcontract/errors.hpp"
#include "seqcontract/generators.hpp"
#include "seqcontract/io.hpp"
#include "seqcontract/oracle.hpp"
#include "support.hpp"

using namespace seqcontract;
using namespace seqcontract::testing;

TEST_CASE("rationals in JSON") {
  CHECK(rational_from_json(Json("3/6")) == ratio(1, 2));
  CHECK(rational_from_json(Json(4)) == 4);
  CHECK(rational_to_json(ratio(-2, 4)) == Json("-1/2"));
  CHECK(rational_to_json(Rational(3)) == Json("3"));
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), ValidationError);
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), ValidationError);
  CHECK_THROWS_AS(rationals_from_json(Json("1"), "rewards"), ValidationError);
}

TEST_CASE("instance documents") {
  const Json doc = Json::parse(R"({"rewards": ["0", "1"], "costs": ["1/10"],
                                   "probs": [["1/2", "1/2"]], "meta": {"note": 1}})");
  const NormalizedInstance n = instance_from_json(doc);
  CHECK(n.instance == binary_instance());
  CHECK(instance_to_json(n.instance).dump() ==
        R"({"rewards":["0","1"],"costs":["1/10"],"probs":[["1/2","1/2"]]})");

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = gen_random_instance(3, 4, seed);
    CHECK(instance_from_json(instance_to_json(inst)).instance == inst);
  }

  CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"rewards": ["0"], "costs": []})")), ValidationError);
  CHECK_THROWS_AS(instance_from_json(Json::parse(
                      R"({"rewards": ["0", "1"], "costs": ["0"], "probs": [["1/2", "1/3"]]})")),
                  ValidationError);
  CHECK_THROWS_AS(instance_from_json(Json::parse("[]")), ValidationError);
}

TEST_CASE("contract documents") {
  const Contract t = payments({0, ratio(1, 5)});
  CHECK(contract_to_json(t).dump() == R"({"payments":["0","1/5"]})");
  CHECK(contract_from_json(contract_to_json(t)) == t);
  CHECK_THROWS_AS(contract_from_json(Json::parse(R"({"pay": []})")), ValidationError);
}

TEST_CASE("strategy documents round trip in document labels") {
  const Json doc = Json::parse(R"({"rewards": ["2", "0", "1"], "costs": ["0", "1/4"],
                                   "probs": [["1/3", "1/3", "1/3"], ["1", "0", "0"]]})");
  const NormalizedInstance n = instance_from_json(doc);
  CHECK(n.outcome_order == std::vector<std::size_t>{1, 2, 0});
  enumerate_nonadaptive(2, 3, [&](const NonAdaptiveStrategy& s) {
    const Json j = strategy_to_json(s, n.outcome_order);
    CHECK(strategy_from_json(j, n.outcome_order) == s);
  });

  NonAdaptiveStrategy s{{1, 0}, {0, 1, 2}, {std::nullopt, 2}};
  const Json j = strategy_to_json(s, n.outcome_order);
  CHECK(j.dump() == R"({"sigma":[2,1],"rho":[3,1,2],"tau":[null,1]})");

  CHECK_THROWS_AS(strategy_from_json(Json::parse(R"({"sigma":[1,1],"rho":[1,2,3],"tau":[null,null]})"),
                                     n.outcome_order),
                  ValidationError);
  CHECK_THROWS_AS(strategy_from_json(Json::parse(R"({"sigma":[1,2],"rho":[1,2,3],"tau":[null,4]})"),
                                     n.outcome_order),
                  ValidationError);
}

TEST_CASE("coverage documents") {
  const Json doc = Json::parse(R"({"universe": [{"id": "u1", "weight": "3/10"}, {"id": 2, "weight": "1/2"}],
                                   "actions": {"a": ["u1"], "b": ["u1", 2]},
                                   "costs": {"a": "1/10", "b": "1/5"}})");
  const CorrelatedInstance ci = coverage_from_json(doc);
  CHECK(ci.f.actions == std::vector<std::string>{"a", "b"});
  CHECK(ci.costs == std::vector<Rational>{ratio(1, 10), ratio(1, 5)});
  CHECK(coverage_eval(ci.f, 0b10) == ratio(4, 5));
  const CorrelatedInstance back = coverage_from_json(coverage_to_json(ci.f, ci.costs));
  CHECK(back.f.elements == ci.f.elements);
  CHECK(back.f.covers == ci.f.covers);
  CHECK(back.costs == ci.costs);
  CHECK(coverage_from_json(coverage_to_json(ci.f)).costs.empty());

  CHECK_THROWS_AS(coverage_from_json(Json::parse(
                      R"({"universe": [{"id": "u", "weight": "1"}], "actions": {"a": ["v"]}})")),
                  ValidationError);
  CHECK_THROWS_AS(coverage_from_json(Json::parse(
                      R"({"universe": [{"id": "u", "weight": "-1"}], "actions": {"a": ["u"]}})")),
                  ValidationError);
}

TEST_CASE("joint documents") {
  std::mt19937_64 rng(97);
  for (int k = 0; k < 20; ++k) {
    const BernoulliJoint b = random_bernoulli(rng, 3, 4);
    const BernoulliJoint b2 = bernoulli_from_json(bernoulli_to_json(b));
    CHECK(b2.support == b.support);
    CHECK(b2.pdf == b.pdf);
    const ValueJoint v = random_value_joint(rng, 3, 4);
    const ValueJoint v2 = value_joint_from_json(value_joint_to_json(v));
    CHECK(v2.support == v.support);
    CHECK(v2.pdf == v.pdf);
  }
  CHECK_THROWS_AS(bernoulli_from_json(Json::parse(
                      R"({"actions": ["a"], "support": [{"point": [2], "p": "1"}]})")),
                  ValidationError);
  CHECK_THROWS_AS(bernoulli_from_json(Json::parse(
                      R"({"actions": ["a"], "support": [{"point": [1], "p": "3/2"}]})")),
                  ValidationError);
}

TEST_CASE("reading files") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/instance.json"), ValidationError);
}
