#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "seqcontract/agent.hpp"
#include "seqcontract/correlated.hpp"
#include "seqcontract/errors.hpp"
#include "seqcontract/general_solver.hpp"
#include "seqcontract/generators.hpp"
#include "seqcontract/io.hpp"
#include "seqcontract/linear_solver.hpp"
#include "seqcontract/oracle.hpp"

namespace seqcontract::cli {
namespace {

struct Options {
  bool approx = false;
  std::uint64_t budget_vertices = kDefaultVertexBudget;
  std::uint64_t budget_oracle = kDefaultOracleBudget;
  std::string grid_step;
  std::uint64_t seed = 1;

  std::string instance;
  std::string contract;
  std::string kind;
  std::string file;

  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::string a;
  std::string gamma;
  std::string v;
  std::string rho;
  std::string subset;
};

struct LoadedInstance {
  NormalizedInstance normalized;
  std::string digest;

  const Instance& inst() const { return normalized.instance; }
  const std::vector<std::size_t>& order() const { return normalized.outcome_order; }
};

LoadedInstance load_instance(const std::string& path) {
  LoadedInstance out{instance_from_json(read_json_file(path)), {}};
  out.digest = digest(instance_to_json(out.inst()).dump());
  return out;
}

Contract load_contract(const LoadedInstance& loaded, const std::string& path) {
  const Contract original = contract_from_json(read_json_file(path));
  check_contract(loaded.inst(), original);
  return to_normalized(original, loaded.order());
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first == std::string::npos) throw ValidationError("empty entry in list \"" + text + "\"");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const std::string& item : split(text)) out.push_back(parse_rational(item));
  return out;
}

std::vector<std::size_t> index_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& item : split(text)) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ValidationError("expected a positive integer, got \"" + item + "\"");
    out.push_back(value);
  }
  return out;
}

Json extended_to_json(const ExtendedRational& z) {
  return z.is_infinite() ? Json("inf") : rational_to_json(z.value());
}

Json original_masses(const std::vector<Rational>& mass, const std::vector<std::size_t>& order) {
  return rationals_to_json(to_original(Contract{mass}, order).payments);
}

Json approximate(const Json& value) {
  if (value.is_object()) {
    Json out = Json::object();
    for (const auto& [key, item] : value.items()) {
      if (key != "digest") out[key] = approximate(item);
    }
    return out;
  }
  if (value.is_array()) {
    Json out = Json::array();
    for (const Json& item : value) out.push_back(approximate(item));
    return out;
  }
  if (value.is_string()) {
    try {
      return to_double(parse_rational(value.get<std::string>()));
    } catch (const ValidationError&) {
      return value;
    }
  }
  return value;
}

Rational positive_step(const std::string& text) {
  const Rational step = parse_rational(text);
  if (step <= 0) throw ValidationError("--grid-step must be positive");
  return step;
}

Json cmd_validate(const Options& o) {
  const LoadedInstance loaded = load_instance(o.instance);
  Json out;
  out["valid"] = true;
  out["actions"] = loaded.inst().num_actions();
  out["outcomes"] = loaded.inst().num_outcomes();
  Json order = Json::array();
  for (std::size_t j : loaded.order()) order.push_back(j + 1);
  out["outcome_order"] = std::move(order);
  out["digest"] = loaded.digest;
  return out;
}

Json cmd_best_response(const Options& o) {
  const LoadedInstance loaded = load_instance(o.instance);
  const Contract t = load_contract(loaded, o.contract);
  const BestResponse br = principal_utility(loaded.inst(), t);
  Json z = Json::array();
  for (const ExtendedRational& value : reservation_values(loaded.inst(), t)) {
    z.push_back(extended_to_json(value));
  }
  Json out;
  out["agent_utility"] = rational_to_json(br.agent_utility);
  out["principal_utility"] = rational_to_json(br.principal_utility);
  out["strategy"] = strategy_to_json(br.strategy, loaded.order());
  out["reservation_values"] = std::move(z);
  out["take_probability"] = rationals_to_json(br.distribution.take_probability);
  out["outcome_distribution"] = original_masses(br.distribution.mass, loaded.order());
  out["digest"] = loaded.digest;
  return out;
}

Json cmd_eval(const Options& o) {
  const LoadedInstance loaded = load_instance(o.instance);
  const Contract t = load_contract(loaded, o.contract);
  const BestResponse br = principal_utility(loaded.inst(), t);
  Json out;
  out["principal_utility"] = rational_to_json(br.principal_utility);
  out["agent_utility"] = rational_to_json(br.agent_utility);
  out["strategy"] = strategy_to_json(br.strategy, loaded.order());
  out["digest"] = loaded.digest;
  return out;
}

Json cmd_solve_linear(const Options& o) {
  const LoadedInstance loaded = load_instance(o.instance);
  const LinearSolution sol = solve_linear(loaded.inst());
  Json candidates = Json::array();
  for (const CandidateValue& c : sol.candidates) {
    Json entry;
    entry["alpha"] = rational_to_json(c.alpha);
    entry["utility"] = rational_to_json(c.utility);
    candidates.push_back(std::move(entry));
  }
  Json out;
  out["alpha"] = rational_to_json(sol.alpha);
  out["utility"] = rational_to_json(sol.utility);
  out["strategy"] = strategy_to_json(sol.strategy, loaded.order());
  out["response_changes"] = count_response_changes(sol);
  out["candidates"] = std::move(candidates);
  out["digest"] = loaded.digest;
  return out;
}

Json cmd_solve_general(const Options& o) {
  const LoadedInstance loaded = load_instance(o.instance);
  const GeneralSolution sol = solve_general(loaded.inst(), o.budget_vertices);
  Json planes = Json::object();
  for (std::size_t f = 0; f < sol.hyperplane_counts.size(); ++f) {
    planes[family_name(static_cast<HyperplaneFamily>(f))] = sol.hyperplane_counts[f];
  }
  Json out;
  out["contract"] = contract_to_json(to_original(sol.contract, loaded.order()));
  out["utility"] = rational_to_json(sol.utility);
  out["strategy"] = strategy_to_json(sol.strategy, loaded.order());
  out["vertices"] = sol.vertex_count;
  out["hyperplanes"] = std::move(planes);
  out["digest"] = loaded.digest;
  return out;
}

Json cmd_oracle(const Options& o) {
  const LoadedInstance loaded = load_instance(o.instance);
  const std::optional<Contract> t =
      o.contract.empty() ? std::nullopt : std::optional<Contract>(load_contract(loaded, o.contract));
  const StrategyCatalog catalog(loaded.inst(), o.budget_oracle);
  const std::size_t n = loaded.inst().num_actions();
  const std::size_t m = loaded.inst().num_outcomes();
  Json out;
  if (t) {
    const OracleReport r = oracle_best_response(catalog, *t);
    Json optimal = Json::array();
    for (std::uint64_t id : r.optimal_ids) {
      optimal.push_back(strategy_to_json(decode_strategy(id, n, m), loaded.order()));
    }
    out["agent_utility"] = rational_to_json(r.agent_utility);
    out["principal_utility"] = rational_to_json(r.principal_utility);
    out["chosen"] = strategy_to_json(r.chosen, loaded.order());
    out["optimal_count"] = r.optimal_ids.size();
    out["optimal"] = std::move(optimal);
  } else {
    const OracleLinear lin = oracle_best_linear(catalog);
    out["alpha"] = rational_to_json(lin.alpha);
    out["utility"] = rational_to_json(lin.utility);
    out["candidates"] = lin.candidate_count;
    if (!o.grid_step.empty()) {
      const GridResult g = grid_search_general(loaded.inst(), positive_step(o.grid_step));
      Json grid;
      grid["contract"] = contract_to_json(to_original(g.contract, loaded.order()));
      grid["utility"] = rational_to_json(g.utility);
      grid["points"] = g.points;
      out["grid"] = std::move(grid);
    }
  }
  out["strategies"] = catalog.strategy_total();
  out["digest"] = loaded.digest;
  return out;
}

Json instance_report(const Instance& inst, Json meta) {
  Json out = instance_to_json(inst);
  meta["digest"] = digest(out.dump());
  out["meta"] = std::move(meta);
  return out;
}

Json gen_partition(const Options& o) {
  const PartitionParams p = partition_params(rational_list(o.a));
  Json meta;
  meta["generator"] = "partition";
  meta["a"] = rationals_to_json(p.a);
  meta["epsilon"] = rational_to_json(p.epsilon);
  meta["q"] = rational_to_json(p.q);
  meta["residual"] = rational_to_json(p.residual);
  meta["c"] = rational_to_json(p.c);
  if (!o.subset.empty()) {
    std::vector<bool> in_set(p.a.size(), false);
    Rational x = 0;
    for (std::size_t l : index_list(o.subset)) {
      if (l < 1 || l > p.a.size()) throw ValidationError("--subset index out of range");
      if (!in_set[l - 1]) x += p.a[l - 1];
      in_set[l - 1] = true;
    }
    meta["equal_spread"] = contract_to_json(equal_spread_contract(p, in_set));
    meta["equal_spread_utility"] = rational_to_json(equal_spread_utility(p, x));
  }
  return instance_report(gen_partition_reduction(p), std::move(meta));
}

Json gen_gap(const Options& o) {
  if (o.n < 1) throw ValidationError("--n must be at least 1");
  Json meta;
  meta["generator"] = "gap";
  meta["n"] = o.n;
  if (!o.gamma.empty()) {
    const Rational eps = parse_rational(o.gamma);
    if (eps <= 0 || eps >= 1) throw ValidationError("--eps must lie in (0, 1)");
    meta["contract"] = contract_to_json(gap_general_contract(eps));
  }
  return instance_report(gen_gap_instance(o.n), std::move(meta));
}

Json gen_critpoints(const Options& o) {
  if (o.m < 2) throw ValidationError("--m must be at least 2");
  Json meta;
  meta["generator"] = "critpoints";
  meta["m"] = o.m;
  return instance_report(gen_critpoints_instance(o.m), std::move(meta));
}

Json gen_superpoly(const Options& o) {
  const SuperpolyInstance s = gen_superpoly_instance(o.n, o.m);
  Json labels = Json::array();
  for (const auto& [j, i] : s.labels) labels.push_back(Json::array({j, i}));
  Json meta;
  meta["generator"] = "superpoly";
  meta["n"] = o.n;
  meta["m"] = o.m;
  meta["ell"] = s.ell;
  meta["dummy_actions"] = s.dummy_actions;
  meta["labels"] = std::move(labels);
  if (!o.v.empty()) meta["value_contract"] = contract_to_json(superpoly_value_contract(s, index_list(o.v)));
  if (!o.rho.empty()) meta["order_contract"] = contract_to_json(superpoly_order_contract(s, index_list(o.rho)));
  return instance_report(s.instance, std::move(meta));
}

Json gen_random(const Options& o) {
  if (o.n < 1 || o.m < 1) throw ValidationError("--n and --m must be at least 1");
  Json meta;
  meta["generator"] = "random";
  meta["n"] = o.n;
  meta["m"] = o.m;
  meta["seed"] = o.seed;
  return instance_report(gen_random_instance(o.n, o.m, o.seed), std::move(meta));
}

Json gen_correlated_hardness(const Options& o) {
  const CorrelatedInstance source = coverage_from_json(read_json_file(o.file));
  const Rational gamma = parse_rational(o.gamma);
  const CorrelatedInstance ci = hardness_reduction(source.f, o.k, gamma);
  Json out = coverage_to_json(ci.f, ci.costs);
  Json meta;
  meta["generator"] = "correlated-hardness";
  meta["k"] = o.k;
  meta["gamma"] = rational_to_json(gamma);
  meta["c0"] = rational_to_json(ci.costs.front());
  meta["digest"] = digest(out.dump());
  out["meta"] = std::move(meta);
  return out;
}

Json cmd_convert(const Options& o) {
  const Json doc = read_json_file(o.file);
  Json out;
  if (o.kind == "coverage") {
    const CorrelatedInstance ci = coverage_from_json(doc);
    out["bernoulli"] = bernoulli_to_json(coverage_to_bernoulli(ci.f));
    out["corrmax"] = value_joint_to_json(coverage_to_corrmax(ci.f));
  } else if (o.kind == "bernoulli") {
    out["coverage"] = coverage_to_json(bernoulli_to_coverage(bernoulli_from_json(doc)));
  } else {
    out["coverage"] = coverage_to_json(corrmax_to_coverage(value_joint_from_json(doc)));
  }
  return out;
}

}  // namespace

std::string digest(const std::string& canonical) {
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), hash, &size, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::string out;
  char hex[3];
  for (unsigned int i = 0; i < size; ++i) {
    std::snprintf(hex, sizeof hex, "%02x", hash[i]);
    out += hex;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact solvers for sequential contracts with independent or correlated actions",
               "seqcontract"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--approx", o.approx, "Add decimal renderings of rationals under \"approx\"");
  app.add_option("--budget-vertices", o.budget_vertices, "Cap on hyperplane subsets examined")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-oracle", o.budget_oracle, "Cap on strategies the oracle enumerates")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid-step", o.grid_step, "Grid spacing p/q for the oracle's grid search");
  app.add_option("--seed", o.seed, "Seed for gen random");

  std::vector<std::pair<CLI::App*, std::function<Json(const Options&)>>> handlers;
  auto command = [&](const char* name, const char* about, std::function<Json(const Options&)> fn) {
    CLI::App* sub = app.add_subcommand(name, about);
    handlers.emplace_back(sub, std::move(fn));
    return sub;
  };

  command("validate", "Check an instance and report its normalized shape", cmd_validate)
      ->add_option("instance", o.instance, "Instance JSON")->required();
  for (auto [name, about, fn] :
       {std::tuple{"best-response", "Agent best response to a contract", cmd_best_response},
        std::tuple{"eval", "Principal utility and strategy under a contract", cmd_eval}}) {
    CLI::App* sub = command(name, about, fn);
    sub->add_option("instance", o.instance, "Instance JSON")->required();
    sub->add_option("contract", o.contract, "Contract JSON")->required();
  }
  command("solve-linear", "Optimal linear contract", cmd_solve_linear)
      ->add_option("instance", o.instance, "Instance JSON")->required();
  command("solve-general", "Optimal general contract by vertex enumeration", cmd_solve_general)
      ->add_option("instance", o.instance, "Instance JSON")->required();
  CLI::App* oracle = command("oracle", "Exhaustive best response or best linear contract", cmd_oracle);
  oracle->add_option("instance", o.instance, "Instance JSON")->required();
  oracle->add_option("contract", o.contract, "Contract JSON; omit for the best linear contract");
  CLI::App* convert = command("convert", "Convert between coverage functions and joints", cmd_convert);
  convert->add_option("kind", o.kind, "Input format")
      ->required()
      ->check(CLI::IsMember({"coverage", "bernoulli", "corrmax"}));
  convert->add_option("file", o.file, "Input JSON")->required();

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance family");
  gen->require_subcommand(1);
  auto family = [&](const char* name, const char* about, std::function<Json(const Options&)> fn) {
    CLI::App* sub = gen->add_subcommand(name, about);
    handlers.emplace_back(sub, std::move(fn));
    return sub;
  };
  family("partition", "Partition reduction", gen_partition)
      ->add_option("--a", o.a, "Comma-separated sizes summing to 1/5")
      ->required();
  gen->get_subcommand("partition")
      ->add_option("--subset", o.subset, "1-based middle outcomes for an equal-spread contract");
  CLI::App* gap = family("gap", "Linear-versus-general gap family", gen_gap);
  gap->add_option("--n", o.n, "Number of actions")->required();
  gap->add_option("--eps", o.gamma, "Also emit the companion contract (0, 1, eps)");
  family("critpoints", "Two-action family with many critical values", gen_critpoints)
      ->add_option("--m", o.m, "Number of outcomes")
      ->required();
  CLI::App* superpoly = family("superpoly", "Family with many best responses", gen_superpoly);
  superpoly->add_option("--n", o.n, "Number of actions")->required();
  superpoly->add_option("--m", o.m, "Number of outcomes")->required();
  superpoly->add_option("--v", o.v, "Comma-separated levels in 1..ell for a value contract");
  superpoly->add_option("--rho", o.rho, "Comma-separated outcomes 2..m for an order contract");
  CLI::App* random = family("random", "Seeded random instance", gen_random);
  random->add_option("--n", o.n, "Number of actions")->required();
  random->add_option("--m", o.m, "Number of outcomes")->required();
  CLI::App* hard = family("correlated-hardness", "Correlated reduction from a coverage function",
                          gen_correlated_hardness);
  hard->add_option("coverage", o.file, "Coverage JSON")->required();
  hard->add_option("--k", o.k, "Cover size")->required();
  hard->add_option("--gamma", o.gamma, "Gap parameter in (0, 1)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    app.exit(e, out, err);
    err << app.help();
    return kUsage;
  }

  try {
    for (const auto& [sub, fn] : handlers) {
      if (!sub->parsed()) continue;
      Json report = fn(o);
      if (o.approx) report["approx"] = approximate(report);
      out << report.dump() << '\n';
      return kOk;
    }
    err << app.help();
    return kUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace seqcontract::cli
