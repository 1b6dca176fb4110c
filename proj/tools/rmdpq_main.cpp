// Copyright 2026 The rmdpq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rmdpq/frozen_lake.hpp"
#include "rmdpq/model.hpp"
#include "rmdpq/model_io.hpp"
#include "rmdpq/reference_oracle.hpp"
#include "rmdpq/solvers.hpp"

namespace {

using nlohmann::json;
using rmdpq::Rmdp;
using rmdpq::StateSet;

std::string g_command_echo;

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitCap = 66;

struct Clock {
  std::chrono::steady_clock::time_point begin = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - begin)
        .count();
  }
};

struct Objective {
  bool parity = false;
  std::string label;  // reach objective label
};

Objective parse_objective(const std::string& text) {
  if (text == "parity") return {true, ""};
  if (text.rfind("reach:", 0) == 0 && text.size() > 6)
    return {false, text.substr(6)};
  throw CLI::ValidationError("--objective",
                             "expected 'reach:<label>' or 'parity'");
}

rmdpq::LNorm parse_norm(const std::string& text) {
  if (text == "inf" || text == "linf") return rmdpq::LNorm::inf();
  if (text == "1" || text == "l1") return rmdpq::LNorm::p(1);
  if (text == "2" || text == "l2") return rmdpq::LNorm::p(2);
  try {
    const unsigned d = static_cast<unsigned>(std::stoul(text));
    if (d >= 1) return rmdpq::LNorm::p(d);
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("norm", "expected a positive integer or 'inf'");
}

json names_of(const Rmdp& model, const StateSet& set) {
  json out = json::array();
  for (rmdpq::StateId s : set.elements()) out.push_back(model.state_names[s]);
  return out;
}

json stats_to_json(const rmdpq::OracleStats& stats) {
  json out;
  out["canHit"] = stats.can_hit_calls;
  out["faceFeasible"] = stats.face_feasible_calls;
  out["forceAgent"] = stats.force_agent_calls;
  out["forceEnv"] = stats.force_env_calls;
  out["lpSolves"] = stats.lp_solves;
  return out;
}

json policy_to_json(const Rmdp& model, const rmdpq::MemorylessPolicy& policy) {
  json out = json::object();
  for (const auto& [s, a] : policy.choice)
    out[model.state_names[s]] = model.menus[s][a].name;
  return out;
}

rmdpq::MemorylessPolicy policy_from_json(const Rmdp& model, const json& doc) {
  if (!doc.contains("choices"))
    throw rmdpq::SchemaError("policy file missing 'choices'");
  rmdpq::MemorylessPolicy policy;
  for (const auto& [name, action] : doc.at("choices").items()) {
    const auto s = model.find_state(name);
    if (!s) throw rmdpq::SchemaError("policy mentions unknown state '" + name + "'");
    bool found = false;
    for (rmdpq::ActionId a = 0; a < model.menus[*s].size(); ++a) {
      if (model.menus[*s][a].name == action.get<std::string>() &&
          model.menus[*s][a].alive) {
        policy.choice[*s] = a;
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("policy picks unknown action '" +
                                  action.get<std::string>() + "' at state '" +
                                  name + "'");
  }
  return policy;
}

Rmdp load_checked(const std::string& path) {
  Rmdp model = rmdpq::load_model_file(path);
  const auto violations = rmdpq::validate(model);
  if (!violations.empty()) {
    std::cerr << "invalid model '" << path << "':\n";
    for (const auto& v : violations)
      std::cerr << "  " << v.where << ": " << v.message << "\n";
    std::exit(kExitData);
  }
  return model;
}

struct SolveFlags {
  std::string arith = "exact";
  double tol = 1e-9;
  double timeout_s = 0;

  rmdpq::SolveOptions options() const {
    rmdpq::SolveOptions opts;
    if (arith == "float")
      opts.backend = rmdpq::FeasibilityBackend::with_float(tol);
    if (timeout_s > 0)
      opts.deadline = std::chrono::steady_clock::now() +
                      std::chrono::microseconds(
                          static_cast<long long>(timeout_s * 1e6));
    return opts;
  }
};

StateSet reach_target(const Rmdp& model, const std::string& label) {
  try {
    const StateSet target = model.label_set(label);
    if (target.empty()) {
      std::cerr << "label '" << label << "' marks no live state\n";
      std::exit(kExitData);
    }
    return target;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    std::exit(kExitData);
  }
}

const rmdpq::PriorityFunction& parity_priorities(const Rmdp& model) {
  if (!model.priorities) {
    std::cerr << "model has no priorities; parity objective unavailable\n";
    std::exit(kExitData);
  }
  return *model.priorities;
}

json solve_one(const Rmdp& model, const Objective& objective, bool efficient,
               const rmdpq::SolveOptions& opts, const SolveFlags& flags,
               std::optional<rmdpq::SolveResult>* out_result) {
  Clock clock;
  rmdpq::SolveResult result;
  if (objective.parity) {
    const auto& priorities = parity_priorities(model);
    if (efficient) {
      const std::size_t n = model.live_count();
      result = rmdpq::eff_as_parity_agent(model, priorities, n, n, opts);
    } else {
      result = rmdpq::as_parity_agent(model, priorities, opts);
    }
  } else {
    result = rmdpq::as_reach(model, reach_target(model, objective.label), opts);
  }

  json report;
  report["arith"] = flags.arith;
  report["iterations"] = result.iterations;
  report["oracleCalls"] = stats_to_json(result.stats);
  if (result.policy.choice.empty())
    report["policy"] = nullptr;
  else
    report["policy"] = policy_to_json(model, result.policy);
  json trace = json::array();
  for (const auto& removed : result.trace) trace.push_back(names_of(model, removed));
  report["trace"] = std::move(trace);
  report["wallMs"] = clock.ms();
  report["winning"] = names_of(model, result.winning);
  if (out_result) *out_result = std::move(result);
  return report;
}

int cmd_solve(const std::string& model_path, const std::string& models_dir,
              const std::string& objective_text, bool efficient,
              const std::string& policy_out, const SolveFlags& flags) {
  const Objective objective = parse_objective(objective_text);

  if (!models_dir.empty()) {
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(models_dir))
      if (entry.path().extension() == ".json")
        files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    json batch = json::array();
    std::size_t solved = 0, timeouts = 0;
    double total_ms = 0;
    for (const auto& file : files) {
      const Rmdp model = load_checked(file);
      json entry;
      entry["model"] = file;
      try {
        json report = solve_one(model, objective, efficient, flags.options(),
                                flags, nullptr);
        entry["status"] = "solved";
        entry["wallMs"] = report["wallMs"];
        entry["winningCount"] = report["winning"].size();
        total_ms += report["wallMs"].get<double>();
        ++solved;
      } catch (const rmdpq::TimeoutError&) {
        entry["status"] = "timeout";
        ++timeouts;
      }
      batch.push_back(std::move(entry));
    }
    json report;
    report["arith"] = flags.arith;
    report["command"] = g_command_echo;
    report["models"] = std::move(batch);
    json aggregate;
    aggregate["avgTimeMs"] = solved ? total_ms / static_cast<double>(solved) : 0.0;
    aggregate["count"] = solved;
    aggregate["timeouts"] = timeouts;
    report["aggregate"] = std::move(aggregate);
    std::cout << report.dump(2) << std::endl;
    return kExitOk;
  }

  const Rmdp model = load_checked(model_path);
  std::optional<rmdpq::SolveResult> result;
  json report = solve_one(model, objective, efficient, flags.options(), flags,
                          &result);
  report["command"] = g_command_echo;
  report["model"] = model_path;
  if (!policy_out.empty() && result && !result->policy.choice.empty()) {
    json doc;
    doc["schema"] = "rmdpq-policy-1";
    doc["choices"] = policy_to_json(model, result->policy);
    std::ofstream out(policy_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write policy file '" << policy_out << "'\n";
      return kExitData;
    }
    out << doc.dump(2) << "\n";
  }
  std::cout << report.dump(2) << std::endl;
  return kExitOk;
}

int cmd_check(const std::string& model_path, const std::string& objective_text,
              std::size_t cap, const SolveFlags& flags) {
  const Objective objective = parse_objective(objective_text);
  const Rmdp model = load_checked(model_path);
  const rmdpq::SolveOptions opts = flags.options();

  Clock clock;
  rmdpq::SupportGame game;
  try {
    game = rmdpq::reduce(model, cap, opts.backend);
  } catch (const rmdpq::SupportCapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitCap;
  }

  StateSet main_winning(model.n_states()), reference_winning(model.n_states());
  if (objective.parity) {
    const auto& priorities = parity_priorities(model);
    main_winning = rmdpq::as_parity_agent(model, priorities, opts).winning;
    reference_winning = rmdpq::game_as_parity(game, priorities);
  } else {
    const StateSet target = reach_target(model, objective.label);
    main_winning = rmdpq::as_reach(model, target, opts).winning;
    reference_winning = rmdpq::game_as_reach(game, target);
  }

  const StateSet only_main = main_winning.set_minus(reference_winning);
  const StateSet only_reference = reference_winning.set_minus(main_winning);
  const bool agree = only_main.empty() && only_reference.empty();

  json report;
  report["agree"] = agree;
  report["arith"] = flags.arith;
  report["command"] = g_command_echo;
  report["mainOnly"] = names_of(model, only_main);
  report["model"] = model_path;
  report["referenceOnly"] = names_of(model, only_reference);
  report["wallMs"] = clock.ms();
  report["winning"] = names_of(model, main_winning);
  std::cout << report.dump(2) << std::endl;
  return agree ? kExitOk : kExitDisagree;
}

int cmd_verify(const std::string& model_path, const std::string& policy_path,
               const std::string& objective_text, const SolveFlags& flags) {
  const Objective objective = parse_objective(objective_text);
  const Rmdp model = load_checked(model_path);

  std::ifstream in(policy_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open policy file '" << policy_path << "'\n";
    return kExitData;
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    std::cerr << "invalid policy file: " << e.what() << "\n";
    return kExitData;
  }
  const rmdpq::MemorylessPolicy policy = policy_from_json(model, doc);
  StateSet claimed(model.n_states());
  for (const auto& [s, a] : policy.choice) claimed.insert(s);

  Clock clock;
  bool verified;
  if (objective.parity) {
    verified = rmdpq::verify_policy(model, policy, claimed,
                                    parity_priorities(model), flags.options());
  } else {
    verified = rmdpq::verify_policy(model, policy, claimed,
                                    reach_target(model, objective.label),
                                    flags.options());
  }

  json report;
  report["arith"] = flags.arith;
  report["claimed"] = names_of(model, claimed);
  report["command"] = g_command_echo;
  report["model"] = model_path;
  report["policy"] = policy_path;
  report["verified"] = verified;
  report["wallMs"] = clock.ms();
  std::cout << report.dump(2) << std::endl;
  return verified ? kExitOk : kExitDisagree;
}

int cmd_gen(unsigned n, const std::string& norm_text, const std::string& rmax,
            std::uint64_t seed, const std::string& objective,
            const std::string& holes, bool unrestricted,
            const std::string& out_path) {
  rmdpq::FrozenLakeSpec spec;
  spec.n = n;
  spec.norm = parse_norm(norm_text);
  spec.r_max = rmdpq::Rational::parse(rmax);
  spec.seed = seed;
  spec.hole_density = rmdpq::Rational::parse(holes);
  spec.support_restricted = !unrestricted;
  if (objective == "reach")
    spec.objective = rmdpq::FrozenLakeSpec::Objective::kReach;
  else if (objective == "parity")
    spec.objective = rmdpq::FrozenLakeSpec::Objective::kParity;
  else
    throw CLI::ValidationError("--objective", "expected 'reach' or 'parity'");

  const Rmdp model = rmdpq::gen_frozen_lake(spec);
  rmdpq::save_model_file(model, out_path);

  json report;
  report["command"] = g_command_echo;
  report["output"] = out_path;
  report["states"] = model.live_count();
  std::cout << report.dump(2) << std::endl;
  return kExitOk;
}

int cmd_ingest(const std::string& tra_path, const std::string& lab_path,
               const std::string& family, const std::string& radius,
               bool unrestricted, const std::string& out_path) {
  std::ifstream tra(tra_path, std::ios::binary);
  if (!tra) {
    std::cerr << "cannot open tra file '" << tra_path << "'\n";
    return kExitData;
  }
  std::ifstream lab(lab_path, std::ios::binary);
  if (!lab) {
    std::cerr << "cannot open lab file '" << lab_path << "'\n";
    return kExitData;
  }
  const Rmdp model =
      rmdpq::ingest_explicit(tra, lab, parse_norm(family),
                             rmdpq::Rational::parse(radius), !unrestricted);
  rmdpq::save_model_file(model, out_path);

  json report;
  report["command"] = g_command_echo;
  report["output"] = out_path;
  report["states"] = model.live_count();
  std::cout << report.dump(2) << std::endl;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) {
    if (i) g_command_echo += " ";
    g_command_echo += argv[i];
  }
  CLI::App app{"qualitative analysis of robust MDPs"};
  app.require_subcommand(1);

  std::string model_path, models_dir, objective = "parity", policy_out;
  bool efficient = false;
  SolveFlags flags;

  auto* solve = app.add_subcommand("solve", "solve a model file");
  solve->add_option("--model", model_path, "model file (rmdpq-1 JSON)");
  solve->add_option("--models-dir", models_dir, "solve every *.json in a directory");
  solve->add_option("--objective", objective, "reach:<label> or parity")->required();
  solve->add_flag("--efficient", efficient, "quasi-polynomial parity variant");
  solve->add_option("--policy", policy_out, "write the winning policy to this file");
  solve->add_option("--arith", flags.arith, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  solve->add_option("--tol", flags.tol, "zero tolerance in float mode");
  solve->add_option("--timeout", flags.timeout_s, "seconds before aborting");

  std::string policy_path;
  std::size_t cap = 12;
  auto* check = app.add_subcommand("check", "cross-check against the support-game oracle");
  check->add_option("--model", model_path, "model file")->required();
  check->add_option("--objective", objective, "reach:<label> or parity")->required();
  check->add_option("--cap", cap, "achievable-support enumeration cap");
  check->add_option("--arith", flags.arith, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  check->add_option("--tol", flags.tol, "zero tolerance in float mode");

  auto* verify = app.add_subcommand("verify", "re-solve under a pinned policy");
  verify->add_option("--model", model_path, "model file")->required();
  verify->add_option("--policy", policy_path, "policy file")->required();
  verify->add_option("--objective", objective, "reach:<label> or parity")->required();
  verify->add_option("--arith", flags.arith, "exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  verify->add_option("--tol", flags.tol, "zero tolerance in float mode");

  unsigned gen_n = 4;
  std::string gen_p = "1", gen_rmax = "1", gen_objective = "reach",
              gen_holes = "1/10", out_path;
  std::uint64_t gen_seed = 1;
  bool unrestricted = false;
  auto* gen = app.add_subcommand("gen", "generate a benchmark model");
  auto* lake = gen->add_subcommand("frozenlake", "slippery grid benchmark");
  lake->add_option("--n", gen_n, "grid side")->required();
  lake->add_option("--p", gen_p, "norm order: 1, 2, ... or inf");
  lake->add_option("--rmax", gen_rmax, "maximal radius (rational)");
  lake->add_option("--seed", gen_seed, "PRNG seed");
  lake->add_option("--objective", gen_objective, "reach or parity");
  lake->add_option("--holes", gen_holes, "hole density (rational in [0,1))");
  lake->add_flag("--unrestricted", unrestricted, "allow support expansion");
  lake->add_option("-o,--output", out_path, "output model file")->required();
  gen->require_subcommand(1);

  std::string tra_path, lab_path, family = "l1", radius = "0";
  auto* ingest = app.add_subcommand("ingest", "wrap an explicit model in uniform balls");
  ingest->add_option("--tra", tra_path, "transition file")->required();
  ingest->add_option("--lab", lab_path, "label file")->required();
  ingest->add_option("--family", family, "l1, l2 or linf");
  ingest->add_option("--radius", radius, "uniform radius (rational)");
  ingest->add_flag("--unrestricted", unrestricted, "allow support expansion");
  ingest->add_option("-o,--output", out_path, "output model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      if (model_path.empty() == models_dir.empty()) {
        std::cerr << "solve: pass exactly one of --model / --models-dir\n";
        return kExitUsage;
      }
      return cmd_solve(model_path, models_dir, objective, efficient, policy_out,
                       flags);
    }
    if (check->parsed()) return cmd_check(model_path, objective, cap, flags);
    if (verify->parsed())
      return cmd_verify(model_path, policy_path, objective, flags);
    if (ingest->parsed())
      return cmd_ingest(tra_path, lab_path, family, radius, unrestricted,
                        out_path);
    if (gen->parsed())
      return cmd_gen(gen_n, gen_p, gen_rmax, gen_seed, gen_objective, gen_holes,
                     unrestricted, out_path);
    return kExitUsage;
  } catch (const rmdpq::TimeoutError& e) {
    std::cerr << e.what() << "\n";
    return kExitTimeout;
  } catch (const rmdpq::SupportCapExceeded& e) {
    std::cerr << e.what() << "\n";
    return kExitCap;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const rmdpq::SchemaError& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  } catch (const rmdpq::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}
