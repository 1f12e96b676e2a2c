// Copyright 2026 the jumpback authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch CLI over the jumpback library. Results go to stdout as JSON,
// diagnostics to stderr. Exit codes: 0 success / affirmative verdict,
// 2 negative analytic verdict, 1 usage or input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "jumpback/serialization.hpp"

namespace {

using jumpback::Json;

// What one invocation is about to do: the inputs it reads, the knobs every
// analysis honors, and where results land. Validated before any work runs.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  double tol = jumpback::kDefaultTol;
  std::uint64_t seed = 0;
  int n_max = 16;
  std::string output_path;  // empty: stdout only

  void validate() const {
    if (!(tol > 0.0)) {
      throw std::invalid_argument(command + ": tolerance must be positive");
    }
    for (const std::string& path : inputs) {
      std::ifstream probe(path);
      if (!probe) {
        throw std::invalid_argument(command + ": cannot open input file: " + path);
      }
    }
  }
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

CLI::Option* add_tol(CLI::App* cmd, double& tol) {
  return cmd->add_option("--tol", tol, "structural tolerance")
      ->envname("JUMPBACK_TOL")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reversible quantum jumps on the truncated photon-number basis"};
  app.require_subcommand(1);
  int rc = 0;

  // check: is c^k an isometry on the subspace?
  auto* check = app.add_subcommand("check", "test a subspace for k-jump reversibility");
  std::string check_file;
  int check_k = 1;
  double check_tol = jumpback::kDefaultTol;
  check->add_option("subspace", check_file, "subspace JSON file")->required();
  check->add_option("--k", check_k, "jump multiplicity")->required()->check(CLI::PositiveNumber);
  add_tol(check, check_tol);
  check->callback([&] {
    const RunManifest manifest{"check", {check_file}, check_tol, 0, 0, ""};
    manifest.validate();
    const auto subspace = jumpback::subspace_from_json(
        jumpback::load_json_file(check_file), check_tol);
    const auto report = jumpback::check_reversible(subspace, check_k, check_tol);
    emit(jumpback::to_json(report));
    rc = report.is_reversible ? 0 : 2;
  });

  // find: maximal reversible subspace for a set of multiplicities
  auto* find = app.add_subcommand("find", "search for a maximal reversible subspace");
  int find_n_max = 16;
  std::vector<int> find_k_set{1};
  std::uint64_t find_seed = 0;
  int find_restarts = 32;
  double find_tol = jumpback::kDefaultTol;
  find->add_option("--n-max", find_n_max, "truncation cutoff")->check(CLI::PositiveNumber);
  find->add_option("--k-set", find_k_set, "jump multiplicities, e.g. 1,2")
      ->delimiter(',')
      ->required();
  find->add_option("--seed", find_seed, "RNG seed for the randomized restarts");
  find->add_option("--restarts", find_restarts, "randomized restarts per dimension")
      ->check(CLI::PositiveNumber);
  add_tol(find, find_tol);
  find->callback([&] {
    const RunManifest manifest{"find", {}, find_tol, find_seed, find_n_max, ""};
    manifest.validate();
    jumpback::FinderOptions options;
    options.restarts = find_restarts;
    options.tol = manifest.tol;
    const std::set<int> k_set(find_k_set.begin(), find_k_set.end());
    const auto subspace = jumpback::find_maximal_reversible_subspace(
        manifest.n_max, k_set, manifest.seed, options);
    emit(jumpback::to_json(subspace));
  });

  // build-unitary: the reversal unitary for a certified subspace
  auto* build = app.add_subcommand("build-unitary", "construct the reversal unitary");
  std::string build_file;
  int build_k = 1;
  double build_tol = jumpback::kDefaultTol;
  build->add_option("subspace", build_file, "subspace JSON file")->required();
  build->add_option("--k", build_k, "jump multiplicity")->required()->check(CLI::PositiveNumber);
  add_tol(build, build_tol);
  build->callback([&] {
    const RunManifest manifest{"build-unitary", {build_file}, build_tol, 0, 0, ""};
    manifest.validate();
    const auto subspace = jumpback::subspace_from_json(
        jumpback::load_json_file(build_file), build_tol);
    const auto unitary = jumpback::build_reversal_unitary(subspace, build_k, build_tol);
    emit(jumpback::to_json(unitary));
  });

  // info: mutual information between preparation and jump outcome
  auto* info = app.add_subcommand("info", "bits conveyed by a k-fold jump outcome");
  std::string info_file;
  int info_k = 1;
  double info_eta = 0.1;
  double info_tol = jumpback::kDefaultTol;
  info->add_option("ensemble", info_file, "ensemble JSON file")->required();
  info->add_option("--k", info_k, "jump multiplicity")->check(CLI::PositiveNumber);
  info->add_option("--eta", info_eta, "detection efficiency");
  add_tol(info, info_tol);
  info->callback([&] {
    const RunManifest manifest{"info", {info_file}, info_tol, 0, 0, ""};
    manifest.validate();
    const auto ensemble =
        jumpback::ensemble_from_json(jumpback::load_json_file(info_file), info_tol);
    const jumpback::DetectionModel model(info_eta);
    Json out;
    out["k"] = info_k;
    out["eta"] = info_eta;
    out["bits"] = jumpback::mutual_information(ensemble, model, info_k, info_tol);
    emit(out);
  });

  // posterior: Bayes update after an observed outcome
  auto* post = app.add_subcommand("posterior", "Bayes update of an ensemble");
  std::string post_file;
  std::string post_outcome;
  int post_k = 1;
  double post_eta = 0.1;
  double post_tol = jumpback::kDefaultTol;
  post->add_option("ensemble", post_file, "ensemble JSON file")->required();
  post->add_option("--outcome", post_outcome, "observed outcome")
      ->required()
      ->check(CLI::IsMember({"jump", "no-jump"}));
  post->add_option("--k", post_k, "jump multiplicity")->check(CLI::PositiveNumber);
  post->add_option("--eta", post_eta, "detection efficiency");
  add_tol(post, post_tol);
  post->callback([&] {
    const RunManifest manifest{"posterior", {post_file}, post_tol, 0, 0, ""};
    manifest.validate();
    const auto ensemble =
        jumpback::ensemble_from_json(jumpback::load_json_file(post_file), post_tol);
    const jumpback::DetectionModel model(post_eta);
    const auto outcome = post_outcome == "jump" ? jumpback::Outcome::kJump
                                                : jumpback::Outcome::kNoJump;
    emit(jumpback::to_json(jumpback::posterior(ensemble, outcome, model, post_k, post_tol)));
  });

  // simulate: seeded Monte Carlo recovery / failure experiment
  auto* sim = app.add_subcommand("simulate", "run a recovery or failure experiment");
  std::string sim_file;
  std::string sim_csv;
  double sim_tol = jumpback::kDefaultTol;
  sim->add_option("config", sim_file, "experiment config JSON file")->required();
  sim->add_option("--csv", sim_csv, "also write per-trial CSV to this path");
  add_tol(sim, sim_tol);
  sim->callback([&] {
    const RunManifest manifest{"simulate", {sim_file}, sim_tol, 0, 0, sim_csv};
    manifest.validate();
    const auto spec =
        jumpback::simulation_spec_from_json(jumpback::load_json_file(sim_file), sim_tol);
    const auto report = spec.kind == jumpback::ExperimentKind::kRecovery
                            ? jumpback::run_recovery_experiment(spec.config)
                            : jumpback::run_failure_experiment(spec.config);
    emit(jumpback::to_json(report));
    if (!manifest.output_path.empty()) {
      std::ofstream csv(manifest.output_path);
      if (!csv) {
        throw std::invalid_argument("cannot open CSV output path: " + manifest.output_path);
      }
      csv << jumpback::to_csv(report);
    }
  });

  // repeated: expected information per round of repeated projective measurement
  auto* rep = app.add_subcommand("repeated",
                                 "information gain of repeated projective measurements");
  std::string rep_file;
  std::string rep_eigenbasis;
  int rep_count = 1;
  double rep_tol = jumpback::kDefaultTol;
  rep->add_option("ensemble", rep_file, "initial ensemble JSON file")->required();
  rep->add_option("--count", rep_count, "number of measurement rounds")
      ->required()
      ->check(CLI::PositiveNumber);
  rep->add_option("--eigenbasis", rep_eigenbasis,
                  "JSON file {\"subspaces\": [...]}; photon-number eigenbasis when absent");
  add_tol(rep, rep_tol);
  rep->callback([&] {
    RunManifest manifest{"repeated", {rep_file}, rep_tol, 0, 0, ""};
    if (!rep_eigenbasis.empty()) manifest.inputs.push_back(rep_eigenbasis);
    manifest.validate();
    const auto ensemble =
        jumpback::ensemble_from_json(jumpback::load_json_file(rep_file), rep_tol);
    std::vector<jumpback::Subspace> eigenbasis;
    if (rep_eigenbasis.empty()) {
      for (int n = 0; n <= ensemble.n_max(); ++n) {
        eigenbasis.emplace_back(
            ensemble.n_max(),
            std::vector<jumpback::FockVector>{
                jumpback::FockVector::basis_state(ensemble.n_max(), n)});
      }
    } else {
      const Json j = jumpback::load_json_file(rep_eigenbasis);
      if (!j.contains("subspaces") || !j.at("subspaces").is_array()) {
        throw std::invalid_argument("eigenbasis file needs a \"subspaces\" array");
      }
      for (const Json& s : j.at("subspaces")) {
        eigenbasis.push_back(jumpback::subspace_from_json(s, rep_tol));
      }
    }
    const auto bits =
        jumpback::repeated_measurement_info(eigenbasis, ensemble, rep_count, rep_tol);
    Json out;
    out["count"] = rep_count;
    out["bits_per_round"] = bits;
    emit(out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
