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

#pragma once

#include <string>

#include <json.hpp>

#include "jumpback/fock.hpp"
#include "jumpback/information.hpp"
#include "jumpback/reversibility.hpp"
#include "jumpback/subspace.hpp"
#include "jumpback/trajectory.hpp"

// JSON wire formats. Field names are part of the contract:
//   state:    {"n_max": int, "amplitudes": [[re, im], ...]}
//   subspace: {"n_max": int, "basis": [state, ...], "k_max": int}
//   ensemble: {"members": [{"state": state, "prior": real}, ...]}
//   operator: {"n_max": int, "entries": [[[re, im], ...], ...]} (row-major)
//   report:   {"is_reversible": bool, "k": int, "gram_deviation": real,
//              "violating_pair": [i, j] | null}
// Parsers validate the documented invariants and throw std::invalid_argument
// with a diagnostic on malformed input.

namespace jumpback {

using Json = nlohmann::ordered_json;

Json to_json(const FockVector& state);
FockVector fock_vector_from_json(const Json& j);

Json to_json(const Subspace& subspace);
/// Re-certifies the stored k_max on load and rejects overclaims.
Subspace subspace_from_json(const Json& j, double tol = kDefaultTol);

Json to_json(const OperatorMatrix& op);
OperatorMatrix operator_matrix_from_json(const Json& j);

Json to_json(const Ensemble& ensemble);
Ensemble ensemble_from_json(const Json& j, double tol = kDefaultTol);

Json to_json(const ReversibilityReport& report);

Json to_json(const FidelityReport& report);
/// Per-trial dump: header "trial,branch,fidelity" then one row per trial.
std::string to_csv(const FidelityReport& report);

enum class ExperimentKind { kRecovery, kFailure };

struct SimulationSpec {
  ExperimentConfig config;
  ExperimentKind kind = ExperimentKind::kRecovery;
};

/// Config file for the simulate command:
///   {"subspace": subspace, "k": int, "eta": real, "trials": int,
///    "seed": int, "tol": real, "experiment": "recovery" | "failure"}
/// Everything but "subspace" has a default (k 1, eta 0.1, trials 1000,
/// seed 0, tol 1e-10, experiment "recovery").
SimulationSpec simulation_spec_from_json(const Json& j, double tol = kDefaultTol);

/// Parses a JSON document from a file, mapping I/O and syntax errors to
/// std::invalid_argument.
Json load_json_file(const std::string& path);

}  // namespace jumpback
