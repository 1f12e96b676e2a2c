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

#include "jumpback/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace jumpback {

namespace {

const Json& require_field(const Json& j, const char* name, const char* context) {
  if (!j.is_object() || !j.contains(name)) {
    throw std::invalid_argument(std::string(context) + ": missing field \"" + name + "\"");
  }
  return j.at(name);
}

int require_int(const Json& j, const char* name, const char* context) {
  const Json& field = require_field(j, name, context);
  if (!field.is_number_integer()) {
    throw std::invalid_argument(std::string(context) + ": field \"" + name +
                                "\" must be an integer");
  }
  return field.get<int>();
}

double require_number(const Json& j, const char* name, const char* context) {
  const Json& field = require_field(j, name, context);
  if (!field.is_number()) {
    throw std::invalid_argument(std::string(context) + ": field \"" + name +
                                "\" must be a number");
  }
  return field.get<double>();
}

std::complex<double> complex_from_json(const Json& j, const char* context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument(std::string(context) + ": amplitudes must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(const std::complex<double>& z) { return Json::array({z.real(), z.imag()}); }

Json branch_to_json(const BranchStats& b) {
  Json j;
  j["count"] = b.count;
  j["mean_fidelity"] = b.mean_fidelity;
  j["min_fidelity"] = b.min_fidelity;
  return j;
}

}  // namespace

Json to_json(const FockVector& state) {
  Json j;
  j["n_max"] = state.n_max();
  Json amps = Json::array();
  for (int n = 0; n < state.dim(); ++n) amps.push_back(complex_to_json(state.amplitude(n)));
  j["amplitudes"] = std::move(amps);
  return j;
}

FockVector fock_vector_from_json(const Json& j) {
  const char* ctx = "state";
  const int n_max = require_int(j, "n_max", ctx);
  if (n_max < 0) {
    throw std::invalid_argument("state: n_max must be non-negative");
  }
  const Json& amps = require_field(j, "amplitudes", ctx);
  if (!amps.is_array() || static_cast<int>(amps.size()) != n_max + 1) {
    throw std::invalid_argument("state: amplitudes must be an array of length n_max + 1");
  }
  std::vector<std::complex<double>> values;
  values.reserve(amps.size());
  for (const Json& a : amps) values.push_back(complex_from_json(a, ctx));
  return FockVector(n_max, std::move(values));
}

Json to_json(const Subspace& subspace) {
  Json j;
  j["n_max"] = subspace.n_max();
  Json basis = Json::array();
  for (const FockVector& b : subspace.basis()) basis.push_back(to_json(b));
  j["basis"] = std::move(basis);
  j["k_max"] = subspace.k_max();
  return j;
}

Subspace subspace_from_json(const Json& j, double tol) {
  const char* ctx = "subspace";
  const int n_max = require_int(j, "n_max", ctx);
  const Json& basis_json = require_field(j, "basis", ctx);
  if (!basis_json.is_array()) {
    throw std::invalid_argument("subspace: basis must be an array of states");
  }
  std::vector<FockVector> basis;
  basis.reserve(basis_json.size());
  for (const Json& b : basis_json) basis.push_back(fock_vector_from_json(b));
  const int k_max = require_int(j, "k_max", ctx);
  if (k_max < 0) {
    throw std::invalid_argument("subspace: k_max must be non-negative");
  }
  Subspace loaded(n_max, std::move(basis), 0, tol);
  if (k_max > 0 && certified_multiplicity(loaded, tol) < k_max) {
    throw std::invalid_argument("subspace: stored k_max exceeds what re-certification allows");
  }
  return loaded.with_k_max(k_max);
}

Json to_json(const OperatorMatrix& op) {
  Json j;
  j["n_max"] = op.n_max();
  Json rows = Json::array();
  for (int r = 0; r < op.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < op.dim(); ++c) row.push_back(complex_to_json(op.entries()(r, c)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

OperatorMatrix operator_matrix_from_json(const Json& j) {
  const char* ctx = "operator";
  const int n_max = require_int(j, "n_max", ctx);
  if (n_max < 0) {
    throw std::invalid_argument("operator: n_max must be non-negative");
  }
  const int d = n_max + 1;
  const Json& rows = require_field(j, "entries", ctx);
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw std::invalid_argument("operator: entries must be n_max + 1 rows");
  }
  Eigen::MatrixXcd entries(d, d);
  for (int r = 0; r < d; ++r) {
    const Json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw std::invalid_argument("operator: entries rows must have n_max + 1 columns");
    }
    for (int c = 0; c < d; ++c) entries(r, c) = complex_from_json(row[c], ctx);
  }
  return OperatorMatrix(std::move(entries));
}

Json to_json(const Ensemble& ensemble) {
  Json j;
  Json members = Json::array();
  for (const EnsembleMember& m : ensemble.members()) {
    Json member;
    member["state"] = to_json(m.state);
    member["prior"] = m.prior;
    members.push_back(std::move(member));
  }
  j["members"] = std::move(members);
  return j;
}

Ensemble ensemble_from_json(const Json& j, double tol) {
  const char* ctx = "ensemble";
  const Json& members_json = require_field(j, "members", ctx);
  if (!members_json.is_array() || members_json.empty()) {
    throw std::invalid_argument("ensemble: members must be a non-empty array");
  }
  std::vector<EnsembleMember> members;
  members.reserve(members_json.size());
  for (const Json& m : members_json) {
    EnsembleMember member;
    member.state = fock_vector_from_json(require_field(m, "state", ctx));
    member.prior = require_number(m, "prior", ctx);
    members.push_back(std::move(member));
  }
  return Ensemble(std::move(members), tol);
}

Json to_json(const ReversibilityReport& report) {
  Json j;
  j["is_reversible"] = report.is_reversible;
  j["k"] = report.k;
  j["gram_deviation"] = report.gram_deviation;
  if (report.violating_pair.has_value()) {
    j["violating_pair"] = Json::array({report.violating_pair->first,
                                       report.violating_pair->second});
  } else {
    j["violating_pair"] = nullptr;
  }
  return j;
}

Json to_json(const FidelityReport& report) {
  Json j;
  Json trials = Json::array();
  for (const TrialRecord& t : report.trials) {
    Json record;
    record["trial"] = t.trial;
    record["jumps"] = t.jumps_fired;
    record["fidelity"] = t.fidelity;
    trials.push_back(std::move(record));
  }
  j["trials"] = std::move(trials);
  j["mean_fidelity"] = report.mean_fidelity;
  j["min_fidelity"] = report.min_fidelity;
  Json hist = Json::object();
  for (const auto& [jumps, count] : report.jump_histogram) {
    hist[std::to_string(jumps)] = count;
  }
  j["jump_histogram"] = std::move(hist);
  j["jump_branch"] = branch_to_json(report.jump_branch);
  j["no_jump_branch"] = branch_to_json(report.no_jump_branch);
  return j;
}

std::string to_csv(const FidelityReport& report) {
  std::string out = "trial,branch,fidelity\n";
  char buffer[64];
  for (const TrialRecord& t : report.trials) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", t.fidelity);
    out += std::to_string(t.trial);
    out += t.jumps_fired > 0 ? ",jump," : ",no-jump,";
    out += buffer;
    out += '\n';
  }
  return out;
}

SimulationSpec simulation_spec_from_json(const Json& j, double tol) {
  const char* ctx = "simulation config";
  SimulationSpec spec;
  spec.config.subspace = subspace_from_json(require_field(j, "subspace", ctx), tol);
  spec.config.k = j.contains("k") ? require_int(j, "k", ctx) : 1;
  const double eta = j.contains("eta") ? require_number(j, "eta", ctx) : 0.1;
  spec.config.detection = DetectionModel(eta);
  spec.config.trials = j.contains("trials") ? require_int(j, "trials", ctx) : 1000;
  spec.config.rng_seed =
      j.contains("seed") ? static_cast<std::uint64_t>(require_int(j, "seed", ctx)) : 0;
  spec.config.tol = j.contains("tol") ? require_number(j, "tol", ctx) : tol;
  std::string kind = "recovery";
  if (j.contains("experiment")) {
    const Json& field = j.at("experiment");
    if (!field.is_string()) {
      throw std::invalid_argument("simulation config: experiment must be a string");
    }
    kind = field.get<std::string>();
  }
  if (kind == "recovery") {
    spec.kind = ExperimentKind::kRecovery;
  } else if (kind == "failure") {
    spec.kind = ExperimentKind::kFailure;
  } else {
    throw std::invalid_argument(
        "simulation config: experiment must be \"recovery\" or \"failure\"");
  }
  return spec;
}

Json load_json_file(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw std::invalid_argument("cannot open input file: " + path);
  }
  try {
    return Json::parse(stream);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace jumpback
