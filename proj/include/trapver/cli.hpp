// Copyright 2026 The trapver Authors
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

#ifndef TRAPVER_CLI_HPP
#define TRAPVER_CLI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trapver/bounds.hpp"
#include "trapver/serialize.hpp"

namespace trapver::cli {

enum class Command { none, carve, simulate, verify, bounds, ft, replay, twirl_check };

/// Exit codes shared by every subcommand.
inline constexpr int kExitAccept = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitReject = 2;

/// Raised for malformed or conflicting options. The message names the option.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a replayed artifact does not reproduce.
class ReplayMismatch : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct SessionConfig {
    Command command = Command::none;
    bool show_help = false;
    std::string help_text;

    uint64_t seed = 0;
    std::string out_path;
    std::string format = "json";
    bool format_explicit = false;
    int cap = kDefaultQubitCap;
    int threads = 0;

    int cols = kMinTargetCols;
    int rows = kMinTargetRows;

    std::string carve_kind = "target";
    bool check_isomorphism = false;

    std::string graph_path;
    std::string angles_path;
    int64_t samples = 0;
    std::string method = "mbqc";

    int kappa = 1;
    double eps_v = 0;
    double eps_p = 0;
    std::string attack_path;
    std::optional<Json> attack_doc;
    std::optional<int64_t> scheme_m;
    std::optional<double> scheme_l;
    bool auto_params = false;
    double beta = 0.05;
    bool include_records = true;
    std::optional<SchemeParams> derived;

    std::string bounds_verb;
    int num_qubits = 9;
    double eps_sampling = 0.01;
    double alpha1 = 0.1;
    double alpha2 = 0.2;
    double beta1 = 0.9;
    double beta2 = 0.9;

    std::optional<double> ft_eps;
    std::optional<double> fraction;
    int distance = 2;
    std::optional<int64_t> syndromes;
    double saw_prefactor = 1;
    int ops_per_syndrome = 6;
    int series_length = 100;
    bool table = false;

    int twirl_qubits = 1;
    std::string q;
    std::string q_prime;
    std::string basis = "full";

    std::string artifact_path;

    /// Scheme parameters in effect (explicit or derived).
    int64_t repetitions() const;
    double threshold() const;
};

/// TRAPVER_* variables of the current process.
std::map<std::string, std::string> environment_snapshot();

/// Precedence: flags > environment > config file (--config / TRAPVER_CONFIG) > defaults.
SessionConfig parse_config(const std::vector<std::string> &args, const std::map<std::string, std::string> &env);

struct ExecResult {
    int exit_code = kExitAccept;
    std::string output;  // what goes to stdout when no --out is given
    Json document;       // the JSON document, when the command produces one
};

/// Runs the command. Writes --out atomically (temporary file, then rename).
ExecResult execute(const SessionConfig &cfg);

/// Re-runs a verify artifact from its embedded config and seed and compares verdicts.
ExecResult replay(const std::string &artifact_path);

/// Writes text to path through a temporary file and rename.
void write_atomically(const std::string &path, const std::string &text);

/// Entry point used by the executable.
int run(int argc, char **argv);

}  // namespace trapver::cli

#endif
