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

#ifndef TRAPVER_BOUNDS_HPP
#define TRAPVER_BOUNDS_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trapver/philox.hpp"

namespace trapver {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when q = 1.
std::string rational_string(const Rational &r);
double rational_to_double(const Rational &r);

/// kappa! (kappa+1)! / (2 kappa + 1)!
Rational delta_kappa(int kappa);

/// kappa traps per parity, lambda attacked rounds, xi of them attacked on even sites.
struct AttackClass {
    int kappa = 1;
    int lambda = 1;
    int xi = 1;
};

/// Validates and swaps parities so that xi >= lambda - xi.
AttackClass normalize(AttackClass a);

struct AttackGap {
    AttackClass cls;
    Rational trap_fidelity;
    Rational target_fidelity_bound;
    Rational gap;
};

AttackGap attack_gap(AttackClass a);

/// Every normalized class for kappa, including lambda = 2 kappa + 1.
std::vector<AttackClass> attack_classes(int kappa);

Rational max_attack_gap(int kappa);

/// Repetition count, acceptance fraction and the two (confidence, bound) pairs.
/// Clamped entries live in [0, 1]; raw entries are the formulas as written.
struct SchemeParams {
    int64_t repetitions = 1;
    double repetitions_real = 1;
    double threshold = 0;
    double threshold_raw = 0;
    double completeness_confidence = 0;
    double completeness = 0;
    double completeness_raw = 0;
    double soundness_confidence = 0;
    double soundness = 0;
    double soundness_raw = 0;
    bool out_of_regime = false;
    std::vector<std::string> warnings;
};

/// Raised when the noise budget is zero and the repetition count has no finite value.
class NoiselessBudgetError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

SchemeParams theorem1_params(int num_qubits, int kappa, double eps_v, double eps_p, double beta);
SchemeParams theorem2_params(double eps_sampling, int kappa, double beta);

struct HardnessBound {
    bool feasible = false;
    double epsilon = 0;
};

HardnessBound theorem3_epsilon(double alpha1, double alpha2, double beta1, double beta2, int num_qubits);

enum class TwirlBasis { full, z_only };

/// Tensor product of single-qubit Paulis, first letter = leftmost factor.
Eigen::MatrixXcd pauli_matrix(const std::string &letters);

/// sum_P P Q P rho P Q' P over the chosen Pauli basis.
Eigen::MatrixXcd twirl_sum(int num_qubits, const std::string &q, const std::string &q_prime,
                           const Eigen::MatrixXcd &rho, TwirlBasis basis);

/// Random density matrix rho = G G^+ / tr(G G^+) with complex Gaussian G.
Eigen::MatrixXcd random_density_matrix(int num_qubits, PhiloxStream &rng);

/// Frobenius norm of twirl_sum.
double twirl_check(int num_qubits, const std::string &q, const std::string &q_prime, const Eigen::MatrixXcd &rho,
                   TwirlBasis basis);

}  // namespace trapver

#endif
