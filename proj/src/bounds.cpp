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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trapver/bounds.hpp"

namespace trapver {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(int n) {
    cpp_int out = 1;
    for (int i = 2; i <= n; i++) {
        out *= i;
    }
    return out;
}

cpp_int binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

void check_probability(double x, const char *name, bool open_low, bool open_high) {
    bool ok = std::isfinite(x) && (open_low ? x > 0 : x >= 0) && (open_high ? x < 1 : x <= 1);
    if (!ok) {
        throw std::invalid_argument(std::string(name) + " is outside its allowed range");
    }
}

double clamp01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

}  // namespace

std::string rational_string(const Rational &r) {
    std::ostringstream out;
    out << numerator(r);
    if (denominator(r) != 1) {
        out << "/" << denominator(r);
    }
    return out.str();
}

double rational_to_double(const Rational &r) {
    return r.convert_to<double>();
}

Rational delta_kappa(int kappa) {
    if (kappa < 1) {
        throw std::invalid_argument("kappa must be at least 1");
    }
    return Rational(factorial(kappa) * factorial(kappa + 1), factorial(2 * kappa + 1));
}

AttackClass normalize(AttackClass a) {
    if (a.kappa < 1) {
        throw std::invalid_argument("kappa must be at least 1");
    }
    if (a.lambda < 1 || a.lambda > 2 * a.kappa + 1) {
        throw std::invalid_argument("lambda must lie in [1, 2 kappa + 1]");
    }
    if (a.xi < 0 || a.xi > a.lambda) {
        throw std::invalid_argument("xi must lie in [0, lambda]");
    }
    a.xi = std::max(a.xi, a.lambda - a.xi);
    if (a.lambda <= 2 * a.kappa && a.xi > a.kappa) {
        throw std::invalid_argument("more attacked rounds of one parity than there are traps of that parity");
    }
    return a;
}

AttackGap attack_gap(AttackClass a) {
    a = normalize(a);
    const int k = a.kappa;
    AttackGap out;
    out.cls = a;
    if (a.lambda == 2 * k + 1) {
        out.trap_fidelity = delta_kappa(k);
        out.target_fidelity_bound = 0;
        out.gap = out.trap_fidelity;
        return out;
    }
    const int l = a.lambda;
    cpp_int num = l * binomial(2 * k + 1 - l, k - a.xi) + (2 * k + 1 - l) * binomial(2 * k - l, k - a.xi);
    cpp_int den = binomial(2 * k + 1, k) * (k + 1);
    out.trap_fidelity = Rational(num, den);
    out.target_fidelity_bound = 1 - Rational(l, 2 * k + 1);
    out.gap = out.trap_fidelity - out.target_fidelity_bound;
    return out;
}

std::vector<AttackClass> attack_classes(int kappa) {
    if (kappa < 1) {
        throw std::invalid_argument("kappa must be at least 1");
    }
    std::vector<AttackClass> out;
    for (int l = 1; l <= 2 * kappa; l++) {
        for (int xi = (l + 1) / 2; xi <= std::min(kappa, l); xi++) {
            out.push_back({kappa, l, xi});
        }
    }
    out.push_back({kappa, 2 * kappa + 1, kappa + 1});
    return out;
}

Rational max_attack_gap(int kappa) {
    auto classes = attack_classes(kappa);
    Rational best = attack_gap(classes.front()).gap;
    for (const auto &c : classes) {
        best = std::max(best, attack_gap(c).gap);
    }
    return best;
}

SchemeParams theorem1_params(int num_qubits, int kappa, double eps_v, double eps_p, double beta) {
    if (num_qubits < 1 || kappa < 1) {
        throw std::invalid_argument("qubit count and kappa must be at least 1");
    }
    check_probability(beta, "beta", true, true);
    check_probability(eps_v, "eps_v", false, true);
    check_probability(eps_p, "eps_p", false, true);
    if (eps_v + eps_p == 0) {
        throw NoiselessBudgetError(
            "noiseless case: eps_v + eps_p = 0 leaves the repetition count unbounded; any M with l = 1 is complete");
    }
    const double n = num_qubits;
    const double k = kappa;
    const double budget = eps_v + eps_p;
    SchemeParams p;
    p.repetitions_real = std::log(1 / beta) / (2 * k * k * n * n * budget * budget);
    p.repetitions = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(p.repetitions_real)));
    p.threshold_raw = 1 - k * n * (2 * eps_v + 4 * eps_p);
    p.threshold = clamp01(p.threshold_raw);
    p.completeness_confidence = 1 - beta;
    p.soundness_confidence = 1 - beta;
    const double comp_rad = n * (eps_v + 3 * eps_p);
    p.completeness_raw = 1 - std::sqrt(comp_rad);
    p.completeness = clamp01(p.completeness_raw);
    const double sound_rad = k * n * (3 * eps_v + 5 * eps_p) + rational_to_double(delta_kappa(kappa));
    p.soundness_raw = std::sqrt(sound_rad);
    p.soundness = clamp01(p.soundness_raw);
    if (p.threshold_raw < 0) {
        p.warnings.push_back("acceptance fraction is negative");
    }
    if (comp_rad > 1) {
        p.warnings.push_back("completeness radicand exceeds 1");
    }
    if (sound_rad > 1) {
        p.warnings.push_back("soundness radicand exceeds 1");
    }
    p.out_of_regime = !p.warnings.empty();
    return p;
}

SchemeParams theorem2_params(double eps_sampling, int kappa, double beta) {
    check_probability(eps_sampling, "eps''", true, true);
    check_probability(beta, "beta", true, true);
    if (kappa < 1) {
        throw std::invalid_argument("kappa must be at least 1");
    }
    SchemeParams p;
    p.repetitions_real = std::log(1 / beta) / (2 * eps_sampling * eps_sampling);
    p.repetitions = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(p.repetitions_real)));
    p.threshold_raw = 1 - 2 * eps_sampling;
    p.threshold = clamp01(p.threshold_raw);
    p.completeness_confidence = 1 - beta;
    p.soundness_confidence = 1 - beta;
    p.completeness_raw = 1 - std::sqrt(eps_sampling);
    p.completeness = clamp01(p.completeness_raw);
    const double sound_rad = 3 * eps_sampling + rational_to_double(delta_kappa(kappa));
    p.soundness_raw = std::sqrt(sound_rad);
    p.soundness = clamp01(p.soundness_raw);
    if (p.threshold_raw < 0) {
        p.warnings.push_back("acceptance fraction is negative");
    }
    if (sound_rad > 1) {
        p.warnings.push_back("soundness radicand exceeds 1");
    }
    p.out_of_regime = !p.warnings.empty();
    return p;
}

HardnessBound theorem3_epsilon(double alpha1, double alpha2, double beta1, double beta2, int num_qubits) {
    check_probability(alpha1, "alpha1", false, false);
    check_probability(alpha2, "alpha2", false, false);
    check_probability(beta1, "beta1", false, false);
    check_probability(beta2, "beta2", false, false);
    if (num_qubits < 1) {
        throw std::invalid_argument("qubit count must be at least 1");
    }
    const double tail = std::ldexp(1.0, -num_qubits);
    HardnessBound out;
    out.feasible = beta1 + beta2 - tail >= 1;
    out.epsilon = (beta1 + beta2 - 1 - tail) * alpha1 * alpha2 / 2;
    return out;
}

}  // namespace trapver
