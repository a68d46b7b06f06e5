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

// Acceptance run: one PASS/FAIL line per criterion. Sub-checks that are known to be
// unattainable are listed in kExpectedFailures; the exit status is nonzero on any
// other failure, or if an expected failure starts passing.

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "trapver/bounds.hpp"
#include "trapver/ftcalc.hpp"
#include "trapver/protocol.hpp"

using namespace trapver;

namespace {

// kappa = 1 with two attacked rounds of opposite parity has trap fidelity 1/2 and
// target fidelity 1/3, so the partial-attack gap is +1/6 rather than <= 0.
const std::set<std::string> kExpectedFailures = {"3b", "4b"};

struct Check {
    std::string id;
    bool ok;
    std::string detail;
};

struct Criterion {
    int number;
    std::string title;
    std::function<std::vector<Check>()> body;
};

std::string fmt(const char *f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Check> completeness() {
    auto t0 = std::chrono::steady_clock::now();
    RoundLayout layout = RoundLayout::for_target(carve_target(kMinTargetCols, kMinTargetRows), 1);
    const int64_t runs = 100000;
    SchemeResult res = run_scheme(layout, std::nullopt, {}, runs, 1.0, 2024);
    int64_t first_passes = 0;
    std::vector<uint64_t> outputs;
    for (int64_t i = 0; i < runs; i++) {
        first_passes += i < 1000 && res.records[i].accept;
        outputs.push_back(res.records[i].target_output_bits());
    }
    Distribution exact = sampler_distribution(layout.target());
    double tv = tv_distance(Distribution::empirical(exact.num_bits(), outputs), exact);
    double elapsed = seconds_since(t0);
    return {{"1a", first_passes == 1000 && res.verdict.passes == runs,
             fmt("acceptance %.0f/1000, %.0f/100000", first_passes, res.verdict.passes)},
            {"1b", tv <= 0.02, fmt("TV %.4f at 1e5 runs", tv)},
            {"1c", elapsed < 120, fmt("%.1f s", elapsed)}};
}

std::vector<Check> oracle_equivalence() {
    GraphSpec t = carve_target(5, 3);
    std::vector<double> deltas(t.size());
    for (const auto &v : t.vertices()) {
        deltas[v.id] = v.phi.radians();
    }
    Distribution mbqc = exact_output_distribution(t, deltas);
    std::vector<double> phis;
    for (GridAngle a : t.live_phis()) {
        phis.push_back(a.radians());
    }
    IsingInstance inst = ising_instance_for(t.induced_graph(), phis);
    double worst = 0;
    for (uint64_t x = 0; x < (uint64_t{1} << inst.num_spins); x++) {
        worst = std::max(worst, std::abs(ising_partition_probability(inst, x) - mbqc.probability(x)));
    }
    return {{"2", inst.num_spins <= 12 && worst <= 1e-10,
             fmt("%.0f qubits, max deviation %.2e", inst.num_spins, worst)}};
}

std::vector<Check> delta_identity() {
    auto t0 = std::chrono::steady_clock::now();
    bool max_ok = true;
    for (int k = 1; k <= 8; k++) {
        max_ok = max_ok && max_attack_gap(k) == delta_kappa(k);
    }
    std::vector<std::string> positive;
    for (int k = 1; k <= 8; k++) {
        for (const auto &c : attack_classes(k)) {
            if (c.lambda <= 2 * k && attack_gap(c).gap > 0) {
                std::ostringstream os;
                os << "(" << c.kappa << "," << c.lambda << "," << c.xi << ")=" << rational_string(attack_gap(c).gap);
                positive.push_back(os.str());
            }
        }
    }
    double elapsed = seconds_since(t0);
    std::string list;
    for (const auto &p : positive) {
        list += " " + p;
    }
    return {{"3a", max_ok, "max gap equals the closed form for kappa 1..8"},
            {"3b", positive.empty(), positive.empty() ? "all partial gaps <= 0" : "positive partial gaps:" + list},
            {"3c", elapsed < 1, fmt("%.3f s", elapsed)}};
}

AttackSpec z_attack(const RoundLayout &layout, const std::vector<AttackTarget> &where) {
    std::vector<std::pair<AttackTarget, Pauli>> letters;
    for (auto t : where) {
        letters.push_back({t, Pauli::Z});
    }
    return AttackSpec::single(layout.num_rounds(), layout.graph(0).size(), letters);
}

std::vector<Check> empirical_soundness() {
    auto t0 = std::chrono::steady_clock::now();
    RoundLayout layout = RoundLayout::for_target(carve_target(kMinTargetCols, kMinTargetRows), 1);
    const GraphSpec &t = layout.target();
    const int even = t.id_at(0, 0), odd = t.id_at(0, 1);
    const int64_t samples = 10000;
    FidelityEstimate full = estimate_fidelity_gap(layout, z_attack(layout, {{0, even}, {1, even}, {2, odd}}), samples, 41);
    const double third = 1.0 / 3;
    bool full_ok = std::abs(full.gap - third) <= 3 * full.gap_stderr;

    struct Partial {
        const char *name;
        std::vector<AttackTarget> where;
    };
    std::vector<Partial> partials = {
        {"lambda=1", {{0, even}}},
        {"lambda=2 same parity", {{0, even}, {1, even}}},
        {"lambda=2 opposite parity", {{0, even}, {1, odd}}},
    };
    bool partial_ok = true;
    std::string detail;
    for (const auto &p : partials) {
        FidelityEstimate f = estimate_fidelity_gap(layout, z_attack(layout, p.where), samples, 43);
        bool ok = f.gap <= 3 * f.gap_stderr;
        partial_ok = partial_ok && ok;
        detail += std::string(" ") + p.name + fmt(": %.4f +- %.4f", f.gap, f.gap_stderr) + (ok ? "" : " (>0)") + ";";
    }
    double elapsed = seconds_since(t0);
    return {{"4a", full_ok,
             fmt("all rounds: F_t^2 %.4f, F_c^2 %.4f, gap %.4f", full.trap_fidelity, full.target_fidelity, full.gap) +
                 fmt(" +- %.4f vs 1/3", full.gap_stderr)},
            {"4b", partial_ok, "partial:" + detail},
            {"4c", elapsed < 600, fmt("%.1f s", elapsed)}};
}

std::vector<Check> ft_numbers() {
    const double thr = physical_threshold();
    Overhead m100 = detection_overhead(thr / 100);
    Overhead m50 = detection_overhead(thr / 50);
    Overhead m20 = detection_overhead(thr / 20);
    const double ratio20 = m20.real / 3e8;
    return {{"5a", std::abs(thr - 0.0196943) <= 1e-6, fmt("threshold %.7f", thr)},
            {"5b", std::abs(m100.real - 54) <= 1, fmt("M(1/100) %.2f", m100.real)},
            {"5c", std::abs(m50.real / 2863 - 1) <= 0.05, fmt("M(1/50) %.1f", m50.real)},
            {"5d", ratio20 <= 2 && ratio20 >= 0.5,
             fmt("M(1/20) %.4g, ratio to 3e8 %.3f (leading digit differs)", m20.real, ratio20)}};
}

std::string pauli_string(int index, int n, const char *alphabet, int base) {
    std::string s;
    for (int i = 0; i < n; i++) {
        s += alphabet[index % base];
        index /= base;
    }
    return s;
}

std::vector<Check> twirl_oracle() {
    PhiloxStream rng(6, stream_id(0, StreamPurpose::fidelity));
    double off_full = 0, off_z = 0, diag = 0;
    for (int n = 1; n <= 2; n++) {
        const int full_count = 1 << (2 * n), z_count = 1 << n;
        for (int sample = 0; sample < 100; sample++) {
            Eigen::MatrixXcd rho = random_density_matrix(n, rng);
            for (int a = 0; a < full_count; a++) {
                std::string q = pauli_string(a, n, "IXYZ", 4);
                for (int b = 0; b < full_count; b++) {
                    std::string qp = pauli_string(b, n, "IXYZ", 4);
                    if (q != qp) {
                        off_full = std::max(off_full, twirl_check(n, q, qp, rho, TwirlBasis::full));
                    }
                }
                Eigen::MatrixXcd m = pauli_matrix(q);
                Eigen::MatrixXcd expected = std::ldexp(1.0, 2 * n) * m * rho * m;
                diag = std::max(diag, (twirl_sum(n, q, q, rho, TwirlBasis::full) - expected).norm());
            }
            for (int a = 0; a < z_count; a++) {
                for (int b = 0; b < z_count; b++) {
                    if (a != b) {
                        off_z = std::max(off_z, twirl_check(n, pauli_string(a, n, "IX", 2), pauli_string(b, n, "IX", 2),
                                                            rho, TwirlBasis::z_only));
                    }
                }
            }
        }
    }
    return {{"6a", off_full <= 1e-12, fmt("full basis max residual %.2e", off_full)},
            {"6b", off_z <= 1e-12, fmt("Z-only max residual %.2e", off_z)},
            {"6c", diag <= 1e-10, fmt("Q = Q' deviation from 4^n Q rho Q %.2e", diag)}};
}

std::vector<Check> blindness() {
    RoundLayout layout = RoundLayout::for_target(carve_target(kMinTargetCols, kMinTargetRows), 1);
    const int rounds = layout.num_rounds(), n = layout.graph(0).size();

    // Average prepared state per vertex: over theta on live vertices, over the
    // dummy bit on dummies.
    PhiloxStream key_rng(12, 0);
    SecretKey key = keygen(layout, key_rng);
    double worst = 0;
    for (int s = 0; s < rounds; s++) {
        for (int v = 0; v < n; v++) {
            bool dummy = layout.graph(key.order[s]).is_dummy(v);
            Amplitude rho[2][2] = {};
            const int variants = dummy ? 2 : 16;
            for (int k = 0; k < variants; k++) {
                SecretKey probe = key;
                if (dummy) {
                    probe.slots[s].d[v] = static_cast<uint8_t>(k);
                } else {
                    probe.slots[s].theta[v] = GridAngle::wrap(k);
                }
                StateVector psi = prepare_qubit(prepared_state(probe, layout, s, v));
                for (int i = 0; i < 2; i++) {
                    for (int j = 0; j < 2; j++) {
                        rho[i][j] += psi.amplitude(i) * std::conj(psi.amplitude(j)) / double(variants);
                    }
                }
            }
            worst = std::max({worst, std::abs(rho[0][0] - 0.5), std::abs(rho[1][1] - 0.5), std::abs(rho[0][1])});
        }
    }

    // Pooled chi-square over every (slot, vertex) delta marginal.
    const int keys = 10000;
    std::vector<std::vector<int>> hist(rounds * n, std::vector<int>(16));
    for (int i = 0; i < keys; i++) {
        PhiloxStream rng(99, stream_id(i, StreamPurpose::key));
        auto deltas = encrypt_angles(keygen(layout, rng), layout);
        for (int s = 0; s < rounds; s++) {
            for (int v = 0; v < n; v++) {
                hist[s * n + v][deltas[s][v].k()]++;
            }
        }
    }
    double chi2 = 0;
    const double expected = keys / 16.0;
    for (const auto &h : hist) {
        for (int c : h) {
            chi2 += (c - expected) * (c - expected) / expected;
        }
    }
    const double dof = 15.0 * hist.size();
    const double critical = boost::math::quantile(boost::math::chi_squared(dof), 0.99);
    return {{"7a", worst <= 1e-12, fmt("max deviation from I/2 %.2e", worst)},
            {"7b", chi2 <= critical, fmt("chi2 %.1f on %.0f dof, 1%% critical value %.1f", chi2, dof, critical)}};
}

bool rel_close(double got, double want) {
    return std::abs(got - want) <= 1e-12 * std::abs(want);
}

std::vector<Check> calculators() {
    SchemeParams t1 = theorem1_params(9, 1, 0.001, 0.001, 0.05);
    bool t1_ok = t1.repetitions == 4624 && rel_close(t1.threshold, 1 - 9 * (0.002 + 0.004)) &&
                 rel_close(t1.soundness, std::sqrt(9 * 0.008 + 1.0 / 3)) &&
                 std::abs(t1.soundness - 0.6367) < 5e-5;
    SchemeParams t2 = theorem2_params(0.01, 2, 0.05);
    bool t2_ok = t2.repetitions == 14979 && rel_close(t2.threshold, 0.98) && rel_close(t2.soundness, std::sqrt(0.13)) &&
                 std::abs(t2.soundness - 0.3606) < 5e-5;
    HardnessBound h = theorem3_epsilon(0.1, 0.2, 0.9, 0.9, 10);
    bool t3_ok = h.feasible && rel_close(h.epsilon, (0.8 - std::ldexp(1.0, -10)) * 0.02 / 2) &&
                 !theorem3_epsilon(1, 1, 0.5, 0.4, 10).feasible &&
                 std::abs(theorem3_epsilon(1, 1, 1, 1, 1000).epsilon - 0.5) <= 1e-12;
    return {{"8a", t1_ok, fmt("thm1 M %.0f, l %.3f, soundness %.4f", double(t1.repetitions), t1.threshold, t1.soundness)},
            {"8b", t2_ok, fmt("thm2 M %.0f, l %.2f, soundness %.4f", double(t2.repetitions), t2.threshold, t2.soundness)},
            {"8c", t3_ok, fmt("thm3 epsilon %.8f", h.epsilon)}};
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "completeness at zero noise", completeness},
        {2, "Ising oracle equivalence", oracle_equivalence},
        {3, "gap identity", delta_identity},
        {4, "empirical soundness", empirical_soundness},
        {5, "fault-tolerance numbers", ft_numbers},
        {6, "twirl oracle", twirl_oracle},
        {7, "blindness", blindness},
        {8, "parameter calculators", calculators},
    };
    int unexpected = 0;
    std::set<std::string> failed;
    for (const auto &c : criteria) {
        std::vector<Check> checks;
        try {
            checks = c.body();
        } catch (const std::exception &e) {
            checks = {{std::to_string(c.number), false, std::string("exception: ") + e.what()}};
        }
        bool all = true;
        std::string detail;
        for (const auto &ch : checks) {
            all = all && ch.ok;
            if (!ch.ok) {
                failed.insert(ch.id);
                if (!kExpectedFailures.count(ch.id)) {
                    unexpected++;
                }
            }
            detail += " [" + ch.id + (ch.ok ? " ok" : " FAILED") + (kExpectedFailures.count(ch.id) && !ch.ok ? ", expected" : "") +
                      "] " + ch.detail;
        }
        std::printf("%s criterion %d (%s):%s\n", all ? "PASS" : "FAIL", c.number, c.title.c_str(), detail.c_str());
        std::fflush(stdout);
    }
    for (const auto &id : kExpectedFailures) {
        if (!failed.count(id)) {
            std::printf("note: expected failure %s now passes; update the expected-failure list\n", id.c_str());
            unexpected++;
        }
    }
    std::printf("%d unexpected result(s)\n", unexpected);
    return unexpected == 0 ? 0 : 1;
}
