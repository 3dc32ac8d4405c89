// Copyright 2026 The qpath Authors
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


// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "qpath/classes.h"
#include "qpath/compiler.h"
#include "qpath/harness.h"
#include "qpath/quantum.h"
#include "qpath/scenarios.h"
#include "qpath/stats.h"

using namespace qpath;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            if (pass) {
                detail << "first failure: " << what << "; ";
            }
            pass = false;
        }
    }
};

ExperimentConfig scenario_config(const Scenario &s, std::uint64_t shots, std::uint64_t seed) {
    ExperimentConfig c;
    c.circuit = s.circuit;
    c.circuit_ref = s.file;
    c.prepare.path = s.input;
    c.shots = shots;
    c.seed = seed;
    c.postselect = s.postselect;
    return c;
}

// Mach-Zehnder sweep: sampled D1 frequency against sin^2(w/2), exact
// enumeration against the closed form.
void mach_zehnder_law(Outcome &o) {
    constexpr std::uint64_t kShots = 100000;
    double worst_exact = 0;
    double worst_time = 0;
    for (int k = 0; k <= 8; ++k) {
        const double omega = k * std::numbers::pi / 8;
        const double expected = std::pow(std::sin(omega / 2), 2);
        Circuit mz = mach_zehnder(omega);
        const auto d1 = OutcomeRecord{{OutcomeEvent::clicked(mz.depth() - 1, 0)}};
        const auto d2 = OutcomeRecord{{OutcomeEvent::clicked(mz.depth() - 1, 1)}};

        OutcomeDistribution exact = exact_outcome_distribution(mz, QuantumState::basis(2, 0));
        const double e1 = exact.count(d1) ? exact.at(d1) : 0.0;
        const double e2 = exact.count(d2) ? exact.at(d2) : 0.0;
        worst_exact = std::max({worst_exact, std::abs(e1 - expected), std::abs(e2 - (1 - expected))});

        ExperimentConfig c;
        c.circuit = mz;
        c.shots = kShots;
        c.seed = 1000 + k;
        c.mode = RunMode::kOnticOnly;
        const auto start = Clock::now();
        ExperimentReport r = run_experiment(c);
        const double t = seconds_since(start);
        worst_time = std::max(worst_time, t);
        const std::uint64_t n1 = r.count(d1);
        const Interval ci = binomial_interval(expected, kShots);
        o.require(ci.contains(static_cast<double>(n1) / kShots), "D1 frequency outside 5 sigma at k=" + std::to_string(k));
        o.require(t < 5.0, "runtime over 5 s at k=" + std::to_string(k));
    }
    o.require(worst_exact <= 1e-12, "exact enumeration off closed form");
    o.detail << "max exact error " << worst_exact << ", slowest omega " << worst_time << " s";
}

// Every traced trajectory across the library stays on its predicted label.
void trajectory_congruence(Outcome &o) {
    const auto lib = builtin_scenarios();
    const std::uint64_t per = (10000 + lib.size() - 1) / lib.size();
    std::uint64_t shots = 0, violations = 0;
    double worst = 0;
    for (const Scenario &s : lib) {
        o.require(s.circuit.width() <= 6 && s.circuit.depth() <= 12, s.file + " exceeds library bounds");
        ExperimentConfig c = scenario_config(s, per, 77);
        c.postselect.reset();
        c.mode = RunMode::kOnticOnly;
        c.trace = true;
        ExperimentReport r = run_experiment(c);
        shots += r.congruence.shots_checked;
        violations += r.congruence.violations;
        worst = std::max(worst, r.congruence.max_deviation);
        o.require(r.congruence.violations == 0, s.file + ": " + r.congruence.first_message);
    }
    o.require(shots >= 10000, "fewer than 10^4 traced shots");
    o.require(worst < 1e-9, "label deviation at or above 1e-9");
    o.detail << shots << " shots, " << violations << " violations, max deviation " << worst;
}

// Elitzur-Vaidman post-selected on the mid-circuit detector staying silent.
void collapse_imitation(Outcome &o) {
    Circuit ev = elitzur_vaidman();
    ExperimentConfig c;
    c.circuit = ev;
    c.shots = 100000;
    c.seed = 5;
    c.postselect = parse_record_key("L2:N");
    ExperimentReport r = run_experiment(c);

    // Quantum no-click branch computed directly from the state vector.
    QuantumState psi = QuantumState::basis(2, 0);
    apply_layer_unitaries(psi, ev, 0);
    psi = collapse_layer(psi, ev.partition(1).detectors, std::nullopt);
    apply_layer_unitaries(psi, ev, 2);
    const std::size_t last = ev.depth() - 1;
    double tvd = 0;
    for (PathIndex j = 0; j < 2; ++j) {
        const double p = std::norm(psi[j]);
        const auto rec = OutcomeRecord{{OutcomeEvent::silent(1), OutcomeEvent::clicked(last, j)}};
        const double f = r.accepted_shots ? static_cast<double>(r.count(rec)) / r.accepted_shots : 0.0;
        tvd += 0.5 * std::abs(p - f);
    }
    o.require(r.accepted_shots > 0, "no shots survived post-selection");
    o.require(tvd < 0.01, "TVD not below 0.01");
    o.require(r.hard_fails == 0, "impossible outcomes observed");
    o.require(r.verdict == Verdict::kPass, "harness verdict " + to_string(r.verdict));
    o.detail << "accepted " << r.accepted_shots << ", TVD " << tvd << ", hard fails " << r.hard_fails;
}

// Randomized layers and strength patterns, counted by splitter case.
void delta_commutation(Outcome &o) {
    Rng rng(2024);
    int checked = 0, failures = 0;
    std::uint64_t below = 0, equal = 0, mixed = 0;
    const auto start = Clock::now();
    int attempts = 0;
    while (checked < 10000 && ++attempts < 1000000) {
        const std::size_t n = 2 + rng() % 5;
        // Layer 0 of a random circuit has no detectors, later inner layers may.
        Circuit c = random_circuit(n, 4, rng());
        const std::size_t k = rng() % 3;
        const Layer &layer = c.layer(k);
        std::vector<Strength> tau(n);
        for (auto &t : tau) {
            t = rng() % 5 == 0 ? Strength::zero() : Strength::pow2(static_cast<std::uint32_t>(rng() % 3));
        }
        if (!delta_commutation_applies(layer, tau)) {
            continue;
        }
        ++checked;
        if (!check_delta_commutation(layer, tau, n, 1e-12)) {
            ++failures;
        }
        const Strength top = max_strength(tau);
        for (auto [s, t] : c.partition(k).splitters) {
            if (tau[s] < top && tau[t] < top) {
                ++below;
            } else if (tau[s] == top && tau[t] == top) {
                ++equal;
            } else {
                ++mixed;
            }
        }
    }
    const double t = seconds_since(start);
    o.require(checked == 10000, "could not draw 10^4 admissible configurations");
    o.require(failures == 0, std::to_string(failures) + " configurations disagree");
    o.require(below > 0 && equal > 0 && mixed > 0, "a splitter case was never exercised");
    o.require(t < 10.0, "runtime over 10 s");
    o.detail << checked << " configurations; splitter cases " << below << "/" << equal << "/" << mixed << "; " << t
             << " s";
}

// Reck round trip plus an ontic run of every compiled circuit.
void compiler_round_trip(Outcome &o) {
    constexpr std::uint64_t kShots = 100000;
    double worst = 0;
    int outside = 0, runs = 0;
    for (std::size_t n = 2; n <= 6; ++n) {
        for (int i = 0; i < 100; ++i) {
            const CMatrix u = random_unitary(n, 100 * n + i);
            const Circuit compiled = reck_decompose(u);
            worst = std::max(worst, ray_matrix_distance(reconstruct_unitary(compiled), u));

            std::vector<Layer> layers = compiled.layers();
            Layer detect;
            for (PathIndex j = 0; j < n; ++j) {
                detect.gates.push_back(Detector{j});
            }
            layers.push_back(detect);
            ExperimentConfig c;
            c.circuit = Circuit(n, std::move(layers));
            c.prepare.path = i % n;
            c.shots = kShots;
            c.seed = 9000 + 100 * n + i;
            c.mode = RunMode::kOnticOnly;
            ExperimentReport r = run_experiment(c);
            ++runs;
            for (PathIndex j = 0; j < n; ++j) {
                const double p = std::norm(u(j, i % n));
                const auto rec = OutcomeRecord{{OutcomeEvent::clicked(c.circuit.depth() - 1, j)}};
                if (!binomial_interval(p, kShots).contains(static_cast<double>(r.count(rec)) / kShots)) {
                    ++outside;
                }
            }
        }
    }
    o.require(worst < 1e-9, "reconstruction deviation at or above 1e-9");
    o.require(outside == 0, std::to_string(outside) + " click frequencies outside 5 sigma");
    o.detail << runs << " unitaries, max deviation " << worst << ", outside " << outside;
}

// The same suite with junk amplitudes all zero and drawn from the unit disk.
void preparation_invariance(Outcome &o) {
    int compared = 0, disagree = 0;
    for (const Scenario &s : builtin_scenarios()) {
        ExperimentConfig zero = scenario_config(s, 100000, 300);
        zero.prepare.junk = JunkSampler(JunkSampler::Kind::kZero);
        ExperimentConfig disk = scenario_config(s, 100000, 301);
        disk.prepare.junk = JunkSampler(JunkSampler::Kind::kDisk);
        ExperimentReport a = run_experiment(zero);
        ExperimentReport b = run_experiment(disk);
        o.require(a.verdict == Verdict::kPass, s.file + " zero junk: " + a.verdict_reason);
        o.require(b.verdict == Verdict::kPass, s.file + " disk junk: " + b.verdict_reason);
        std::set<std::string> keys;
        for (const auto *rep : {&a, &b}) {
            for (const OutcomeRow &row : rep->outcomes) {
                keys.insert(record_key(row.record));
            }
        }
        for (const std::string &key : keys) {
            const OutcomeRecord rec = parse_record_key(key);
            ++compared;
            if (!frequencies_agree(a.count(rec), a.accepted_shots, b.count(rec), b.accepted_shots)) {
                ++disagree;
                o.require(false, s.file + " outcome " + key + " differs");
            }
        }
    }
    o.detail << compared << " outcome frequencies compared, " << disagree << " outside joint CI";
}

// Hard engine assertions stay silent across every scenario and preparation mode.
void exactness_invariants(Outcome &o) {
    std::uint64_t gates = 0;
    for (const Scenario &s : builtin_scenarios()) {
        for (PrepMode mode : {PrepMode::kSource, PrepMode::kSieve}) {
            ExperimentConfig c = scenario_config(s, 20000, 400);
            c.prepare.mode = mode;
            c.check_invariants = true;
            try {
                ExperimentReport r = run_experiment(c);
                gates += r.diagnostics.checked_gates;
                o.require(r.verdict == Verdict::kPass, s.file + ": " + r.verdict_reason);
            } catch (const InvariantViolation &e) {
                o.require(false, s.file + ": " + e.what());
            }
        }
    }
    o.require(gates > 0, "no gates were checked");
    o.detail << gates << " checked gate applications";
}

// Fixed seed gives byte-identical reports, also across thread counts.
void reproducibility(Outcome &o) {
    int reports = 0;
    for (const Scenario &s : builtin_scenarios()) {
        ExperimentConfig c = scenario_config(s, 20000, 500);
        c.threads = 1;
        const std::string first = report_to_json(run_experiment(c));
        c.threads = 1;
        const std::string second = report_to_json(run_experiment(c));
        c.threads = 4;
        const std::string third = report_to_json(run_experiment(c));
        o.require(first == second, s.file + " differs between runs");
        o.require(first == third, s.file + " differs across thread counts");
        ++reports;
    }
    o.detail << reports << " scenarios reproduced";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria = {
        {"AC1 mach-zehnder law", mach_zehnder_law},
        {"AC2 trajectory congruence", trajectory_congruence},
        {"AC3 collapse imitation", collapse_imitation},
        {"AC4 delta commutation", delta_commutation},
        {"AC5 compiler round trip", compiler_round_trip},
        {"AC6 preparation invariance", preparation_invariance},
        {"AC7 exactness invariants", exactness_invariants},
        {"AC8 reproducibility", reproducibility},
    };
    int failed = 0;
    for (const auto &[name, check] : criteria) {
        Outcome o;
        const auto start = Clock::now();
        try {
            check(o);
        } catch (const std::exception &e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::printf("%s %s (%.1f s) %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(start),
                    o.detail.str().c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
