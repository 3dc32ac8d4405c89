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


#ifndef QPATH_HARNESS_H_
#define QPATH_HARNESS_H_

// Matched experiments: the ontic engine is sampled shot by shot, the quantum
// rules are enumerated exactly, and the two are compared.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpath/circuit.h"
#include "qpath/classes.h"
#include "qpath/ontic.h"
#include "qpath/outcome.h"
#include "qpath/preparation.h"
#include "qpath/stats.h"

namespace qpath {

enum class RunMode { kCompare, kOnticOnly, kQuantumExact };
enum class SampledEngine { kOntic, kQuantum };
enum class PrepMode { kSource, kSieve };

std::string to_string(RunMode mode);
std::string to_string(SampledEngine engine);
RunMode parse_run_mode(std::string_view s);
SampledEngine parse_engine(std::string_view s);
OnticFault parse_fault(std::string_view s);

struct PreparationSpec {
    PrepMode mode = PrepMode::kSource;
    PathIndex path = 0;
    JunkSampler junk;

    /// "path=J[,mode=source|sieve][,junk=...]" with a one-based path.
    static PreparationSpec parse(std::string_view text);
    std::string to_string() const;
};

struct ExperimentConfig {
    Circuit circuit{1, {}};
    /// Where the circuit came from; echoed in the report.
    std::string circuit_ref;
    PreparationSpec prepare;
    std::uint64_t shots = 1;
    std::uint64_t seed = 0;
    RunMode mode = RunMode::kCompare;
    SampledEngine engine = SampledEngine::kOntic;
    /// Keep only shots whose record contains all of these events.
    std::optional<OutcomeRecord> postselect;
    /// Record every trajectory and check it against the class labels.
    bool trace = false;
    /// When non-empty (and trace is on), trajectories are written here as JSON lines.
    std::string trace_path;
    /// When non-empty (and trace is on), one congruence report per shot is written here.
    std::string congruence_path;
    bool check_invariants = false;
    std::size_t branch_cap = kDefaultBranchCap;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
    /// Fewer accepted shots than this give an inconclusive verdict.
    std::uint64_t min_shots = 1000;
    OnticFault fault = OnticFault::kNone;
    SieveOptions sieve;

    void validate() const;
};

enum class Verdict { kPass, kFail, kInconclusive, kNone };
std::string to_string(Verdict v);

struct OutcomeRow {
    OutcomeRecord record;
    std::uint64_t count = 0;
    double frequency = 0.0;
    std::optional<double> exact;
    Interval ci;
    bool inside = true;
};

struct CongruenceSummary {
    bool enabled = false;
    std::uint64_t shots_checked = 0;
    std::uint64_t violations = 0;
    double max_deviation = 0.0;
    std::optional<std::uint64_t> first_shot;
    std::size_t first_boundary = 0;
    std::string first_message;
};

struct ExperimentReport {
    std::string circuit_name;
    std::string circuit_ref;
    std::size_t width = 0;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    RunMode mode = RunMode::kCompare;
    SampledEngine engine = SampledEngine::kOntic;
    std::string preparation;
    std::string postselect;
    bool invariants_checked = false;

    /// Shots that survived post-selection.
    std::uint64_t accepted_shots = 0;
    std::vector<OutcomeRow> outcomes;
    std::optional<double> tvd;
    std::optional<ChiSquareResult> chi_square;
    std::uint64_t hard_fails = 0;
    bool all_inside = true;
    CongruenceSummary congruence;
    OnticDiagnostics diagnostics;
    std::uint64_t sieve_attempts = 0;
    Verdict verdict = Verdict::kNone;
    std::string verdict_reason;
    double runtime_seconds = 0.0;

    /// Observed count for `record` (0 if never seen).
    std::uint64_t count(const OutcomeRecord &record) const;
    const OutcomeRow *row(const OutcomeRecord &record) const;
};

/// Exact distribution restricted to records matching `filter`, renormalized.
/// Throws ImpossibleOutcome if the filter has zero probability.
OutcomeDistribution conditional_distribution(const OutcomeDistribution &exact, const OutcomeRecord &filter);

/// Throws BranchCapExceeded in compare / quantum-exact mode when the outcome
/// tree is too large, and InvariantViolation if a checked engine assertion fires.
ExperimentReport run_experiment(const ExperimentConfig &config);

/// Deterministic JSON; runtime is left out unless asked for, so that reruns
/// with the same seed are byte-identical.
std::string report_to_json(const ExperimentReport &report, bool include_runtime = false);
std::string report_to_csv(const ExperimentReport &report);

/// {"shot": i, "layers": [{"deviation": d}, ...], "pass": bool} on one line.
std::string congruence_to_json(const CongruenceReport &report);

}  // namespace qpath

#endif  // QPATH_HARNESS_H_
