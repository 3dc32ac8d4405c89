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


#include "qpath/harness.h"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qpath/quantum.h"
#include "qpath/rng.h"

namespace qpath {

namespace {

constexpr std::uint64_t kChunkShots = 4096;
constexpr double kMinPValue = 1e-3;
constexpr double kSigmas = 5.0;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

struct ChunkResult {
    std::map<OutcomeRecord, std::uint64_t> counts;
    std::uint64_t accepted = 0;
    OnticDiagnostics diagnostics;
    CongruenceSummary congruence;
    std::uint64_t sieve_attempts = 0;
    std::string trace_lines;
    std::string congruence_lines;
};

nlohmann::json state_json(std::uint64_t shot, std::size_t boundary, const OnticState &s, double deviation) {
    nlohmann::json u = nlohmann::json::array();
    for (const Complex &x : s.u) {
        u.push_back({x.real(), x.imag()});
    }
    nlohmann::json tau = nlohmann::json::array();
    for (const Strength &t : s.tau) {
        if (t.is_zero()) {
            tau.push_back(nullptr);
        } else {
            tau.push_back(t.exponent());
        }
    }
    nlohmann::json line = {{"shot", shot}, {"layer", boundary}, {"q", s.q + 1}, {"u", u}, {"tau", tau}};
    if (std::isfinite(deviation)) {
        line["deviation"] = deviation;
    } else {
        line["deviation"] = nullptr;
    }
    return line;
}

class ShotRunner {
   public:
    explicit ShotRunner(const ExperimentConfig &config)
        : config_(config), init_label_(ClassLabel::basis(config.circuit.width(), config.prepare.path)) {
        options_.fault = config.fault;
        options_.check_invariants = config.check_invariants;
        if (config.prepare.mode == PrepMode::kSieve) {
            raw_ = uniform_raw_sampler(config.circuit.width(), config.prepare.junk);
        }
    }

    void run_chunk(std::uint64_t begin, std::uint64_t end, ChunkResult &out) const {
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            run_shot(shot, out);
        }
    }

   private:
    OnticState prepare(std::uint64_t shot, ChunkResult &out) const {
        const JunkSampler &junk = config_.prepare.junk;
        Rng junk_rng = shot_stream(junk.own_seed().value_or(config_.seed), shot, StreamLane::kJunk);
        if (config_.prepare.mode == PrepMode::kSource) {
            return source_prepare(config_.circuit.width(), config_.prepare.path, junk, junk_rng);
        }
        // The raw sampler draws its junk from the preparation stream; a seeded
        // junk sampler still overrides it through the sampler itself.
        Rng prep_rng = shot_stream(config_.seed, shot, StreamLane::kPreparation);
        SieveResult r = sieve_prepare(raw_, config_.prepare.path, prep_rng, config_.sieve);
        out.sieve_attempts += r.attempts;
        return std::move(r.state);
    }

    void run_shot(std::uint64_t shot, ChunkResult &out) const {
        Rng rng = shot_stream(config_.seed, shot, StreamLane::kEngine);
        OutcomeRecord record;
        if (config_.engine == SampledEngine::kQuantum) {
            record = run_quantum_shot(config_.circuit, quantum_init(config_.prepare.path, config_.circuit.width()),
                                      rng)
                         .record;
        } else {
            OnticShot result = run_ontic_shot(config_.circuit, prepare(shot, out), rng, options_, config_.trace);
            out.diagnostics += result.diagnostics;
            if (config_.trace) {
                check(shot, result, out);
            }
            record = std::move(result.record);
        }
        if (config_.postselect && !record.matches(*config_.postselect)) {
            return;
        }
        ++out.accepted;
        ++out.counts[record];
    }

    void check(std::uint64_t shot, const OnticShot &result, ChunkResult &out) const {
        CongruenceReport c = verify_congruence(result.trajectory, result.record, config_.circuit, init_label_);
        c.shot = shot;
        if (!config_.congruence_path.empty()) {
            out.congruence_lines += congruence_to_json(c);
        }
        CongruenceSummary &sum = out.congruence;
        ++sum.shots_checked;
        sum.max_deviation = std::max(sum.max_deviation, c.max_deviation());
        if (!c.pass) {
            ++sum.violations;
            if (!sum.first_shot) {
                sum.first_shot = shot;
                sum.first_boundary = c.first_violation.value_or(0);
                sum.first_message = c.message;
            }
        }
        if (!config_.trace_path.empty()) {
            for (std::size_t b = 0; b < result.trajectory.size(); ++b) {
                const double dev = b < c.deviations.size() ? c.deviations[b] : 0.0;
                out.trace_lines += state_json(shot, b, result.trajectory[b], dev).dump();
                out.trace_lines += '\n';
            }
        }
    }

    const ExperimentConfig &config_;
    ClassLabel init_label_;
    OnticOptions options_;
    RawSampler raw_;
};

void merge(CongruenceSummary &into, const CongruenceSummary &from) {
    into.shots_checked += from.shots_checked;
    into.violations += from.violations;
    into.max_deviation = std::max(into.max_deviation, from.max_deviation);
    if (!into.first_shot && from.first_shot) {
        into.first_shot = from.first_shot;
        into.first_boundary = from.first_boundary;
        into.first_message = from.first_message;
    }
}

std::vector<ChunkResult> run_chunks(const ExperimentConfig &config) {
    const std::uint64_t n_chunks = (config.shots + kChunkShots - 1) / kChunkShots;
    std::vector<ChunkResult> chunks(n_chunks);
    const ShotRunner runner(config);
    unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks || failed.load()) {
                return;
            }
            try {
                runner.run_chunk(c * kChunkShots, std::min(config.shots, (c + 1) * kChunkShots), chunks[c]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                failed = true;
                return;
            }
        }
    };
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(work);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return chunks;
}

void fill_rows(ExperimentReport &report, const std::map<OutcomeRecord, std::uint64_t> &counts,
               const std::optional<OutcomeDistribution> &exact) {
    std::map<OutcomeRecord, OutcomeRow> rows;
    for (const auto &[record, n] : counts) {
        rows[record].count = n;
    }
    if (exact) {
        for (const auto &[record, p] : *exact) {
            rows[record].exact = p;
        }
        for (auto &[record, row] : rows) {
            if (!row.exact) {
                row.exact = 0.0;
            }
        }
    }
    for (auto &[record, row] : rows) {
        row.record = record;
        if (report.accepted_shots > 0) {
            row.frequency = static_cast<double>(row.count) / static_cast<double>(report.accepted_shots);
        }
        if (row.exact) {
            row.ci = binomial_interval(*row.exact, report.accepted_shots, kSigmas);
            if (*row.exact <= kZeroProbability) {
                row.inside = row.count == 0;
            } else {
                row.inside = report.accepted_shots == 0 || row.ci.contains(row.frequency);
            }
        } else {
            row.ci = {0.0, 1.0};
        }
        report.outcomes.push_back(std::move(row));
    }
}

void decide(ExperimentReport &report, std::uint64_t min_shots) {
    std::vector<std::string> fails;
    if (report.congruence.violations > 0) {
        fails.push_back(std::to_string(report.congruence.violations) + " congruence violations (first at shot " +
                        std::to_string(*report.congruence.first_shot) + ": " + report.congruence.first_message +
                        ")");
    }
    if (report.mode == RunMode::kCompare) {
        if (report.hard_fails > 0) {
            fails.push_back(std::to_string(report.hard_fails) + " shots with zero-probability outcomes");
        }
        if (report.accepted_shots >= min_shots) {
            if (report.chi_square && report.chi_square->p_value < kMinPValue) {
                std::ostringstream os;
                os << "chi-square p-value " << report.chi_square->p_value << " below " << kMinPValue;
                fails.push_back(os.str());
            }
            if (!report.all_inside) {
                fails.push_back("frequency outside the 5 sigma interval");
            }
        }
    }
    if (!fails.empty()) {
        report.verdict = Verdict::kFail;
        for (std::size_t i = 0; i < fails.size(); ++i) {
            report.verdict_reason += (i ? "; " : "") + fails[i];
        }
        return;
    }
    if (report.mode != RunMode::kCompare) {
        report.verdict = Verdict::kNone;
        report.verdict_reason = "no comparison in " + to_string(report.mode) + " mode";
    } else if (report.accepted_shots < min_shots) {
        report.verdict = Verdict::kInconclusive;
        report.verdict_reason = std::to_string(report.accepted_shots) + " accepted shots, at least " +
                                std::to_string(min_shots) + " needed for a verdict";
    } else {
        report.verdict = Verdict::kPass;
        report.verdict_reason = "consistent with the exact distribution";
    }
}

}  // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::kCompare:
            return "compare";
        case RunMode::kOnticOnly:
            return "ontic-only";
        case RunMode::kQuantumExact:
            return "quantum-exact";
    }
    return "?";
}

std::string to_string(SampledEngine engine) {
    return engine == SampledEngine::kOntic ? "ontic" : "quantum";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::kPass:
            return "pass";
        case Verdict::kFail:
            return "fail";
        case Verdict::kInconclusive:
            return "inconclusive";
        case Verdict::kNone:
            return "none";
    }
    return "?";
}

RunMode parse_run_mode(std::string_view s) {
    if (s == "compare") {
        return RunMode::kCompare;
    }
    if (s == "ontic-only") {
        return RunMode::kOnticOnly;
    }
    if (s == "quantum-exact") {
        return RunMode::kQuantumExact;
    }
    throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected compare, ontic-only, quantum-exact)");
}

SampledEngine parse_engine(std::string_view s) {
    if (s == "ontic") {
        return SampledEngine::kOntic;
    }
    if (s == "quantum") {
        return SampledEngine::kQuantum;
    }
    throw std::invalid_argument("unknown engine '" + std::string(s) + "' (expected ontic or quantum)");
}

OnticFault parse_fault(std::string_view s) {
    if (s == "none") {
        return OnticFault::kNone;
    }
    if (s == "no-suppression") {
        return OnticFault::kNoSuppression;
    }
    if (s == "swapped-relocation") {
        return OnticFault::kSwappedRelocation;
    }
    throw std::invalid_argument("unknown fault '" + std::string(s) + "'");
}

PreparationSpec PreparationSpec::parse(std::string_view text) {
    PreparationSpec spec;
    bool have_path = false;
    while (!text.empty()) {
        const auto comma = text.find(',');
        std::string_view item = trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view() : text.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("preparation item '" + std::string(item) + "' is not key=value");
        }
        const std::string_view key = trim(item.substr(0, eq));
        const std::string_view value = trim(item.substr(eq + 1));
        if (key == "path") {
            std::uint64_t j = 0;
            auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), j);
            if (ec != std::errc() || end != value.data() + value.size() || j == 0) {
                throw std::invalid_argument("preparation path must be a positive integer, got '" +
                                            std::string(value) + "'");
            }
            spec.path = static_cast<PathIndex>(j - 1);
            have_path = true;
        } else if (key == "mode") {
            if (value == "source") {
                spec.mode = PrepMode::kSource;
            } else if (value == "sieve") {
                spec.mode = PrepMode::kSieve;
            } else {
                throw std::invalid_argument("preparation mode must be source or sieve");
            }
        } else if (key == "junk") {
            spec.junk = JunkSampler::parse(value);
        } else {
            throw std::invalid_argument("unknown preparation key '" + std::string(key) + "'");
        }
    }
    if (!have_path) {
        throw std::invalid_argument("preparation needs path=J");
    }
    return spec;
}

std::string PreparationSpec::to_string() const {
    return "path=" + std::to_string(path + 1) + ",mode=" + (mode == PrepMode::kSieve ? "sieve" : "source") +
           ",junk=" + junk.to_string();
}

void ExperimentConfig::validate() const {
    if (shots < 1) {
        throw std::invalid_argument("shots must be at least 1");
    }
    if (prepare.path >= circuit.width()) {
        throw std::invalid_argument("preparation path " + std::to_string(prepare.path + 1) + " out of range for " +
                                    std::to_string(circuit.width()) + " paths");
    }
    if (postselect) {
        for (const OutcomeEvent &e : postselect->events) {
            if (e.layer >= circuit.depth() || circuit.partition(e.layer).detectors.empty()) {
                throw std::invalid_argument("post-selection refers to layer " + std::to_string(e.layer + 1) +
                                            " which has no detectors");
            }
            if (e.click && e.click >= circuit.width()) {
                throw std::invalid_argument("post-selection click path out of range");
            }
        }
    }
}

std::uint64_t ExperimentReport::count(const OutcomeRecord &record) const {
    const OutcomeRow *r = row(record);
    return r ? r->count : 0;
}

const OutcomeRow *ExperimentReport::row(const OutcomeRecord &record) const {
    for (const OutcomeRow &r : outcomes) {
        if (r.record == record) {
            return &r;
        }
    }
    return nullptr;
}

OutcomeDistribution conditional_distribution(const OutcomeDistribution &exact, const OutcomeRecord &filter) {
    OutcomeDistribution out;
    double mass = 0.0;
    for (const auto &[record, p] : exact) {
        if (record.matches(filter)) {
            out[record] = p;
            mass += p;
        }
    }
    if (mass <= kImpossibleProbability) {
        throw ImpossibleOutcome("post-selected record " + record_key(filter) + " has zero probability");
    }
    for (auto &[record, p] : out) {
        p /= mass;
    }
    return out;
}

ExperimentReport run_experiment(const ExperimentConfig &config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    ExperimentReport report;
    report.circuit_name = config.circuit.name();
    report.circuit_ref = config.circuit_ref;
    report.width = config.circuit.width();
    report.depth = config.circuit.depth();
    report.seed = config.seed;
    report.shots = config.shots;
    report.mode = config.mode;
    report.engine = config.engine;
    report.preparation = config.prepare.to_string();
    report.postselect = config.postselect ? record_key(*config.postselect) : "";
    report.invariants_checked = config.check_invariants;

    std::optional<OutcomeDistribution> exact;
    if (config.mode != RunMode::kOnticOnly) {
        exact = exact_outcome_distribution(config.circuit, quantum_init(config.prepare.path, config.circuit.width()),
                                           config.branch_cap);
        if (config.postselect) {
            exact = conditional_distribution(*exact, *config.postselect);
        }
    }

    std::map<OutcomeRecord, std::uint64_t> counts;
    if (config.mode != RunMode::kQuantumExact) {
        ExperimentConfig effective = config;
        effective.trace = config.trace && config.engine == SampledEngine::kOntic;
        std::vector<ChunkResult> chunks = run_chunks(effective);
        std::ofstream trace_out;
        std::ofstream congruence_out;
        if (effective.trace && !config.trace_path.empty()) {
            trace_out.open(config.trace_path, std::ios::binary);
            if (!trace_out) {
                throw std::runtime_error("cannot write trace file " + config.trace_path);
            }
        }
        if (effective.trace && !config.congruence_path.empty()) {
            congruence_out.open(config.congruence_path, std::ios::binary);
            if (!congruence_out) {
                throw std::runtime_error("cannot write congruence file " + config.congruence_path);
            }
        }
        report.congruence.enabled = effective.trace;
        for (ChunkResult &c : chunks) {
            for (const auto &[record, n] : c.counts) {
                counts[record] += n;
            }
            report.accepted_shots += c.accepted;
            report.diagnostics += c.diagnostics;
            report.sieve_attempts += c.sieve_attempts;
            merge(report.congruence, c.congruence);
            if (trace_out.is_open()) {
                trace_out << c.trace_lines;
            }
            if (congruence_out.is_open()) {
                congruence_out << c.congruence_lines;
            }
        }
    }

    fill_rows(report, counts, exact);
    if (exact && config.mode == RunMode::kCompare) {
        OutcomeDistribution empirical;
        std::vector<std::uint64_t> observed;
        std::vector<double> expected;
        for (const OutcomeRow &row : report.outcomes) {
            empirical[row.record] = row.frequency;
            observed.push_back(row.count);
            expected.push_back(*row.exact);
            report.all_inside = report.all_inside && row.inside;
        }
        if (report.accepted_shots > 0) {
            report.tvd = total_variation(empirical, *exact);
        }
        report.chi_square = chi_square_goodness(observed, expected);
        report.hard_fails = report.chi_square->hard_fails;
    }
    decide(report, config.min_shots);
    report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string report_to_json(const ExperimentReport &report, bool include_runtime) {
    using nlohmann::json;
    json outcomes = json::array();
    for (const OutcomeRow &row : report.outcomes) {
        json r = {{"record", record_key(row.record)},
                  {"count", row.count},
                  {"frequency", row.frequency},
                  {"ci_low", row.ci.low},
                  {"ci_high", row.ci.high},
                  {"inside", row.inside}};
        r["exact"] = row.exact ? json(*row.exact) : json(nullptr);
        outcomes.push_back(std::move(r));
    }
    json j;
    j["circuit"] = {{"name", report.circuit_name},
                    {"ref", report.circuit_ref},
                    {"paths", report.width},
                    {"layers", report.depth}};
    j["seed"] = report.seed;
    j["shots"] = report.shots;
    j["mode"] = to_string(report.mode);
    j["engine"] = to_string(report.engine);
    j["preparation"] = report.preparation;
    j["postselect"] = report.postselect.empty() ? json(nullptr) : json(report.postselect);
    j["accepted_shots"] = report.accepted_shots;
    j["outcomes"] = std::move(outcomes);
    j["total_variation"] = report.tvd ? json(*report.tvd) : json(nullptr);
    if (report.chi_square) {
        j["chi_square"] = {{"statistic", report.chi_square->statistic},
                           {"p_value", report.chi_square->p_value},
                           {"dof", report.chi_square->dof}};
    } else {
        j["chi_square"] = nullptr;
    }
    j["hard_fails"] = report.hard_fails;
    j["all_inside_ci"] = report.all_inside;
    const CongruenceSummary &c = report.congruence;
    j["congruence"] = {{"enabled", c.enabled},
                       {"shots_checked", c.shots_checked},
                       {"violations", c.violations},
                       {"max_deviation", c.max_deviation}};
    if (c.first_shot) {
        j["congruence"]["first_violation"] = {
            {"shot", *c.first_shot}, {"boundary", c.first_boundary}, {"message", c.first_message}};
    }
    j["diagnostics"] = {{"degenerate_relocations", report.diagnostics.degenerate_relocations},
                        {"invariants_checked", report.invariants_checked},
                        {"checked_gates", report.diagnostics.checked_gates},
                        {"sieve_attempts", report.sieve_attempts}};
    j["verdict"] = to_string(report.verdict);
    j["verdict_reason"] = report.verdict_reason;
    if (include_runtime) {
        j["runtime_seconds"] = report.runtime_seconds;
    }
    return j.dump(2) + "\n";
}

std::string congruence_to_json(const CongruenceReport &report) {
    nlohmann::json layers = nlohmann::json::array();
    for (double d : report.deviations) {
        layers.push_back({{"deviation", std::isfinite(d) ? nlohmann::json(d) : nlohmann::json(nullptr)}});
    }
    nlohmann::json j = {{"shot", report.shot}, {"layers", layers}, {"pass", report.pass}};
    if (!report.pass) {
        j["message"] = report.message;
    }
    return j.dump() + "\n";
}

std::string report_to_csv(const ExperimentReport &report) {
    std::ostringstream os;
    os.precision(17);
    os << "outcome,count,frequency,exact,ci_low,ci_high,inside\n";
    for (const OutcomeRow &row : report.outcomes) {
        os << record_key(row.record) << ',' << row.count << ',' << row.frequency << ',';
        if (row.exact) {
            os << *row.exact;
        }
        os << ',' << row.ci.low << ',' << row.ci.high << ',' << (row.inside ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace qpath
