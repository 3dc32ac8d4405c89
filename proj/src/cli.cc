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


#include "qpath/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpath/circuit.h"
#include "qpath/harness.h"
#include "qpath/quantum.h"
#include "qpath/scenarios.h"

namespace qpath {

namespace {

using nlohmann::json;

/// Bad input from the user: exit code 2.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        throw UsageError("cannot write '" + path + "'");
    }
}

struct ExperimentFlags {
    std::string circuit;
    std::string config;
    std::string prepare;
    std::string engine;
    std::string mode;
    std::string postselect;
    std::string trace_path;
    std::string out;
    std::string csv;
    std::string congruence_path;
    std::string fault;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::size_t branch_cap = kDefaultBranchCap;
    std::uint64_t min_shots = 1000;
    bool check_invariants = false;
    bool timing = false;

    CLI::Option *shots_opt = nullptr;
    CLI::Option *seed_opt = nullptr;
    CLI::Option *threads_opt = nullptr;
    CLI::Option *cap_opt = nullptr;
    CLI::Option *min_shots_opt = nullptr;

    void attach(CLI::App *cmd) {
        cmd->add_option("circuit", circuit, "Circuit file (.circ or JSON)");
        shots_opt = cmd->add_option("--shots", shots, "Number of shots");
        seed_opt = cmd->add_option("--seed", seed, "64-bit seed (falls back to QM_SEED)");
        cmd->add_option("--prepare", prepare, "Preparation, e.g. path=1,mode=sieve,junk=disk");
        cmd->add_option("--config", config, "JSON experiment config; flags override it");
        cmd->add_option("--postselect", postselect, "Keep shots whose record contains these events, e.g. L2:N");
        threads_opt = cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
        cap_opt = cmd->add_option("--branch-cap", branch_cap, "Limit on exactly enumerated outcome branches");
        min_shots_opt = cmd->add_option("--min-shots", min_shots, "Accepted shots needed for a verdict");
        cmd->add_option("--csv", csv, "Also write the outcome table as CSV");
        cmd->add_flag("--check-invariants", check_invariants, "Assert engine invariants around every gate");
        cmd->add_flag("--timing", timing, "Include the runtime in the report");
        cmd->add_option("--fault", fault, "Run a deliberately broken ontic engine")->group("");
    }
};

PreparationSpec preparation_from_json(const json &j) {
    if (j.is_string()) {
        return PreparationSpec::parse(j.get<std::string>());
    }
    if (!j.is_object()) {
        throw UsageError("config 'prepare' must be a string or an object");
    }
    std::string text = "path=" + std::to_string(j.at("path").get<std::uint64_t>());
    if (j.contains("mode")) {
        text += ",mode=" + j.at("mode").get<std::string>();
    }
    if (j.contains("junk")) {
        text += ",junk=" + j.at("junk").get<std::string>();
    }
    return PreparationSpec::parse(text);
}

std::uint64_t env_seed() {
    const char *v = std::getenv("QM_SEED");
    if (v == nullptr || *v == '\0') {
        return 0;
    }
    try {
        std::size_t used = 0;
        const unsigned long long s = std::stoull(v, &used, 0);
        if (used != std::string(v).size()) {
            throw std::invalid_argument("trailing characters");
        }
        return s;
    } catch (const std::exception &) {
        throw UsageError(std::string("QM_SEED is not a 64-bit integer: '") + v + "'");
    }
}

/// Defaults, then the config file, then the flags.
ExperimentConfig build_config(const ExperimentFlags &flags, RunMode forced_mode, bool force_mode) {
    ExperimentConfig config;
    std::string circuit_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> prepare_text;

    if (!flags.config.empty()) {
        json j;
        try {
            j = json::parse(read_file(flags.config));
        } catch (const json::exception &e) {
            throw UsageError("config '" + flags.config + "': " + e.what());
        }
        if (!j.is_object()) {
            throw UsageError("config must be a JSON object");
        }
        try {
            if (j.contains("circuit")) {
                std::filesystem::path p = j.at("circuit").get<std::string>();
                if (p.is_relative()) {
                    p = std::filesystem::path(flags.config).parent_path() / p;
                }
                circuit_path = p.string();
            }
            if (j.contains("prepare")) {
                config.prepare = preparation_from_json(j.at("prepare"));
            }
            if (j.contains("shots")) {
                const auto s = j.at("shots").get<std::int64_t>();
                if (s < 1) {
                    throw UsageError("config shots must be at least 1");
                }
                config.shots = static_cast<std::uint64_t>(s);
            }
            if (j.contains("seed")) {
                seed = j.at("seed").get<std::uint64_t>();
            }
            if (j.contains("mode")) {
                config.mode = parse_run_mode(j.at("mode").get<std::string>());
            }
            if (j.contains("engine")) {
                config.engine = parse_engine(j.at("engine").get<std::string>());
            }
            if (j.contains("postselect") && !j.at("postselect").is_null()) {
                config.postselect = parse_record_key(j.at("postselect").get<std::string>());
            }
            if (j.contains("trace")) {
                config.trace = j.at("trace").get<bool>();
            }
            if (j.contains("trace_path")) {
                config.trace_path = j.at("trace_path").get<std::string>();
            }
            if (j.contains("branch_cap")) {
                config.branch_cap = j.at("branch_cap").get<std::size_t>();
            }
            if (j.contains("threads")) {
                config.threads = j.at("threads").get<unsigned>();
            }
            if (j.contains("check_invariants")) {
                config.check_invariants = j.at("check_invariants").get<bool>();
            }
            if (j.contains("min_shots")) {
                config.min_shots = j.at("min_shots").get<std::uint64_t>();
            }
        } catch (const json::exception &e) {
            throw UsageError("config '" + flags.config + "': " + e.what());
        }
    }

    if (!flags.circuit.empty()) {
        circuit_path = flags.circuit;
    }
    if (circuit_path.empty()) {
        throw UsageError("no circuit given");
    }
    config.circuit = load_circuit_file(circuit_path);
    config.circuit_ref = circuit_path;

    if (flags.shots_opt->count() > 0) {
        if (flags.shots < 1) {
            throw UsageError("--shots must be at least 1");
        }
        config.shots = flags.shots;
    } else if (flags.config.empty()) {
        throw UsageError("--shots is required");
    }
    if (flags.seed_opt->count() > 0) {
        seed = flags.seed;
    }
    config.seed = seed ? *seed : env_seed();
    if (!flags.prepare.empty()) {
        prepare_text = flags.prepare;
        config.prepare = PreparationSpec::parse(flags.prepare);
    }
    if (!flags.engine.empty()) {
        config.engine = parse_engine(flags.engine);
    }
    if (!flags.mode.empty()) {
        config.mode = parse_run_mode(flags.mode);
    }
    if (force_mode) {
        config.mode = forced_mode;
    }
    if (!flags.postselect.empty()) {
        config.postselect = parse_record_key(flags.postselect);
    }
    if (!flags.trace_path.empty()) {
        config.trace = true;
        config.trace_path = flags.trace_path;
    }
    if (flags.threads_opt->count() > 0) {
        config.threads = flags.threads;
    }
    if (flags.cap_opt->count() > 0) {
        config.branch_cap = flags.branch_cap;
    }
    if (flags.min_shots_opt->count() > 0) {
        config.min_shots = flags.min_shots;
    }
    if (flags.check_invariants) {
        config.check_invariants = true;
    }
    if (!flags.congruence_path.empty()) {
        config.trace = true;
        config.congruence_path = flags.congruence_path;
    }
    if (!flags.fault.empty()) {
        config.fault = parse_fault(flags.fault);
    }
    config.validate();
    return config;
}

void print_summary(const ExperimentReport &r, std::ostream &out) {
    out << "circuit " << (r.circuit_name.empty() ? r.circuit_ref : r.circuit_name) << ": " << r.width
        << " paths, " << r.depth << " layers\n";
    out << "seed " << r.seed << ", shots " << r.shots << ", accepted " << r.accepted_shots << ", preparation "
        << r.preparation << "\n";
    out << std::left << std::setw(24) << "outcome" << std::right << std::setw(10) << "count" << std::setw(12)
        << "frequency" << std::setw(12) << "exact" << "  ci\n";
    out << std::fixed << std::setprecision(6);
    for (const OutcomeRow &row : r.outcomes) {
        out << std::left << std::setw(24) << record_key(row.record) << std::right << std::setw(10) << row.count
            << std::setw(12) << row.frequency << std::setw(12);
        if (row.exact) {
            out << *row.exact;
        } else {
            out << "-";
        }
        out << "  " << (row.inside ? "ok" : "OUT") << "\n";
    }
    out << std::defaultfloat << std::setprecision(6);
    if (r.tvd) {
        out << "total variation " << *r.tvd << "\n";
    }
    if (r.chi_square) {
        out << "chi-square " << r.chi_square->statistic << " (dof " << r.chi_square->dof << ", p "
            << r.chi_square->p_value << ")\n";
    }
    if (r.hard_fails > 0) {
        out << "impossible events: " << r.hard_fails << "\n";
    }
    if (r.congruence.enabled) {
        out << "congruence: " << r.congruence.shots_checked << " shots, max deviation " << r.congruence.max_deviation
            << ", violations " << r.congruence.violations << "\n";
    }
    if (r.diagnostics.degenerate_relocations > 0) {
        out << "degenerate relocations: " << r.diagnostics.degenerate_relocations << "\n";
    }
    out << "verdict: " << to_string(r.verdict) << " (" << r.verdict_reason << ")\n";
}

void write_outputs(const ExperimentReport &report, const ExperimentFlags &flags, const std::string &out_path,
                   std::ostream &out) {
    if (!out_path.empty()) {
        write_file(out_path, report_to_json(report, flags.timing));
        out << "report: " << out_path << "\n";
    }
    if (!flags.csv.empty()) {
        write_file(flags.csv, report_to_csv(report));
        out << "csv: " << flags.csv << "\n";
    }
}

int cmd_run(const ExperimentFlags &flags, std::ostream &out) {
    ExperimentConfig config = build_config(flags, RunMode::kCompare, false);
    ExperimentReport report = run_experiment(config);
    print_summary(report, out);
    write_outputs(report, flags, flags.out.empty() ? "report.json" : flags.out, out);
    if (!config.trace_path.empty()) {
        out << "trace: " << config.trace_path << "\n";
    }
    return report.verdict == Verdict::kFail ? kExitFail : kExitPass;
}

int cmd_compare(const ExperimentFlags &flags, std::ostream &out) {
    ExperimentConfig config = build_config(flags, RunMode::kCompare, true);
    ExperimentReport report = run_experiment(config);
    print_summary(report, out);
    write_outputs(report, flags, flags.out, out);
    return report.verdict == Verdict::kPass ? kExitPass : kExitFail;
}

int cmd_trace(const ExperimentFlags &flags, const std::string &report_path, std::ostream &out) {
    ExperimentConfig config = build_config(flags, RunMode::kOnticOnly, true);
    config.engine = SampledEngine::kOntic;
    config.trace = true;
    config.check_invariants = true;
    ExperimentReport report = run_experiment(config);
    const CongruenceSummary &c = report.congruence;
    out << "traced " << c.shots_checked << " shots over " << report.depth << " layers\n";
    out << "max label deviation: " << std::setprecision(17) << c.max_deviation << std::setprecision(6) << "\n";
    out << "violations: " << c.violations << "\n";
    if (c.first_shot) {
        out << "first violation: shot " << *c.first_shot << ", boundary " << c.first_boundary << ": "
            << c.first_message << "\n";
    }
    write_outputs(report, flags, report_path, out);
    if (!config.trace_path.empty()) {
        out << "trace: " << config.trace_path << "\n";
    }
    return c.violations == 0 ? kExitPass : kExitFail;
}

int cmd_compile(const std::string &input, const std::string &output, bool verify, std::ostream &out) {
    const CMatrix u = parse_unitary_json(read_file(input));
    const Circuit circuit = reck_decompose(u);
    const std::string text = serialize_circuit(circuit);
    if (output.empty()) {
        out << text;
    } else {
        write_file(output, text);
        out << "wrote " << output << " (" << circuit.depth() << " layers)\n";
    }
    if (verify) {
        const double dev = ray_matrix_distance(reconstruct_unitary(circuit), u);
        out << "max reconstruction deviation: " << std::setprecision(3) << std::scientific << dev
            << std::defaultfloat << std::setprecision(6) << "\n";
        if (!(dev < 1e-9)) {
            return kExitFail;
        }
    }
    return kExitPass;
}

int cmd_scenarios(const std::string &dir, std::ostream &out) {
    std::filesystem::create_directories(dir);
    for (const Scenario &s : builtin_scenarios()) {
        const auto path = (std::filesystem::path(dir) / s.file).string();
        write_file(path, serialize_circuit(s.circuit));
        out << path << "\n";
    }
    return kExitPass;
}

}  // namespace

CMatrix parse_unitary_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("unitary is not valid JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("unitary must be a non-empty array of rows");
    }
    const std::size_t n = j.size();
    CMatrix u(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const json &row = j[r];
        if (!row.is_array() || row.size() != n) {
            throw std::invalid_argument("unitary row " + std::to_string(r + 1) + " does not have " +
                                        std::to_string(n) + " entries");
        }
        for (std::size_t c = 0; c < n; ++c) {
            const json &x = row[c];
            if (x.is_number()) {
                u(r, c) = x.get<double>();
            } else if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
                u(r, c) = Complex(x[0].get<double>(), x[1].get<double>());
            } else {
                throw std::invalid_argument("unitary entry (" + std::to_string(r + 1) + ", " +
                                            std::to_string(c + 1) + ") is not a number or [re, im] pair");
            }
        }
    }
    return u;
}

std::string unitary_to_json(const CMatrix &u) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            row.push_back({u(r, c).real(), u(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows.dump() + "\n";
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app("Path-qudit circuits on a local hidden-variable engine and on the quantum rules.", "qpath");
    app.require_subcommand(1);

    ExperimentFlags run_flags;
    auto *run = app.add_subcommand("run", "Run an experiment and write a report");
    run_flags.attach(run);
    run->add_option("--engine", run_flags.engine, "Sampled engine: ontic or quantum");
    run->add_option("--mode", run_flags.mode, "compare, ontic-only or quantum-exact");
    run->add_option("--trace", run_flags.trace_path, "Write traced trajectories as JSON lines");
    run->add_option("--out", run_flags.out, "Report path (default report.json)");

    ExperimentFlags cmp_flags;
    auto *compare = app.add_subcommand("compare", "Compare the ontic engine with the exact distribution");
    cmp_flags.attach(compare);
    compare->add_option("--out", cmp_flags.out, "Also write the report as JSON");

    ExperimentFlags trace_flags;
    std::string trace_report;
    auto *trace = app.add_subcommand("trace", "Check every traced trajectory against its class labels");
    trace_flags.attach(trace);
    trace->add_option("--out", trace_flags.trace_path, "Write trajectories as JSON lines");
    trace->add_option("--report", trace_report, "Also write the report as JSON");
    trace->add_option("--congruence", trace_flags.congruence_path, "Write per-shot congruence reports as JSON lines");

    std::string unitary_path;
    std::string compiled_path;
    bool verify = false;
    auto *compile = app.add_subcommand("compile", "Compile a unitary into splitters and phase shifters");
    compile->add_option("unitary", unitary_path, "JSON matrix of [re, im] pairs")->required();
    compile->add_option("-o,--output", compiled_path, "Output circuit file (stdout if omitted)");
    compile->add_flag("--verify", verify, "Rebuild the unitary and print the deviation");

    std::string scenario_dir;
    auto *scenarios = app.add_subcommand("scenarios", "Write the built-in scenario circuits");
    scenarios->add_option("dir", scenario_dir, "Target directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_flags, out);
        }
        if (compare->parsed()) {
            return cmd_compare(cmp_flags, out);
        }
        if (trace->parsed()) {
            return cmd_trace(trace_flags, trace_report, out);
        }
        if (compile->parsed()) {
            return cmd_compile(unitary_path, compiled_path, verify, out);
        }
        if (scenarios->parsed()) {
            return cmd_scenarios(scenario_dir, out);
        }
    } catch (const BranchCapExceeded &e) {
        err << "error: " << e.what() << "\nhint: rerun with --mode ontic-only (run) to skip exact enumeration\n";
        return kExitResourceCap;
    } catch (const InvariantViolation &e) {
        err << "invariant violated: " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qpath
