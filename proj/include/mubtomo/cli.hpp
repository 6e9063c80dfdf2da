// Copyright 2026 The mubtomo Authors
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

#pragma once

#include <cstdint>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mubtomo/io.hpp"
#include "mubtomo/mubtomo.hpp"

namespace mubtomo::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUnsupportedDimension = 2,
    kInputError = 3,
    kInvariantViolation = 4,
};

enum class Command { Construct, Tomogram, Reconstruct, Simulate, Verify, Intertwine };

inline const std::map<std::string, Command> &command_names() {
    static const std::map<std::string, Command> names = {
        {"construct", Command::Construct}, {"tomogram", Command::Tomogram}, {"reconstruct", Command::Reconstruct},
        {"simulate", Command::Simulate},   {"verify", Command::Verify},     {"intertwine", Command::Intertwine},
    };
    return names;
}

/// Everything one command needs. Filled from flags or from a job file.
struct JobConfig {
    Command command = Command::Construct;
    std::size_t dimension = 0;
    Tolerances tolerances = Tolerances::from_env();
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::size_t samples = 10000;
    std::string state_path;
    std::string mub_path;
    std::string tomogram_path;
    std::string symbol_path;
    std::string output_path = "-";
    Repair repair = Repair::None;
    VerifyLevel level = VerifyLevel::Quick;
    std::string direction;
    bool inject_fault = false;

    /// Throws ParseError naming the first missing or out-of-range field.
    void validate() const {
        auto require = [&](bool ok, const std::string &what) {
            if (!ok) {
                throw ParseError("job: " + what);
            }
        };
        for (double t : {tolerances.herm, tolerances.trace, tolerances.norm, tolerances.psd}) {
            require(t > 0 && std::isfinite(t), "tolerances must be positive and finite");
        }
        require(!output_path.empty(), "output path is empty");
        switch (command) {
            case Command::Construct:
                require(dimension >= 1, "construct needs a dimension");
                break;
            case Command::Tomogram:
                require(!state_path.empty() && !mub_path.empty(), "tomogram needs state and mub paths");
                break;
            case Command::Reconstruct:
                require(!tomogram_path.empty() && !mub_path.empty(), "reconstruct needs tomogram and mub paths");
                break;
            case Command::Simulate:
                require(!state_path.empty() && !mub_path.empty(), "simulate needs state and mub paths");
                require(shots >= 1, "shots must be at least 1");
                break;
            case Command::Verify:
                require(dimension >= 1, "verify needs a dimension");
                require(samples >= 1, "samples must be at least 1");
                break;
            case Command::Intertwine:
                require(direction == "sic2mub" || direction == "mub2sic", "direction must be sic2mub or mub2sic");
                require(!symbol_path.empty(), "intertwine needs a symbol path");
                break;
        }
    }

    /// Job file: {"command": ..., ...}. Unknown keys are rejected.
    static JobConfig from_json(const io::Json &doc) {
        if (!doc.is_object()) {
            throw ParseError("job: expected a JSON object");
        }
        static const std::set<std::string> known = {
            "schema", "command", "dimension", "tolerances", "seed",   "shots",     "samples", "state",
            "mub",    "tomogram", "symbol",   "output",     "repair", "level",     "direction",
        };
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            if (!known.count(it.key())) {
                throw ParseError("job: unknown key '" + it.key() + "'");
            }
        }
        io::detail::check_schema(doc, io::schema::kJob, "job");
        JobConfig job;
        auto str = [&](const char *key) -> std::string {
            const auto &v = doc[key];
            if (!v.is_string()) {
                throw ParseError(std::string("job.") + key + ": expected a string");
            }
            return v.get<std::string>();
        };
        auto uint = [&](const char *key) { return io::detail::as_uint(doc[key], std::string("job.") + key); };

        auto cmd = command_names().find(str("command"));
        if (cmd == command_names().end()) {
            throw ParseError("job.command: unknown command");
        }
        job.command = cmd->second;
        if (doc.contains("dimension")) job.dimension = static_cast<std::size_t>(uint("dimension"));
        if (doc.contains("seed")) job.seed = uint("seed");
        if (doc.contains("shots")) job.shots = uint("shots");
        if (doc.contains("samples")) job.samples = static_cast<std::size_t>(uint("samples"));
        if (doc.contains("state")) job.state_path = str("state");
        if (doc.contains("mub")) job.mub_path = str("mub");
        if (doc.contains("tomogram")) job.tomogram_path = str("tomogram");
        if (doc.contains("symbol")) job.symbol_path = str("symbol");
        if (doc.contains("output")) job.output_path = str("output");
        if (doc.contains("direction")) job.direction = str("direction");
        if (doc.contains("repair")) job.repair = parse_repair(str("repair"));
        if (doc.contains("level")) job.level = parse_level(str("level"));
        if (doc.contains("tolerances")) {
            const auto &t = doc["tolerances"];
            if (!t.is_object()) {
                throw ParseError("job.tolerances: expected an object");
            }
            std::map<std::string, double *> slots = {
                {"herm", &job.tolerances.herm},
                {"trace", &job.tolerances.trace},
                {"norm", &job.tolerances.norm},
                {"psd", &job.tolerances.psd},
            };
            for (auto it = t.begin(); it != t.end(); ++it) {
                auto slot = slots.find(it.key());
                if (slot == slots.end()) {
                    throw ParseError("job.tolerances: unknown key '" + it.key() + "'");
                }
                *slot->second = io::detail::as_double(it.value(), "job.tolerances." + it.key());
            }
        }
        return job;
    }

    static Repair parse_repair(const std::string &s) {
        if (s == "none") return Repair::None;
        if (s == "project") return Repair::Project;
        throw ParseError("repair must be 'none' or 'project'");
    }

    static VerifyLevel parse_level(const std::string &s) {
        if (s == "quick") return VerifyLevel::Quick;
        if (s == "exhaustive") return VerifyLevel::Exhaustive;
        throw ParseError("level must be 'quick' or 'exhaustive'");
    }
};

struct Streams {
    std::istream &in = std::cin;
    std::ostream &out = std::cout;
    std::ostream &err = std::cerr;
};

namespace detail {

inline MubSet load_mub(const JobConfig &job, Streams &io_streams) {
    MubSet set = io::mubset_from_json(io::read_document(job.mub_path, io_streams.in), job.mub_path);
    MubValidation v = validate_mub(set, job.tolerances.norm);
    if (!v.passed()) {
        throw InvariantViolation(
            job.mub_path + ": not a valid MUB family (orthonormality " + std::to_string(v.orthonormality.max_violation) +
            ", unbiasedness " + std::to_string(v.unbiasedness.max_violation) + ")");
    }
    return set;
}

inline DensityMatrix load_state(const JobConfig &job, Streams &io_streams) {
    ComplexMatrix m = io::state_matrix_from_json(io::read_document(job.state_path, io_streams.in), job.state_path);
    try {
        return DensityMatrix(std::move(m), job.tolerances);
    } catch (const ValidityError &e) {
        throw InvariantViolation(job.state_path + ": " + e.what());
    }
}

inline void require_same_dim(std::size_t a, std::size_t b, const std::string &what) {
    if (a != b) {
        throw ShapeError(what + ": dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
    }
}

inline int cmd_construct(const JobConfig &job, const std::vector<std::string> &inv, Streams &s) {
    io::write_document(io::mubset_to_json(construct_mub(job.dimension), inv), job.output_path, s.out);
    return kOk;
}

inline int cmd_tomogram(const JobConfig &job, const std::vector<std::string> &inv, Streams &s) {
    DensityMatrix rho = load_state(job, s);
    MubSet set = load_mub(job, s);
    require_same_dim(rho.dim(), set.dim(), "tomogram");
    io::write_document(io::tomogram_to_json(scan(rho, set, job.tolerances), inv), job.output_path, s.out);
    return kOk;
}

inline int cmd_reconstruct(const JobConfig &job, const std::vector<std::string> &inv, Streams &s) {
    Tomogram t = io::tomogram_from_json(io::read_document(job.tomogram_path, s.in), job.tomogram_path);
    MubSet set = load_mub(job, s);
    require_same_dim(t.dim(), set.dim(), "reconstruct");
    Reconstruction r = reconstruct(t, set, job.tolerances);
    io::Json doc = io::state_to_json(r.rho, inv);
    io::Json diag;
    diag["min_eigenvalue"] = r.min_eigenvalue;
    diag["positive"] = r.positive(job.tolerances.psd);
    diag["normalization_deviation"] = r.normalization_deviation;
    diag["normalization_warning"] = r.normalization_warning;
    doc["diagnostics"] = std::move(diag);
    if (r.normalization_warning) {
        s.err << "warning: tomogram normalization off by " << r.normalization_deviation << "\n";
    }
    io::write_document(doc, job.output_path, s.out);
    return kOk;
}

inline int cmd_simulate(const JobConfig &job, const std::vector<std::string> &inv, Streams &s) {
    DensityMatrix rho = load_state(job, s);
    MubSet set = load_mub(job, s);
    require_same_dim(rho.dim(), set.dim(), "simulate");
    MeasurementRecord rec = sample(rho, set, job.shots, job.seed);
    Estimate est = estimate(rec, set, job.repair, job.tolerances);
    io::Json doc = io::header(io::schema::kSimulation, inv);
    doc["dim"] = set.dim();
    doc["record"] = io::record_to_json(rec);
    io::Json e;
    e["repair"] = to_string(est.repair);
    e["matrix"] = io::matrix_to_json(est.rho);
    e["min_eigenvalue_before_repair"] = est.min_eigenvalue_before_repair;
    e["trace_distance_moved"] = est.trace_distance_moved;
    e["normalization_warning"] = est.normalization_warning;
    doc["estimate"] = std::move(e);
    io::write_document(doc, job.output_path, s.out);
    return kOk;
}

inline int cmd_verify(const JobConfig &job, const std::vector<std::string> &inv, Streams &s) {
    VerifyOptions opts;
    opts.dim = job.dimension;
    opts.level = job.level;
    opts.seed = job.seed;
    opts.samples = job.samples;
    opts.inject_fault = job.inject_fault;
    VerificationReport rep = run_verification(opts);
    io::Json doc = io::header(io::schema::kVerification, inv);
    doc["dim"] = rep.dim;
    doc["level"] = rep.level == VerifyLevel::Quick ? "quick" : "exhaustive";
    doc["seed"] = rep.seed;
    doc["samples"] = rep.samples;
    doc["passed"] = rep.passed();
    io::Json checks = io::Json::array();
    for (const auto &c : rep.checks) {
        checks.push_back(io::check_to_json(c));
        if (!c.passed()) {
            s.err << "FAILED " << c.name << ": max violation " << c.max_violation << " > " << c.tolerance
                  << " at (";
            for (std::size_t i = 0; i < c.argmax.size(); ++i) {
                s.err << (i ? ", " : "") << c.argmax[i];
            }
            s.err << ")\n";
        }
    }
    doc["checks"] = std::move(checks);
    io::write_document(doc, job.output_path, s.out);
    return rep.passed() ? kOk : kVerificationFailed;
}

inline int cmd_intertwine(const JobConfig &job, const std::vector<std::string> &inv, Streams &s) {
    io::Json input = io::read_document(job.symbol_path, s.in);
    if (job.direction == "sic2mub") {
        qubit::SicSymbol f = io::sic_symbol_from_json(input, job.symbol_path);
        io::write_document(io::mub_symbol_to_json(qubit::intertwine_sic_to_mub(f), inv), job.output_path, s.out);
    } else {
        MubSymbol f = io::mub_symbol_from_json(input, job.symbol_path);
        if (f.dim() != 2) {
            throw ParseError(job.symbol_path + ": MUB symbol must have dim 2");
        }
        io::write_document(io::sic_symbol_to_json(qubit::intertwine_mub_to_sic(f), inv), job.output_path, s.out);
    }
    return kOk;
}

}  // namespace detail

/// Runs one validated job and maps failures onto exit codes.
inline int dispatch(const JobConfig &job, const std::vector<std::string> &invocation, Streams s = {}) {
    try {
        job.validate();
        switch (job.command) {
            case Command::Construct:
                return detail::cmd_construct(job, invocation, s);
            case Command::Tomogram:
                return detail::cmd_tomogram(job, invocation, s);
            case Command::Reconstruct:
                return detail::cmd_reconstruct(job, invocation, s);
            case Command::Simulate:
                return detail::cmd_simulate(job, invocation, s);
            case Command::Verify:
                return detail::cmd_verify(job, invocation, s);
            case Command::Intertwine:
                return detail::cmd_intertwine(job, invocation, s);
        }
    } catch (const UnsupportedDimension &e) {
        s.err << "error: " << e.what() << "\n";
        return kUnsupportedDimension;
    } catch (const InvariantViolation &e) {
        s.err << "error: " << e.what() << "\n";
        return kInvariantViolation;
    } catch (const ValidityError &e) {
        s.err << "error: " << e.what() << "\n";
        return kInvariantViolation;
    } catch (const ConsistencyError &e) {
        s.err << "error: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const std::exception &e) {
        s.err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

/// Entry point of the `mubtomo` executable.
inline int run(int argc, const char *const *argv, Streams s = {}) {
    std::vector<std::string> invocation(argv + std::min(argc, 1), argv + argc);

    CLI::App app{"Mutually-unbiased-bases tomography and star-product toolkit", "mubtomo"};
    app.require_subcommand(1);
    app.set_version_flag("--version", io::kToolVersion);

    JobConfig job;
    double tol = 0;
    app.add_option("--tol", tol, "Override every default tolerance (also MUBTOMO_TOL)")->check(CLI::PositiveNumber);

    auto *construct = app.add_subcommand("construct", "Write the MUB family for one dimension");
    construct->add_option("--dim", job.dimension, "Hilbert-space dimension (2 or an odd prime)")->required();
    construct->add_option("--out", job.output_path, "Output path, '-' for stdout");

    auto *tomogram = app.add_subcommand("tomogram", "Scan a state into its MUB tomogram");
    tomogram->add_option("--state", job.state_path, "State JSON ('-' for stdin)")->required();
    tomogram->add_option("--mub", job.mub_path, "MUB family JSON")->required();
    tomogram->add_option("--out", job.output_path, "Output path, '-' for stdout");

    auto *reconstruct_cmd = app.add_subcommand("reconstruct", "Reconstruct a state from a tomogram");
    reconstruct_cmd->add_option("--tomogram", job.tomogram_path, "Tomogram JSON ('-' for stdin)")->required();
    reconstruct_cmd->add_option("--mub", job.mub_path, "MUB family JSON")->required();
    reconstruct_cmd->add_option("--out", job.output_path, "Output path, '-' for stdout");

    std::string repair = "none";
    auto *simulate = app.add_subcommand("simulate", "Sample finite-shot measurements and estimate the state");
    simulate->add_option("--state", job.state_path, "State JSON ('-' for stdin)")->required();
    simulate->add_option("--mub", job.mub_path, "MUB family JSON")->required();
    simulate->add_option("--shots", job.shots, "Shots per basis")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", job.seed, "RNG seed");
    simulate->add_option("--repair", repair, "none | project")->check(CLI::IsMember({"none", "project"}));
    simulate->add_option("--out", job.output_path, "Output path, '-' for stdout");

    std::string level = "quick";
    auto *verify = app.add_subcommand("verify", "Run the identity suite for one dimension");
    verify->add_option("--dim", job.dimension, "Hilbert-space dimension")->required();
    verify->add_option("--level", level, "quick | exhaustive")->check(CLI::IsMember({"quick", "exhaustive"}));
    verify->add_option("--seed", job.seed, "Sampling seed");
    verify->add_option("--samples", job.samples, "Tuples per sampled sweep")->check(CLI::PositiveNumber);
    verify->add_option("--out", job.output_path, "Output path, '-' for stdout");
    verify->add_flag("--inject-fault", job.inject_fault)->group("");

    auto *intertwine = app.add_subcommand("intertwine", "Convert qubit symbols between the SIC and MUB schemes");
    intertwine->add_option("--direction", job.direction, "sic2mub | mub2sic")
        ->required()
        ->check(CLI::IsMember({"sic2mub", "mub2sic"}));
    intertwine->add_option("--symbol", job.symbol_path, "Symbol JSON ('-' for stdin)")->required();
    intertwine->add_option("--out", job.output_path, "Output path, '-' for stdout");

    std::string job_path;
    auto *run_job = app.add_subcommand("run", "Run a job file");
    run_job->add_option("job", job_path, "Job JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        s.out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion &) {
        s.out << io::kToolVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError &e) {
        s.err << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (tol > 0) {
            job.tolerances = Tolerances::uniform(tol);
        }
        if (run_job->parsed()) {
            JobConfig from_file = JobConfig::from_json(io::read_document(job_path, s.in));
            if (tol > 0) {
                from_file.tolerances = job.tolerances;
            }
            return dispatch(from_file, invocation, s);
        }
        job.repair = JobConfig::parse_repair(repair);
        job.level = JobConfig::parse_level(level);
        for (const auto &[name, cmd] : command_names()) {
            if (app.got_subcommand(name)) {
                job.command = cmd;
            }
        }
    } catch (const std::exception &e) {
        s.err << "error: " << e.what() << "\n";
        return kInputError;
    }
    return dispatch(job, invocation, s);
}

}  // namespace mubtomo::cli
