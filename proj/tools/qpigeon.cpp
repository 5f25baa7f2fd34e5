// Copyright 2026 The qpigeon Authors
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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qpigeon/config.hpp"
#include "qpigeon/report.hpp"
#include "qpigeon/reproduce.hpp"
#include "qpigeon/runner.hpp"

namespace {

using namespace qpigeon;

int emit(const Report& report, OutputFormat format, const std::string& output) {
    std::string text = format == OutputFormat::kText ? render_text(report) : render_structured(report);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "error: cannot write " << output << "\n";
            return kExitConfigError;
        }
        out << text;
        if (format == OutputFormat::kText) std::cout << text;
    }
    return report.exit_code();
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const ImpossibleScenario& e) {
        std::cerr << "error: impossible scenario: " << e.what() << "\n";
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid parameter: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
        std::cerr << "error: out of range: " << e.what() << "\n";
    }
    return kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qpigeon: pre- and postselected pigeonhole scenarios, exact and numerical"};
    app.require_subcommand(1);

    std::string format_text = "text";
    std::string output;

    auto* list = app.add_subcommand("list", "List the scenario registry");
    list->add_option("--format", format_text, "text or structured")->check(CLI::IsMember({"text", "structured"}));

    std::string config_path;
    std::optional<std::string> backend_override;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint64_t> shots_override;
    std::optional<std::string> format_override;
    auto* run_cmd = app.add_subcommand("run", "Run the checks of a config file");
    run_cmd->add_option("config", config_path, "Run config (JSON)")->required();
    run_cmd->add_option("--backend", backend_override, "exact, float or both")
        ->check(CLI::IsMember({"exact", "float", "both"}));
    run_cmd->add_option("--seed", seed_override, "Override the config seed");
    run_cmd->add_option("--shots", shots_override, "Override shots of every readout check");
    run_cmd->add_option("--format", format_override, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    run_cmd->add_option("--output", output, "Also write the report to this file");

    std::string backend_text = "both";
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t shots = kDefaultShots;
    bool mutate = false;
    auto* repro = app.add_subcommand("reproduce-paper", "Run every acceptance check and print a claim table");
    repro->add_option("--backend", backend_text, "exact, float or both")
        ->check(CLI::IsMember({"exact", "float", "both"}));
    repro->add_option("--seed", seed, "Seed of every Monte Carlo run");
    repro->add_option("--shots", shots, "Shots per readout run");
    repro->add_option("--format", format_text, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    repro->add_option("--output", output, "Also write the report to this file");
    repro->add_flag("--flip-four-pigeon-sign", mutate,
                    "Mutation check: negate the middle term of the four-pigeon postselection");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    if (*list) {
        return guarded([&] { return emit(list_scenarios(), parse_output_format(format_text), ""); });
    }
    if (*run_cmd) {
        return guarded([&] {
            RunConfig config = load_run_config(config_path);
            if (backend_override) config.backend = parse_backend(*backend_override);
            if (seed_override) config.seed = *seed_override;
            if (format_override) config.format = parse_output_format(*format_override);
            if (shots_override) {
                for (auto& check : config.checks) {
                    if (check.kind == CheckKind::kStrongReadout || check.kind == CheckKind::kWeakReadout ||
                        check.kind == CheckKind::kSimultaneousReadout) {
                        check.shots = *shots_override;
                    }
                }
            }
            return emit(run(config), config.format, output);
        });
    }
    return guarded([&] {
        ReproduceOptions options;
        options.backend = parse_backend(backend_text);
        options.seed = seed;
        options.shots = shots;
        options.flip_four_pigeon_middle_sign = mutate;
        Report report = reproduce_paper(options);
        OutputFormat format = parse_output_format(format_text);
        int code = emit(report, format, output);
        if (format == OutputFormat::kText) {
            std::cout << "\n";
            for (const auto& [n, ok] : criterion_verdicts(report)) {
                std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << ": " << criterion_titles().at(n) << "\n";
            }
        }
        return code;
    });
}
