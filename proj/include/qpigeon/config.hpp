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

#ifndef QPIGEON_CONFIG_HPP
#define QPIGEON_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpigeon/basis.hpp"
#include "qpigeon/errors.hpp"
#include "qpigeon/readout.hpp"

namespace qpigeon {

enum class Backend { kExact, kFloat, kBoth };
const char* to_string(Backend b);
Backend parse_backend(const std::string& text);

enum class OutputFormat { kText, kStructured };
const char* to_string(OutputFormat f);
OutputFormat parse_output_format(const std::string& text);

enum class CheckKind { kClaims, kAbl, kReality, kWeakValue, kTrace, kStrongReadout, kWeakReadout, kSimultaneousReadout };
const char* to_string(CheckKind k);
CheckKind parse_check_kind(const std::string& text);

/// A ConfigError that knows where in the document it happened.
struct ConfigFieldError : ConfigError {
    ConfigFieldError(std::string source, int line, std::string field, const std::string& what);

    const std::string& source() const { return source_; }
    /// 1-based line, or 0 when unknown.
    int line() const { return line_; }
    /// JSON pointer of the offending field.
    const std::string& field() const { return field_; }

  private:
    std::string source_;
    int line_;
    std::string field_;
};

/// Registry scenario with optional parameter overrides, or inline states
/// when `name` is "inline".
struct ScenarioRef {
    std::string name;
    std::optional<int> particles;
    std::optional<int> threshold;
    std::optional<int> boxes;

    /// Inline only. Keys are configurations ("AAB") or occupancies ("2,1");
    /// values are Gaussian rationals ("1", "-1/2+i").
    Representation representation = Representation::kDistinguishable;
    std::map<std::string, std::string> pre;
    std::map<std::string, std::string> post;

    bool is_inline() const { return name == "inline"; }

    friend bool operator==(const ScenarioRef&, const ScenarioRef&) = default;
};

struct CheckConfig {
    CheckKind kind = CheckKind::kClaims;
    std::string id;

    /// kClaims: restrict to these claim kinds ("abl", "element_of_reality", "weak_value").
    std::vector<std::string> filter;

    /// kAbl, kReality, kWeakValue.
    std::string observable;
    std::string eigenvalue = "1";

    /// Verdict target; its syntax depends on the kind. Absent means report only.
    std::optional<std::string> expected;

    /// kTrace: "default", "local" or "nonlocal".
    std::string couplings = "default";
    /// kTrace: coupled particles (local) or the pair (nonlocal).
    std::vector<int> particles;
    /// kTrace: masks to report; empty means the full table.
    std::vector<std::string> masks;
    std::optional<int> truncation;
    std::vector<double> eps_grid;

    /// Readout kinds.
    std::vector<ParityPair> pairs;
    std::optional<std::uint64_t> shots;
    std::optional<double> coupling;
    std::optional<double> spread;
    std::optional<double> tolerance;

    friend bool operator==(const CheckConfig&, const CheckConfig&) = default;
};

struct RunConfig {
    static constexpr const char* kSchema = "qpigeon.run/1";

    ScenarioRef scenario;
    Backend backend = Backend::kExact;
    OutputFormat format = OutputFormat::kText;
    std::uint64_t seed = kDefaultSeed;
    std::vector<CheckConfig> checks;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a config document. Syntax errors and schema violations throw
/// ConfigFieldError with the line and JSON pointer of the offending field.
RunConfig parse_run_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_run_config(const std::string& path);

/// Canonical serialization: fixed key order, only fields relevant to each
/// check kind, two-space indent, trailing newline.
std::string serialize_run_config(const RunConfig& config);

}  // namespace qpigeon

#endif  // QPIGEON_CONFIG_HPP
