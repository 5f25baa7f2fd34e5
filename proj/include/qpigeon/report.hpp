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

#ifndef QPIGEON_REPORT_HPP
#define QPIGEON_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpigeon/amplitude.hpp"

namespace qpigeon {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "qpigeon.report/1";

enum class Verdict { kPass, kFail, kInfo };
const char* to_string(Verdict v);

struct CheckRecord {
    /// Stable sort key; records are emitted in insertion order, which the
    /// runner derives from check ids, never from completion order.
    std::string id;
    std::string check;
    /// Claim tag: the construction or statement the record verifies.
    std::string claim;
    std::string subject;
    std::string value;
    std::string expected;
    Verdict verdict = Verdict::kInfo;
    std::string note;
    /// Structured payload: inputs, exact values as num/den pairs, floats.
    nlohmann::ordered_json data = nlohmann::ordered_json::object();
};

struct Report {
    std::string title;
    std::string backend;
    std::uint64_t seed = 0;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    std::vector<CheckRecord> records;
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;

    std::size_t failures() const;
    /// 0 when every verdict passes, 1 otherwise.
    int exit_code() const { return failures() == 0 ? 0 : 1; }
};

/// {"num": n, "den": d}; integers that overflow int64 are written as strings.
nlohmann::ordered_json rational_json(const Rational& q);
/// {"re": {num, den}, "im": {num, den}}.
nlohmann::ordered_json exact_json(const Exact& z);
/// {"re": x, "im": y}.
nlohmann::ordered_json float_json(const Float& z);

std::string render_text(const Report& report);
/// Stable-order JSON document, two-space indent, trailing newline.
std::string render_structured(const Report& report);
/// Same document as a JSON value.
nlohmann::ordered_json report_json(const Report& report);

}  // namespace qpigeon

#endif  // QPIGEON_REPORT_HPP
