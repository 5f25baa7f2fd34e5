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

#include "qpigeon/report.hpp"

#include <Eigen/Core>
#include <gmp.h>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace qpigeon {

using nlohmann::ordered_json;

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::kPass:
            return "PASS";
        case Verdict::kFail:
            return "FAIL";
        case Verdict::kInfo:
            return "info";
    }
    return "?";
}

std::size_t Report::failures() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.verdict == Verdict::kFail; }));
}

namespace {

ordered_json integer_json(const mpz_class& z) {
    if (z.fits_slong_p()) {
        return static_cast<std::int64_t>(z.get_si());
    }
    return z.get_str();
}

ordered_json environment_json() {
    ordered_json env;
    env["qpigeon"] = kVersion;
    env["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                   std::to_string(EIGEN_MINOR_VERSION);
    env["gmp"] = gmp_version;
#if defined(__clang__)
    env["compiler"] = "clang " __clang_version__;
#elif defined(__GNUC__)
    env["compiler"] = "gcc " __VERSION__;
#else
    env["compiler"] = "unknown";
#endif
    return env;
}

}  // namespace

ordered_json rational_json(const Rational& q) {
    ordered_json j;
    j["num"] = integer_json(q.get_num());
    j["den"] = integer_json(q.get_den());
    return j;
}

ordered_json exact_json(const Exact& z) {
    ordered_json j;
    j["re"] = rational_json(z.real());
    j["im"] = rational_json(z.imag());
    return j;
}

ordered_json float_json(const Float& z) {
    ordered_json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

ordered_json report_json(const Report& report) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["title"] = report.title;
    j["backend"] = report.backend;
    j["seed"] = report.seed;
    j["inputs"] = report.inputs;
    j["environment"] = environment_json();
    j["records"] = ordered_json::array();
    for (const auto& r : report.records) {
        ordered_json rec;
        rec["id"] = r.id;
        rec["check"] = r.check;
        rec["claim"] = r.claim;
        rec["subject"] = r.subject;
        rec["value"] = r.value;
        rec["expected"] = r.expected;
        rec["verdict"] = to_string(r.verdict);
        if (!r.note.empty()) rec["note"] = r.note;
        rec["data"] = r.data;
        j["records"].push_back(std::move(rec));
    }
    j["warnings"] = report.warnings;
    j["summary"] = {{"records", report.records.size()},
                    {"failures", report.failures()},
                    {"exit_code", report.exit_code()}};
    j["wall_seconds"] = report.wall_seconds;
    return j;
}

std::string render_structured(const Report& report) { return report_json(report).dump(2) + "\n"; }

std::string render_text(const Report& report) {
    std::ostringstream out;
    out << report.title << "\n";
    out << "backend: " << report.backend << "  seed: " << report.seed << "  qpigeon " << kVersion << "\n\n";
    const std::vector<std::string> head = {"id", "claim", "check", "subject", "value", "expected", "verdict"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.records) {
        rows.push_back({r.id, r.claim, r.check, r.subject, r.value, r.expected, to_string(r.verdict)});
    }
    std::vector<std::size_t> width(head.size());
    for (std::size_t c = 0; c < head.size(); ++c) {
        width[c] = head[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(c + 1 < cells.size() ? width[c] : 0))
                << cells[c];
        }
        out << "\n";
    };
    line(head);
    std::vector<std::string> rule;
    for (auto w : width) rule.push_back(std::string(w, '-'));
    line(rule);
    for (const auto& row : rows) line(row);
    for (const auto& r : report.records) {
        if (!r.note.empty() && r.verdict == Verdict::kFail) {
            out << "  " << r.id << ": " << r.note << "\n";
        }
    }
    for (const auto& w : report.warnings) {
        out << "warning: " << w << "\n";
    }
    out << "\n" << report.records.size() << " records, " << report.failures() << " failed";
    out << std::fixed << std::setprecision(2) << "  (" << report.wall_seconds << " s)\n";
    return out.str();
}

}  // namespace qpigeon
