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

// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any fails.

#include <iostream>

#include "qpigeon/reproduce.hpp"

int main() {
    qpigeon::ReproduceOptions options;
    auto report = qpigeon::reproduce_paper(options);
    auto verdicts = qpigeon::criterion_verdicts(report);
    const auto& titles = qpigeon::criterion_titles();
    bool all = true;
    for (const auto& [criterion, title] : titles) {
        auto it = verdicts.find(criterion);
        bool ok = it != verdicts.end() && it->second;
        all = all && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << criterion << ": " << title << "\n";
    }
    for (const auto& r : report.records) {
        if (r.verdict == qpigeon::Verdict::kFail) {
            std::cout << "  failed " << r.id << " " << r.subject << ": " << r.value << " (expected " << r.expected
                      << ")\n";
        }
    }
    std::cout << report.records.size() << " records, " << report.failures() << " failed\n";
    return all ? 0 : 1;
}
