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

#include "qpigeon/config.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace qpigeon {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(Backend b) {
    switch (b) {
        case Backend::kExact:
            return "exact";
        case Backend::kFloat:
            return "float";
        case Backend::kBoth:
            return "both";
    }
    return "?";
}

Backend parse_backend(const std::string& text) {
    if (text == "exact") return Backend::kExact;
    if (text == "float") return Backend::kFloat;
    if (text == "both") return Backend::kBoth;
    throw ConfigError("unknown backend '" + text + "' (expected exact, float or both)");
}

const char* to_string(OutputFormat f) { return f == OutputFormat::kText ? "text" : "structured"; }

OutputFormat parse_output_format(const std::string& text) {
    if (text == "text") return OutputFormat::kText;
    if (text == "structured") return OutputFormat::kStructured;
    throw ConfigError("unknown format '" + text + "' (expected text or structured)");
}

namespace {

constexpr std::pair<CheckKind, const char*> kCheckNames[] = {
    {CheckKind::kClaims, "claims"},
    {CheckKind::kAbl, "abl"},
    {CheckKind::kReality, "element_of_reality"},
    {CheckKind::kWeakValue, "weak_value"},
    {CheckKind::kTrace, "trace"},
    {CheckKind::kStrongReadout, "strong_readout"},
    {CheckKind::kWeakReadout, "weak_readout"},
    {CheckKind::kSimultaneousReadout, "simultaneous_readout"},
};

}  // namespace

const char* to_string(CheckKind k) {
    for (const auto& [kind, name] : kCheckNames) {
        if (kind == k) return name;
    }
    return "?";
}

CheckKind parse_check_kind(const std::string& text) {
    for (const auto& [kind, name] : kCheckNames) {
        if (text == name) return kind;
    }
    throw ConfigError("unknown check kind '" + text + "'");
}

ConfigFieldError::ConfigFieldError(std::string source, int line, std::string field, const std::string& what)
    : ConfigError(source + ":" + (line > 0 ? std::to_string(line) : std::string("?")) + ": field " +
                  (field.empty() ? std::string("/") : field) + ": " + what),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

namespace {

std::string escape_pointer_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

/// Maps JSON pointers to the line where each value starts. Runs on text
/// that already parsed, so it only tracks strings, nesting and commas.
class LineIndex {
  public:
    explicit LineIndex(const std::string& text) {
        struct Frame {
            bool array;
            std::string pointer;
            std::size_t index = 0;
            std::string key;
            bool expect_key = true;
        };
        std::vector<Frame> stack;
        int line = 1;
        auto value_pointer = [&]() -> std::string {
            if (stack.empty()) return "";
            const Frame& f = stack.back();
            return f.pointer + "/" + (f.array ? std::to_string(f.index) : escape_pointer_token(f.key));
        };
        auto mark_value = [&]() {
            std::string p = value_pointer();
            lines_.try_emplace(p, line);
        };
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == ':') continue;
            if (c == '"') {
                std::string s;
                for (++i; i < text.size() && text[i] != '"'; ++i) {
                    if (text[i] == '\\' && i + 1 < text.size()) {
                        ++i;
                    }
                    s += text[i];
                }
                if (!stack.empty() && !stack.back().array && stack.back().expect_key) {
                    stack.back().key = s;
                    stack.back().expect_key = false;
                    lines_.try_emplace(value_pointer(), line);
                } else {
                    mark_value();
                }
                continue;
            }
            if (c == '{' || c == '[') {
                mark_value();
                std::string p = value_pointer();
                stack.push_back(Frame{c == '[', p, 0, "", true});
                continue;
            }
            if (c == '}' || c == ']') {
                stack.pop_back();
                continue;
            }
            if (c == ',') {
                if (!stack.empty()) {
                    if (stack.back().array) {
                        ++stack.back().index;
                    } else {
                        stack.back().expect_key = true;
                    }
                }
                continue;
            }
            // Literal or number: consume it.
            mark_value();
            while (i + 1 < text.size() && std::string(",]}\n \t\r").find(text[i + 1]) == std::string::npos) {
                ++i;
            }
        }
    }

    int line(const std::string& pointer) const {
        std::string p = pointer;
        while (true) {
            auto it = lines_.find(p);
            if (it != lines_.end()) return it->second;
            if (p.empty()) return 0;
            p = p.substr(0, p.rfind('/'));
        }
    }

  private:
    std::map<std::string, int> lines_;
};

class Reader {
  public:
    Reader(const std::string& source, const LineIndex& index) : source_(source), index_(index) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
        throw ConfigFieldError(source_, index_.line(pointer), pointer, what);
    }

    const json& object(const json& j, const std::string& pointer, std::initializer_list<const char*> allowed) const {
        if (!j.is_object()) fail(pointer, "expected an object");
        for (const auto& [key, value] : j.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
                fail(pointer + "/" + escape_pointer_token(key), "unknown field '" + key + "'");
            }
        }
        return j;
    }

    std::string string(const json& j, const std::string& pointer) const {
        if (!j.is_string()) fail(pointer, "expected a string");
        return j.get<std::string>();
    }

    int integer(const json& j, const std::string& pointer) const {
        if (!j.is_number_integer()) fail(pointer, "expected an integer");
        auto v = j.get<std::int64_t>();
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
            fail(pointer, "integer out of range");
        }
        return static_cast<int>(v);
    }

    std::uint64_t unsigned_integer(const json& j, const std::string& pointer) const {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
            fail(pointer, "expected a non-negative integer");
        }
        return j.get<std::uint64_t>();
    }

    double number(const json& j, const std::string& pointer) const {
        if (!j.is_number()) fail(pointer, "expected a number");
        return j.get<double>();
    }

    const json& array(const json& j, const std::string& pointer) const {
        if (!j.is_array()) fail(pointer, "expected an array");
        return j;
    }

    std::map<std::string, std::string> string_table(const json& j, const std::string& pointer) const {
        if (!j.is_object()) fail(pointer, "expected an object of amplitude strings");
        std::map<std::string, std::string> out;
        for (const auto& [key, value] : j.items()) {
            out[key] = string(value, pointer + "/" + escape_pointer_token(key));
        }
        return out;
    }

  private:
    const std::string& source_;
    const LineIndex& index_;
};

template <class F>
void optional_field(const json& j, const char* key, const std::string& pointer, F&& f) {
    auto it = j.find(key);
    if (it != j.end()) {
        f(*it, pointer + "/" + key);
    }
}

ScenarioRef read_scenario(const Reader& r, const json& j, const std::string& p) {
    if (j.is_string()) {
        ScenarioRef out;
        out.name = r.string(j, p);
        return out;
    }
    if (!j.is_object()) r.fail(p, "expected a scenario name or object");
    if (!j.contains("name")) r.fail(p, "missing field 'name'");
    ScenarioRef out;
    out.name = r.string(j.at("name"), p + "/name");
    if (out.is_inline()) {
        r.object(j, p, {"name", "representation", "boxes", "pre", "post"});
        optional_field(j, "representation", p, [&](const json& v, const std::string& q) {
            auto s = r.string(v, q);
            if (s == "distinguishable") {
                out.representation = Representation::kDistinguishable;
            } else if (s == "fock") {
                out.representation = Representation::kFock;
            } else {
                r.fail(q, "unknown representation '" + s + "'");
            }
        });
        optional_field(j, "boxes", p, [&](const json& v, const std::string& q) { out.boxes = r.integer(v, q); });
        if (!j.contains("pre")) r.fail(p, "inline scenario needs 'pre'");
        if (!j.contains("post")) r.fail(p, "inline scenario needs 'post'");
        out.pre = r.string_table(j.at("pre"), p + "/pre");
        out.post = r.string_table(j.at("post"), p + "/post");
    } else {
        r.object(j, p, {"name", "particles", "threshold", "boxes"});
        optional_field(j, "particles", p, [&](const json& v, const std::string& q) { out.particles = r.integer(v, q); });
        optional_field(j, "threshold", p, [&](const json& v, const std::string& q) { out.threshold = r.integer(v, q); });
        optional_field(j, "boxes", p, [&](const json& v, const std::string& q) { out.boxes = r.integer(v, q); });
    }
    return out;
}

CheckConfig read_check(const Reader& r, const json& j, const std::string& p) {
    if (!j.is_object()) r.fail(p, "expected an object");
    if (!j.contains("kind")) r.fail(p, "missing field 'kind'");
    CheckConfig out;
    try {
        out.kind = parse_check_kind(r.string(j.at("kind"), p + "/kind"));
    } catch (const ConfigFieldError&) {
        throw;
    } catch (const ConfigError& e) {
        r.fail(p + "/kind", e.what());
    }
    switch (out.kind) {
        case CheckKind::kClaims:
            r.object(j, p, {"kind", "id", "filter"});
            break;
        case CheckKind::kAbl:
        case CheckKind::kReality:
            r.object(j, p, {"kind", "id", "observable", "eigenvalue", "expected"});
            break;
        case CheckKind::kWeakValue:
            r.object(j, p, {"kind", "id", "observable", "expected"});
            break;
        case CheckKind::kTrace:
            r.object(j, p, {"kind", "id", "couplings", "particles", "masks", "truncation", "eps_grid", "expected"});
            break;
        case CheckKind::kStrongReadout:
        case CheckKind::kSimultaneousReadout:
            r.object(j, p, {"kind", "id", "pairs", "shots", "expected"});
            break;
        case CheckKind::kWeakReadout:
            r.object(j, p, {"kind", "id", "pairs", "shots", "coupling", "spread", "tolerance", "expected"});
            break;
    }
    optional_field(j, "id", p, [&](const json& v, const std::string& q) { out.id = r.string(v, q); });
    optional_field(j, "filter", p, [&](const json& v, const std::string& q) {
        const auto& a = r.array(v, q);
        for (std::size_t n = 0; n < a.size(); ++n) {
            auto s = r.string(a[n], q + "/" + std::to_string(n));
            if (s != "abl" && s != "element_of_reality" && s != "weak_value") {
                r.fail(q + "/" + std::to_string(n), "unknown claim kind '" + s + "'");
            }
            out.filter.push_back(s);
        }
    });
    bool needs_observable = out.kind == CheckKind::kAbl || out.kind == CheckKind::kReality ||
                            out.kind == CheckKind::kWeakValue;
    if (needs_observable && !j.contains("observable")) r.fail(p, "missing field 'observable'");
    optional_field(j, "observable", p, [&](const json& v, const std::string& q) { out.observable = r.string(v, q); });
    optional_field(j, "eigenvalue", p, [&](const json& v, const std::string& q) { out.eigenvalue = r.string(v, q); });
    optional_field(j, "expected", p, [&](const json& v, const std::string& q) { out.expected = r.string(v, q); });
    optional_field(j, "couplings", p, [&](const json& v, const std::string& q) {
        out.couplings = r.string(v, q);
        if (out.couplings != "default" && out.couplings != "local" && out.couplings != "nonlocal") {
            r.fail(q, "unknown coupling scheme '" + out.couplings + "' (expected default, local or nonlocal)");
        }
    });
    optional_field(j, "particles", p, [&](const json& v, const std::string& q) {
        const auto& a = r.array(v, q);
        for (std::size_t n = 0; n < a.size(); ++n) {
            out.particles.push_back(r.integer(a[n], q + "/" + std::to_string(n)));
        }
    });
    optional_field(j, "masks", p, [&](const json& v, const std::string& q) {
        const auto& a = r.array(v, q);
        for (std::size_t n = 0; n < a.size(); ++n) {
            out.masks.push_back(r.string(a[n], q + "/" + std::to_string(n)));
        }
    });
    optional_field(j, "truncation", p, [&](const json& v, const std::string& q) { out.truncation = r.integer(v, q); });
    optional_field(j, "eps_grid", p, [&](const json& v, const std::string& q) {
        const auto& a = r.array(v, q);
        for (std::size_t n = 0; n < a.size(); ++n) {
            double e = r.number(a[n], q + "/" + std::to_string(n));
            if (!(e > 0.0)) r.fail(q + "/" + std::to_string(n), "eps must be positive");
            out.eps_grid.push_back(e);
        }
    });
    optional_field(j, "pairs", p, [&](const json& v, const std::string& q) {
        const auto& a = r.array(v, q);
        for (std::size_t n = 0; n < a.size(); ++n) {
            std::string qn = q + "/" + std::to_string(n);
            const auto& pair = r.array(a[n], qn);
            if (pair.size() != 2) r.fail(qn, "a parity pair has exactly two particles");
            out.pairs.push_back({r.integer(pair[0], qn + "/0"), r.integer(pair[1], qn + "/1")});
        }
    });
    optional_field(j, "shots", p, [&](const json& v, const std::string& q) { out.shots = r.unsigned_integer(v, q); });
    optional_field(j, "coupling", p, [&](const json& v, const std::string& q) {
        out.coupling = r.number(v, q);
        if (!(*out.coupling > 0.0)) r.fail(q, "coupling must be positive");
    });
    optional_field(j, "spread", p, [&](const json& v, const std::string& q) {
        out.spread = r.number(v, q);
        if (!(*out.spread > 0.0)) r.fail(q, "spread must be positive");
    });
    optional_field(j, "tolerance", p, [&](const json& v, const std::string& q) {
        out.tolerance = r.number(v, q);
        if (!(*out.tolerance >= 0.0)) r.fail(q, "tolerance must be non-negative");
    });
    return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            line += text[i] == '\n';
        }
        throw ConfigFieldError(source, line, "", std::string("syntax error: ") + e.what());
    }
    LineIndex index(text);
    Reader r(source, index);
    r.object(doc, "", {"schema", "scenario", "backend", "format", "seed", "checks"});
    if (!doc.contains("schema")) r.fail("", "missing field 'schema'");
    auto schema = r.string(doc.at("schema"), "/schema");
    if (schema != RunConfig::kSchema) {
        r.fail("/schema", "unsupported schema '" + schema + "' (expected " + RunConfig::kSchema + ")");
    }
    RunConfig out;
    if (!doc.contains("scenario")) r.fail("", "missing field 'scenario'");
    out.scenario = read_scenario(r, doc.at("scenario"), "/scenario");
    optional_field(doc, "backend", "", [&](const json& v, const std::string& q) {
        try {
            out.backend = parse_backend(r.string(v, q));
        } catch (const ConfigFieldError&) {
            throw;
        } catch (const ConfigError& e) {
            r.fail(q, e.what());
        }
    });
    optional_field(doc, "format", "", [&](const json& v, const std::string& q) {
        try {
            out.format = parse_output_format(r.string(v, q));
        } catch (const ConfigFieldError&) {
            throw;
        } catch (const ConfigError& e) {
            r.fail(q, e.what());
        }
    });
    optional_field(doc, "seed", "", [&](const json& v, const std::string& q) { out.seed = r.unsigned_integer(v, q); });
    if (!doc.contains("checks")) r.fail("", "missing field 'checks'");
    const auto& checks = r.array(doc.at("checks"), "/checks");
    for (std::size_t n = 0; n < checks.size(); ++n) {
        out.checks.push_back(read_check(r, checks[n], "/checks/" + std::to_string(n)));
    }
    return out;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigFieldError(path, 0, "", "cannot open file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(), path);
}

namespace {

ordered_json write_scenario(const ScenarioRef& s) {
    ordered_json j;
    j["name"] = s.name;
    if (s.is_inline()) {
        j["representation"] = to_string(s.representation);
        if (s.boxes) j["boxes"] = *s.boxes;
        j["pre"] = ordered_json::object();
        for (const auto& [k, v] : s.pre) j["pre"][k] = v;
        j["post"] = ordered_json::object();
        for (const auto& [k, v] : s.post) j["post"][k] = v;
        return j;
    }
    if (s.particles) j["particles"] = *s.particles;
    if (s.threshold) j["threshold"] = *s.threshold;
    if (s.boxes) j["boxes"] = *s.boxes;
    return j;
}

ordered_json write_check(const CheckConfig& c) {
    ordered_json j;
    j["kind"] = to_string(c.kind);
    if (!c.id.empty()) j["id"] = c.id;
    switch (c.kind) {
        case CheckKind::kClaims:
            if (!c.filter.empty()) j["filter"] = c.filter;
            break;
        case CheckKind::kAbl:
        case CheckKind::kReality:
            j["observable"] = c.observable;
            j["eigenvalue"] = c.eigenvalue;
            break;
        case CheckKind::kWeakValue:
            j["observable"] = c.observable;
            break;
        case CheckKind::kTrace:
            j["couplings"] = c.couplings;
            if (!c.particles.empty()) j["particles"] = c.particles;
            if (!c.masks.empty()) j["masks"] = c.masks;
            if (c.truncation) j["truncation"] = *c.truncation;
            if (!c.eps_grid.empty()) j["eps_grid"] = c.eps_grid;
            break;
        case CheckKind::kStrongReadout:
        case CheckKind::kSimultaneousReadout:
        case CheckKind::kWeakReadout:
            if (!c.pairs.empty()) {
                j["pairs"] = ordered_json::array();
                for (const auto& p : c.pairs) j["pairs"].push_back({p.j, p.k});
            }
            if (c.shots) j["shots"] = *c.shots;
            if (c.kind == CheckKind::kWeakReadout) {
                if (c.coupling) j["coupling"] = *c.coupling;
                if (c.spread) j["spread"] = *c.spread;
                if (c.tolerance) j["tolerance"] = *c.tolerance;
            }
            break;
    }
    if (c.expected && c.kind != CheckKind::kClaims) j["expected"] = *c.expected;
    return j;
}

}  // namespace

std::string serialize_run_config(const RunConfig& config) {
    ordered_json j;
    j["schema"] = RunConfig::kSchema;
    j["scenario"] = write_scenario(config.scenario);
    j["backend"] = to_string(config.backend);
    j["format"] = to_string(config.format);
    j["seed"] = config.seed;
    j["checks"] = ordered_json::array();
    for (const auto& c : config.checks) {
        j["checks"].push_back(write_check(c));
    }
    return j.dump(2) + "\n";
}

}  // namespace qpigeon
