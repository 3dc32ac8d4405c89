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

#include "qpath/circuit.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>

#include "json.hpp"

namespace qpath {

namespace {

std::string one_based(PathIndex p) {
    return std::to_string(p + 1);
}

template <typename... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// Marks the paths a gate occupies; reports the first path seen twice.
void claim(std::vector<char> &used, PathIndex p, std::size_t width) {
    if (p >= width) {
        throw CircuitError("path " + one_based(p) + " out of range for " + std::to_string(width) + " paths");
    }
    if (used[p]) {
        throw CircuitError("path " + one_based(p) + " used by more than one gate in a layer");
    }
    used[p] = 1;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                         ": " + message),
      line_(line),
      column_(column) {
}

Partition validate_layer(const Layer &layer, std::size_t width) {
    Partition out;
    std::vector<char> used(width, 0);
    for (const Gate &gate : layer.gates) {
        std::visit(Overloaded{
                       [&](const PhaseShifter &g) {
                           if (!std::isfinite(g.omega)) {
                               throw CircuitError("phase shifter angle must be finite");
                           }
                           claim(used, g.path, width);
                           out.phases.push_back(g.path);
                       },
                       [&](const BeamSplitter &g) {
                           if (g.s == g.t) {
                               throw CircuitError("beam splitter requires two distinct paths, got " +
                                                  one_based(g.s) + " twice");
                           }
                           if (!(g.reflectivity >= 0.0 && g.reflectivity <= 1.0)) {
                               throw CircuitError("beam splitter reflectivity must lie in [0,1]");
                           }
                           claim(used, g.s, width);
                           claim(used, g.t, width);
                           out.splitters.emplace_back(g.s, g.t);
                       },
                       [&](const Detector &g) {
                           claim(used, g.path, width);
                           out.detectors.push_back(g.path);
                       },
                   },
                   gate);
    }
    for (PathIndex p = 0; p < width; ++p) {
        if (!used[p]) {
            out.free.push_back(p);
        }
    }
    return out;
}

Circuit::Circuit(std::size_t width, std::vector<Layer> layers, std::string name, std::string description)
    : width_(width), layers_(std::move(layers)), name_(std::move(name)), description_(std::move(description)) {
    if (width_ == 0) {
        throw CircuitError("a circuit needs at least one path");
    }
    partitions_.reserve(layers_.size());
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        try {
            partitions_.push_back(validate_layer(layers_[k], width_));
        } catch (const CircuitError &e) {
            throw CircuitError("layer " + std::to_string(k + 1) + ": " + e.what());
        }
    }
}

bool Circuit::has_detectors() const {
    return std::any_of(partitions_.begin(), partitions_.end(),
                       [](const Partition &p) { return !p.detectors.empty(); });
}

bool approx_equal(const Circuit &a, const Circuit &b, double tolerance) {
    if (a.width() != b.width() || a.depth() != b.depth()) {
        return false;
    }
    for (std::size_t k = 0; k < a.depth(); ++k) {
        const auto &ga = a.layer(k).gates;
        const auto &gb = b.layer(k).gates;
        if (ga.size() != gb.size()) {
            return false;
        }
        for (std::size_t g = 0; g < ga.size(); ++g) {
            if (ga[g].index() != gb[g].index()) {
                return false;
            }
            bool same = std::visit(
                Overloaded{
                    [&](const PhaseShifter &x) {
                        const auto &y = std::get<PhaseShifter>(gb[g]);
                        return x.path == y.path && std::abs(x.omega - y.omega) <= tolerance;
                    },
                    [&](const BeamSplitter &x) {
                        const auto &y = std::get<BeamSplitter>(gb[g]);
                        return x.s == y.s && x.t == y.t && std::abs(x.reflectivity - y.reflectivity) <= tolerance;
                    },
                    [&](const Detector &x) { return x.path == std::get<Detector>(gb[g]).path; },
                },
                ga[g]);
            if (!same) {
                return false;
            }
        }
    }
    return true;
}

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

// ---------------------------------------------------------------------------
// DSL reader.

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // one-based
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') {
            break;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '|') {
            out.push_back({line.substr(i, 1), i + 1});
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '|' &&
               line[i] != '#') {
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

class LineParser {
   public:
    LineParser(std::size_t line_no, std::vector<Token> tokens) : line_(line_no), tokens_(std::move(tokens)) {
    }

    [[noreturn]] void fail(std::size_t column, const std::string &message) const {
        throw ParseError(line_, column, message);
    }

    std::size_t end_column() const {
        return tokens_.empty() ? 1 : tokens_.back().column + tokens_.back().text.size();
    }

    std::size_t parse_count(const Token &tok) const {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
            fail(tok.column, "expected a non-negative integer, got '" + std::string(tok.text) + "'");
        }
        return value;
    }

    PathIndex parse_path(const Token &tok, std::size_t width) const {
        std::size_t value = parse_count(tok);
        if (value < 1 || value > width) {
            fail(tok.column, "path index " + std::string(tok.text) + " out of range 1.." + std::to_string(width));
        }
        return value - 1;
    }

    double parse_keyed_real(const Token &tok, std::initializer_list<std::string_view> keys) const {
        auto eq = tok.text.find('=');
        if (eq == std::string_view::npos) {
            fail(tok.column, "expected key=value, got '" + std::string(tok.text) + "'");
        }
        std::string_view key = tok.text.substr(0, eq);
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            fail(tok.column, "unexpected parameter '" + std::string(key) + "'");
        }
        std::string_view num = tok.text.substr(eq + 1);
        double value = 0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
        if (ec != std::errc() || ptr != num.data() + num.size() || !std::isfinite(value)) {
            fail(tok.column + eq + 1, "malformed number '" + std::string(num) + "'");
        }
        return value;
    }

    Layer parse_layer(std::size_t width) const {
        Layer layer;
        std::vector<char> used(width, 0);
        auto mark = [&](PathIndex p, std::size_t column) {
            if (used[p]) {
                fail(column, "path " + one_based(p) + " appears twice in one layer");
            }
            used[p] = 1;
        };
        std::size_t i = 1;  // tokens_[0] is "layer"
        while (i < tokens_.size()) {
            std::size_t start = i;
            while (i < tokens_.size() && tokens_[i].text != "|") {
                ++i;
            }
            std::span<const Token> gate(tokens_.data() + start, i - start);
            if (gate.empty()) {
                fail(i < tokens_.size() ? tokens_[i].column : end_column(), "empty gate between separators");
            }
            layer.gates.push_back(parse_gate(gate, width, mark));
            if (i < tokens_.size()) {
                ++i;  // skip '|'
                if (i == tokens_.size()) {
                    fail(end_column(), "dangling '|' at end of layer");
                }
            }
        }
        return layer;
    }

    template <typename Mark>
    Gate parse_gate(std::span<const Token> toks, std::size_t width, Mark &mark) const {
        const Token &head = toks[0];
        auto expect_args = [&](std::size_t n) {
            if (toks.size() != n + 1) {
                fail(head.column, std::string(head.text) + " expects " + std::to_string(n) + " arguments, got " +
                                      std::to_string(toks.size() - 1));
            }
        };
        if (head.text == "BS") {
            expect_args(3);
            PathIndex s = parse_path(toks[1], width);
            PathIndex t = parse_path(toks[2], width);
            if (s == t) {
                fail(toks[2].column, "beam splitter requires two distinct paths");
            }
            double r = parse_keyed_real(toks[3], {"R"});
            if (r < 0.0 || r > 1.0) {
                fail(toks[3].column, "reflectivity R=" + format_real(r) + " outside [0,1]");
            }
            mark(s, toks[1].column);
            mark(t, toks[2].column);
            return BeamSplitter{s, t, r};
        }
        if (head.text == "S") {
            expect_args(2);
            PathIndex j = parse_path(toks[1], width);
            double w = parse_keyed_real(toks[2], {"w", "omega"});
            mark(j, toks[1].column);
            return PhaseShifter{j, w};
        }
        if (head.text == "D") {
            expect_args(1);
            PathIndex j = parse_path(toks[1], width);
            mark(j, toks[1].column);
            return Detector{j};
        }
        fail(head.column, "unknown gate '" + std::string(head.text) + "'");
    }

    const std::vector<Token> &tokens() const {
        return tokens_;
    }

   private:
    std::size_t line_;
    std::vector<Token> tokens_;
};

std::string_view rest_of_line(std::string_view line, const Token &after) {
    std::size_t from = after.column - 1 + after.text.size();
    std::string_view rest = line.substr(from);
    auto hash = rest.find('#');
    if (hash != std::string_view::npos) {
        rest = rest.substr(0, hash);
    }
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
        rest.remove_prefix(1);
    }
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) {
        rest.remove_suffix(1);
    }
    return rest;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::optional<std::size_t> width;
    std::vector<Layer> layers;
    std::string name;
    std::string description;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        LineParser p(line_no, tokenize(line));
        const auto &toks = p.tokens();
        if (toks.empty()) {
            continue;
        }
        std::string_view kw = toks[0].text;
        if (kw == "paths") {
            if (width) {
                p.fail(toks[0].column, "duplicate 'paths' header");
            }
            if (toks.size() != 2) {
                p.fail(toks[0].column, "'paths' expects exactly one integer");
            }
            std::size_t n = p.parse_count(toks[1]);
            if (n == 0) {
                p.fail(toks[1].column, "a circuit needs at least one path");
            }
            width = n;
        } else if (kw == "layer") {
            if (!width) {
                p.fail(toks[0].column, "'layer' before 'paths' header");
            }
            layers.push_back(p.parse_layer(*width));
        } else if (kw == "name") {
            name = std::string(rest_of_line(line, toks[0]));
        } else if (kw == "description") {
            description = std::string(rest_of_line(line, toks[0]));
        } else {
            p.fail(toks[0].column, "unknown statement '" + std::string(kw) + "'");
        }
    }
    if (!width) {
        throw ParseError(line_no, 1, "missing 'paths' header");
    }
    return Circuit(*width, std::move(layers), std::move(name), std::move(description));
}

std::string serialize_circuit(const Circuit &circuit) {
    std::ostringstream out;
    if (!circuit.name().empty()) {
        out << "name " << circuit.name() << "\n";
    }
    if (!circuit.description().empty()) {
        out << "description " << circuit.description() << "\n";
    }
    out << "paths " << circuit.width() << "\n";
    for (const Layer &layer : circuit.layers()) {
        out << "layer";
        bool first = true;
        for (const Gate &gate : layer.gates) {
            out << (first ? " " : " | ");
            first = false;
            std::visit(Overloaded{
                           [&](const PhaseShifter &g) { out << "S " << g.path + 1 << " w=" << format_real(g.omega); },
                           [&](const BeamSplitter &g) {
                               out << "BS " << g.s + 1 << " " << g.t + 1 << " R=" << format_real(g.reflectivity);
                           },
                           [&](const Detector &g) { out << "D " << g.path + 1; },
                       },
                       gate);
        }
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON mirror.

namespace {

PathIndex json_path(const nlohmann::json &v, std::size_t width, const std::string &where) {
    if (!v.is_number_integer()) {
        throw ParseError(0, 0, where + ": path must be an integer");
    }
    auto p = v.get<long long>();
    if (p < 1 || static_cast<std::size_t>(p) > width) {
        throw ParseError(0, 0, where + ": path index " + std::to_string(p) + " out of range 1.." +
                                   std::to_string(width));
    }
    return static_cast<PathIndex>(p - 1);
}

double json_real(const nlohmann::json &v, const std::string &where) {
    if (!v.is_number()) {
        throw ParseError(0, 0, where + ": expected a number");
    }
    return v.get<double>();
}

}  // namespace

Circuit parse_circuit_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(0, 0, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("paths") || !doc["paths"].is_number_integer() || doc["paths"] < 1) {
        throw ParseError(0, 0, "circuit JSON needs a positive integer 'paths'");
    }
    auto width = doc["paths"].get<std::size_t>();
    std::vector<Layer> layers;
    const auto &jl = doc.value("layers", nlohmann::json::array());
    if (!jl.is_array()) {
        throw ParseError(0, 0, "'layers' must be an array");
    }
    for (std::size_t k = 0; k < jl.size(); ++k) {
        const std::string where = "layer " + std::to_string(k + 1);
        if (!jl[k].is_array()) {
            throw ParseError(0, 0, where + ": expected an array of gates");
        }
        Layer layer;
        for (const auto &g : jl[k]) {
            if (!g.is_object() || !g.contains("gate") || !g["gate"].is_string()) {
                throw ParseError(0, 0, where + ": gate objects need a 'gate' name");
            }
            auto kind = g["gate"].get<std::string>();
            const auto &args = g.value("args", nlohmann::json::array());
            auto need = [&](std::size_t n) {
                if (!args.is_array() || args.size() != n) {
                    throw ParseError(0, 0, where + ": " + kind + " expects " + std::to_string(n) + " args");
                }
            };
            if (kind == "BS") {
                need(3);
                layer.gates.push_back(
                    BeamSplitter{json_path(args[0], width, where), json_path(args[1], width, where),
                                 json_real(args[2], where)});
            } else if (kind == "S") {
                need(2);
                layer.gates.push_back(PhaseShifter{json_path(args[0], width, where), json_real(args[1], where)});
            } else if (kind == "D") {
                need(1);
                layer.gates.push_back(Detector{json_path(args[0], width, where)});
            } else {
                throw ParseError(0, 0, where + ": unknown gate '" + kind + "'");
            }
        }
        layers.push_back(std::move(layer));
    }
    try {
        return Circuit(width, std::move(layers), doc.value("name", std::string{}),
                       doc.value("description", std::string{}));
    } catch (const CircuitError &e) {
        throw ParseError(0, 0, e.what());
    }
}

std::string circuit_to_json(const Circuit &circuit) {
    nlohmann::json doc;
    doc["paths"] = circuit.width();
    if (!circuit.name().empty()) {
        doc["name"] = circuit.name();
    }
    if (!circuit.description().empty()) {
        doc["description"] = circuit.description();
    }
    auto layers = nlohmann::json::array();
    for (const Layer &layer : circuit.layers()) {
        auto gates = nlohmann::json::array();
        for (const Gate &gate : layer.gates) {
            std::visit(Overloaded{
                           [&](const PhaseShifter &g) {
                               gates.push_back({{"gate", "S"}, {"args", {g.path + 1, g.omega}}});
                           },
                           [&](const BeamSplitter &g) {
                               gates.push_back({{"gate", "BS"}, {"args", {g.s + 1, g.t + 1, g.reflectivity}}});
                           },
                           [&](const Detector &g) { gates.push_back({{"gate", "D"}, {"args", {g.path + 1}}}); },
                       },
                       gate);
        }
        layers.push_back(std::move(gates));
    }
    doc["layers"] = std::move(layers);
    return doc.dump(2) + "\n";
}

Circuit load_circuit_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open circuit file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        return parse_circuit_json(text);
    }
    try {
        return parse_circuit(text);
    } catch (const CircuitError &e) {
        throw ParseError(0, 0, e.what());
    }
}

}  // namespace qpath
