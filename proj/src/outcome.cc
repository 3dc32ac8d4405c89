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

#include "qpath/outcome.h"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace qpath {

const OutcomeEvent *OutcomeRecord::find(std::size_t layer) const {
    for (const auto &e : events) {
        if (e.layer == layer) {
            return &e;
        }
    }
    return nullptr;
}

bool OutcomeRecord::matches(const OutcomeRecord &filter) const {
    return std::all_of(filter.events.begin(), filter.events.end(), [&](const OutcomeEvent &want) {
        const OutcomeEvent *got = find(want.layer);
        return got != nullptr && *got == want;
    });
}

std::string record_key(const OutcomeRecord &record) {
    if (record.events.empty()) {
        return "-";
    }
    std::string out;
    for (const auto &e : record.events) {
        if (!out.empty()) {
            out += ';';
        }
        out += 'L';
        out += std::to_string(e.layer + 1);
        out += ':';
        if (e.click) {
            out += 'C';
            out += std::to_string(*e.click + 1);
        } else {
            out += 'N';
        }
    }
    return out;
}

namespace {

std::size_t parse_one_based(std::string_view digits, std::string_view key) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || v == 0) {
        throw std::invalid_argument("malformed outcome key '" + std::string(key) + "'");
    }
    return v - 1;
}

}  // namespace

OutcomeRecord parse_record_key(std::string_view key) {
    OutcomeRecord rec;
    if (key == "-" || key.empty()) {
        return rec;
    }
    std::size_t pos = 0;
    while (pos <= key.size()) {
        std::size_t end = key.find(';', pos);
        std::string_view item = key.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? key.size() + 1 : end + 1;
        auto colon = item.find(':');
        if (item.size() < 4 || item[0] != 'L' || colon == std::string_view::npos || colon + 1 >= item.size()) {
            throw std::invalid_argument("malformed outcome key '" + std::string(key) + "'");
        }
        std::size_t layer = parse_one_based(item.substr(1, colon - 1), key);
        std::string_view res = item.substr(colon + 1);
        if (res == "N") {
            rec.events.push_back(OutcomeEvent::silent(layer));
        } else if (res[0] == 'C') {
            rec.events.push_back(OutcomeEvent::clicked(layer, parse_one_based(res.substr(1), key)));
        } else {
            throw std::invalid_argument("malformed outcome key '" + std::string(key) + "'");
        }
    }
    std::sort(rec.events.begin(), rec.events.end());
    for (std::size_t i = 1; i < rec.events.size(); ++i) {
        if (rec.events[i].layer == rec.events[i - 1].layer) {
            throw std::invalid_argument("outcome key '" + std::string(key) + "' names layer " +
                                        std::to_string(rec.events[i].layer + 1) + " twice");
        }
    }
    return rec;
}

}  // namespace qpath
