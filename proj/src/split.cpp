/* Copyright 2026 The skelbench Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#include "skelbench/split.hpp"

#include <charconv>

#include "skelbench/error.hpp"
#include "skelbench/files.hpp"

namespace skelbench {

std::string to_string(SplitKind kind) {
    return kind == SplitKind::cross_subject ? "cross-subject" : "cross-setup";
}

SplitKind parse_split_kind(std::string_view text) {
    if (text == "cross-subject" || text == "xsub") return SplitKind::cross_subject;
    if (text == "cross-setup" || text == "xset") return SplitKind::cross_setup;
    throw ParameterError("unknown split kind '" + std::string(text) + "'");
}

void SplitSpec::validate() const {
    for (auto id : train_ids)
        if (test_ids.count(id))
            throw ParameterError("split id " + std::to_string(id) + " is in both train and test sets");
}

std::uint32_t SplitSpec::key_of(const SkeletonSequence& seq) const {
    return kind == SplitKind::cross_subject ? seq.info().subject_id : seq.info().setup_id;
}

SplitResult split_dataset(std::span<const SkeletonSequence> samples, const SplitSpec& spec) {
    spec.validate();
    SplitResult out;
    std::set<std::uint32_t> unassigned;
    for (const auto& s : samples) {
        const auto key = spec.key_of(s);
        if (spec.train_ids.count(key))
            out.train.push_back(s);
        else if (spec.test_ids.count(key))
            out.test.push_back(s);
        else
            unassigned.insert(key);
    }
    if (!unassigned.empty()) {
        std::string ids;
        for (auto id : unassigned) ids += (ids.empty() ? "" : ", ") + std::to_string(id);
        throw AssignmentError(std::string(spec.kind == SplitKind::cross_subject ? "subject" : "setup") +
                              " ids not assigned to train or test: " + ids);
    }
    return out;
}

std::set<std::uint32_t> parse_id_list(std::string_view text) {
    std::set<std::uint32_t> ids;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
        std::uint32_t id = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), id);
        if (ec != std::errc() || ptr != line.data() + line.size())
            throw ParseError("invalid id '" + std::string(line) + "'", line_no);
        ids.insert(id);
    }
    return ids;
}

std::set<std::uint32_t> read_id_list(const std::filesystem::path& path) { return parse_id_list(read_file(path)); }

std::string write_id_list(const std::set<std::uint32_t>& ids) {
    std::string out;
    for (auto id : ids) out += std::to_string(id) + "\n";
    return out;
}

}  // namespace skelbench
