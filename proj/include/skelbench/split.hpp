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
// Train/test partitioning by subject or camera setup.

#ifndef SKELBENCH_SPLIT_HPP
#define SKELBENCH_SPLIT_HPP

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skelbench/sequence.hpp"

namespace skelbench {

enum class SplitKind { cross_subject, cross_setup };

std::string to_string(SplitKind kind);
/// Accepts "cross-subject"/"xsub" and "cross-setup"/"xset".
SplitKind parse_split_kind(std::string_view text);

struct SplitSpec {
    SplitKind kind = SplitKind::cross_subject;
    std::set<std::uint32_t> train_ids;
    std::set<std::uint32_t> test_ids;

    /// Throws ParameterError when the id sets intersect.
    void validate() const;
    /// subject_id or setup_id, depending on kind.
    std::uint32_t key_of(const SkeletonSequence& seq) const;
};

struct SplitResult {
    std::vector<SkeletonSequence> train;
    std::vector<SkeletonSequence> test;
};

/// Stable, exhaustive, disjoint partition. Throws AssignmentError listing
/// every key id that appears in neither set.
SplitResult split_dataset(std::span<const SkeletonSequence> samples, const SplitSpec& spec);

/// One id per line; blank lines and '#' comments ignored.
std::set<std::uint32_t> parse_id_list(std::string_view text);
std::set<std::uint32_t> read_id_list(const std::filesystem::path& path);
std::string write_id_list(const std::set<std::uint32_t>& ids);

}  // namespace skelbench

#endif  // SKELBENCH_SPLIT_HPP
