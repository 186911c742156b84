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
// Fixed-length pre-processing strategies applied after degradation.
//
//   resample_linear   linear interpolation along time onto target_len
//                     evenly spaced points; endpoints map to endpoints.
//   pad_replicate     tile the whole sequence until target_len is filled.
//   pad_repeat_last   repeat the last frame until target_len is filled.
//
// A DegradedSequence without mitigation is pre-processed through its
// compacted frames, i.e. original timestamps are discarded.

#ifndef SKELBENCH_PREPROC_HPP
#define SKELBENCH_PREPROC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "skelbench/sequence.hpp"

namespace skelbench {

enum class PreprocKind { resample_linear, pad_replicate, pad_repeat_last };

std::string to_string(PreprocKind kind);
PreprocKind parse_preproc_kind(std::string_view text);

struct PreprocSpec {
    PreprocKind kind = PreprocKind::resample_linear;
    std::size_t target_len = 64;

    void validate() const;  // target_len >= 2
    bool operator==(const PreprocSpec&) const = default;
};

/// Throws ParameterError for target_len < 2.
SkeletonSequence resample_linear(const SkeletonSequence& seq, std::size_t target_len);
/// Throws LengthError when T > target_len.
SkeletonSequence pad_replicate(const SkeletonSequence& seq, std::size_t target_len);
SkeletonSequence pad_repeat_last(const SkeletonSequence& seq, std::size_t target_len);

SkeletonSequence apply_preproc(const SkeletonSequence& seq, const PreprocSpec& spec);

}  // namespace skelbench

#endif  // SKELBENCH_PREPROC_HPP
