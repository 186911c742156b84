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
// Reader for the NTU RGB+D `.skeleton` text format.
//
// Layout, one item per line:
//   <frame count>
//   per frame:
//     <body count>
//     per body:
//       <body id> <clipped edges> <hand L conf> <hand L state> <hand R conf>
//           <hand R state> <restricted> <lean x> <lean y> <tracking state>
//       <joint count>                       (must be 25)
//       per joint:
//         x y z depthX depthY colorX colorY orientW orientX orientY orientZ state
//
// Only x, y, z are kept. Frames are packed into `body_slots` fixed body slots;
// bodies beyond the first `body_count` are zero-filled. Metadata comes from
// the file name (SsssCcccPpppRrrrAaaa), never from the payload.

#ifndef SKELBENCH_NTU_HPP
#define SKELBENCH_NTU_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include "skelbench/sequence.hpp"

namespace skelbench::ntu {

inline constexpr std::size_t kJointsPerBody = 25;
inline constexpr double kCaptureFps = 30.0;

struct SampleName {
    std::uint32_t setup = 0;
    std::uint32_t camera = 0;
    std::uint32_t performer = 0;
    std::uint32_t replication = 0;
    std::uint32_t action = 0;  // 1-based, as in the file name

    std::string stem() const;
};

/// Decodes SsssCcccPpppRrrrAaaa from a bare name, a `.skeleton` file name or
/// a full path. Returns nullopt when the name does not follow the convention.
std::optional<SampleName> decode_sample_name(std::string_view file_name);

/// Parses a `.skeleton` payload. file_name supplies the metadata.
/// Throws ParseError (with line number) on malformed structure, SchemaError
/// on a joint count other than 25, more than body_slots bodies or an
/// undecodable file name, DataError on non-finite coordinates.
SkeletonSequence parse_skeleton(std::string_view text, std::string_view file_name,
                                std::size_t body_slots = 2);

SkeletonSequence read_skeleton_file(const std::filesystem::path& path, std::size_t body_slots = 2);

}  // namespace skelbench::ntu

#endif  // SKELBENCH_NTU_HPP
