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
// Canonical interchange codecs for SkeletonSequence.
//
// JSON document (version 1):
//   {
//     "format": "skelbench.sequence", "version": 1,          (optional on read)
//     "fps": 30, "num_joints": 25, "channels": 3,
//     "num_bodies": 1,                                        (optional, default 1)
//     "label": 0, "subject_id": 1, "setup_id": 1, "camera_id": 1,
//     "sample_id": "S001C001P001R001A001",
//     "frames": [ [ [x, y, z], ... num_bodies*num_joints ... ], ... T ... ]
//   }
// Doubles are written in shortest round-trip form, so read(write(s)) == s
// bit for bit.
//
// Binary variant, all integers and doubles little-endian:
//   bytes 0..7   magic "SKBSEQ01"
//   bytes 8..11  uint32 header length H
//   next H bytes JSON header: the document above without "frames", plus
//                "num_frames"
//   remainder    float64 coordinates, T * width values in frame order

#ifndef SKELBENCH_CANONICAL_HPP
#define SKELBENCH_CANONICAL_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "skelbench/sequence.hpp"

namespace skelbench::canonical {

std::string write_json(const SkeletonSequence& seq);
SkeletonSequence read_json(std::string_view bytes);

std::string write_binary(const SkeletonSequence& seq);
SkeletonSequence read_binary(std::string_view bytes);

/// Dispatches on extension: .json, .skb (binary) or .skeleton (NTU text).
SkeletonSequence read_sequence_file(const std::filesystem::path& path);
/// Dispatches on extension: .skb writes binary, anything else JSON.
void write_sequence_file(const std::filesystem::path& path, const SkeletonSequence& seq);

/// Loads every .json, .skb and .skeleton file in a directory, ordered by file name.
std::vector<SkeletonSequence> load_directory(const std::filesystem::path& dir);

}  // namespace skelbench::canonical

#endif  // SKELBENCH_CANONICAL_HPP
