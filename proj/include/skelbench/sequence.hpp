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
// The skeletal time-series data model.

#ifndef SKELBENCH_SEQUENCE_HPP
#define SKELBENCH_SEQUENCE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace skelbench {

/// Layout of one frame. Coordinates are stored body-major, then joint, then
/// channel: index = (body * num_joints + joint) * channels + channel. Absent
/// bodies are zero-filled so every frame has the same width.
struct FrameShape {
    std::size_t num_bodies = 1;  // 1 or 2
    std::size_t num_joints = 25;
    std::size_t channels = 3;

    constexpr std::size_t width() const noexcept { return num_bodies * num_joints * channels; }
    bool operator==(const FrameShape&) const = default;
};

struct SequenceInfo {
    int label = 0;  // 0-based action class
    std::uint32_t subject_id = 0;
    std::uint32_t setup_id = 0;
    std::uint32_t camera_id = 0;
    std::string sample_id;

    bool operator==(const SequenceInfo&) const = default;
};

using FrameView = std::span<const double>;

/// A labelled sequence of T >= 2 frames, each holding shape.width() finite
/// coordinates. Immutable once constructed; the constructor enforces the
/// invariants and throws DataError on violation.
class SkeletonSequence {
public:
    SkeletonSequence(std::vector<double> coords, FrameShape shape, double fps, SequenceInfo info);

    std::size_t num_frames() const noexcept { return coords_.size() / shape_.width(); }
    const FrameShape& shape() const noexcept { return shape_; }
    std::size_t width() const noexcept { return shape_.width(); }
    double fps() const noexcept { return fps_; }
    const SequenceInfo& info() const noexcept { return info_; }
    int label() const noexcept { return info_.label; }
    const std::string& sample_id() const noexcept { return info_.sample_id; }

    FrameView frame(std::size_t t) const {
        return FrameView(coords_).subspan(t * shape_.width(), shape_.width());
    }
    std::span<const double> coords() const noexcept { return coords_; }

    /// Same shape, fps and metadata, different frames.
    SkeletonSequence with_coords(std::vector<double> coords) const {
        return SkeletonSequence(std::move(coords), shape_, fps_, info_);
    }

    /// Bit-exact equality of frames and all metadata.
    bool operator==(const SkeletonSequence& other) const;

private:
    std::vector<double> coords_;
    FrameShape shape_;
    double fps_;
    SequenceInfo info_;
};

/// 64-bit FNV-1a checksum over shape, metadata and the raw coordinate bytes.
std::uint64_t checksum(const SkeletonSequence& seq);
std::uint64_t checksum(std::span<const SkeletonSequence> samples);

}  // namespace skelbench

#endif  // SKELBENCH_SEQUENCE_HPP
