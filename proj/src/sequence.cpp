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

#include "skelbench/sequence.hpp"

#include <cmath>
#include <cstring>

#include "skelbench/error.hpp"
#include "skelbench/rng.hpp"

namespace skelbench {

SkeletonSequence::SkeletonSequence(std::vector<double> coords, FrameShape shape, double fps,
                                   SequenceInfo info)
    : coords_(std::move(coords)), shape_(shape), fps_(fps), info_(std::move(info)) {
    if (shape_.num_bodies < 1 || shape_.num_bodies > 2)
        throw DataError("sequence '" + info_.sample_id + "': body slots must be 1 or 2, got " +
                        std::to_string(shape_.num_bodies));
    if (shape_.num_joints == 0 || shape_.channels == 0)
        throw DataError("sequence '" + info_.sample_id + "': empty frame shape");
    if (!(fps_ > 0.0) || !std::isfinite(fps_))
        throw DataError("sequence '" + info_.sample_id + "': fps must be positive");
    if (info_.label < 0)
        throw DataError("sequence '" + info_.sample_id + "': negative label");
    const std::size_t w = shape_.width();
    if (coords_.size() % w != 0)
        throw DataError("sequence '" + info_.sample_id + "': coordinate count " +
                        std::to_string(coords_.size()) + " is not a multiple of frame width " +
                        std::to_string(w));
    if (coords_.size() / w < 2)
        throw DataError("sequence '" + info_.sample_id + "': needs at least 2 frames, got " +
                        std::to_string(coords_.size() / w));
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i])) {
            const std::size_t t = i / w;
            const std::size_t joint = (i % w) / shape_.channels;
            throw DataError("sequence '" + info_.sample_id + "': non-finite coordinate at frame " +
                            std::to_string(t) + ", joint " + std::to_string(joint));
        }
    }
}

bool SkeletonSequence::operator==(const SkeletonSequence& other) const {
    if (shape_ != other.shape_ || info_ != other.info_ || coords_.size() != other.coords_.size())
        return false;
    if (std::memcmp(&fps_, &other.fps_, sizeof fps_) != 0) return false;
    return std::memcmp(coords_.data(), other.coords_.data(), coords_.size() * sizeof(double)) == 0;
}

namespace {

void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
}

void hash_into(std::uint64_t& h, const SkeletonSequence& seq) {
    const std::uint64_t dims[] = {seq.shape().num_bodies, seq.shape().num_joints,
                                  seq.shape().channels, seq.num_frames()};
    hash_bytes(h, dims, sizeof dims);
    const double fps = seq.fps();
    hash_bytes(h, &fps, sizeof fps);
    const std::int64_t ids[] = {seq.info().label, seq.info().subject_id, seq.info().setup_id,
                                seq.info().camera_id};
    hash_bytes(h, ids, sizeof ids);
    hash_bytes(h, seq.sample_id().data(), seq.sample_id().size());
    hash_bytes(h, seq.coords().data(), seq.coords().size_bytes());
}

}  // namespace

std::uint64_t checksum(const SkeletonSequence& seq) {
    std::uint64_t h = fnv1a64("");
    hash_into(h, seq);
    return h;
}

std::uint64_t checksum(std::span<const SkeletonSequence> samples) {
    std::uint64_t h = fnv1a64("");
    for (const auto& s : samples) hash_into(h, s);
    return h;
}

}  // namespace skelbench
