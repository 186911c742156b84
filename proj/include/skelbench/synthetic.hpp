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
// Labelled synthetic skeleton datasets for desk-scale experiments.
//
// Each class is a parametric 3D prototype trajectory p(s), s in [0, 1].
// A sample of class k with T frames places joint j at
//
//   scale * rest_j + offset + weight_kj * amplitude * p_k(warp(t / (T - 1))) + noise
//
// where scale and amplitude depend on the subject, offset is a per-sample
// rigid translation, warp(s) = s + c * sin(pi s) / pi is a random monotone
// time-warp (|c| <= 0.9 * time_warp_strength), and noise is i.i.d.
// N(0, jitter_sigma^2) per coordinate. Classes therefore differ in the shape
// of the path rather than in its speed or duration.

#ifndef SKELBENCH_SYNTHETIC_HPP
#define SKELBENCH_SYNTHETIC_HPP

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "skelbench/sequence.hpp"

namespace skelbench {

inline constexpr std::array<std::string_view, 8> kSyntheticClassNames = {
    "circle", "figure_eight", "zigzag", "raise", "wave", "punch", "squat", "still"};

struct SyntheticSpec {
    int num_classes = 8;  // 2..8, takes the first K prototypes
    int samples_per_class = 50;
    std::size_t joints = 5;
    std::size_t min_frames = 40;
    std::size_t max_frames = 60;
    double jitter_sigma = 0.01;       // meters
    double time_warp_strength = 0.5;  // in [0, 1]
    double fps = 30.0;
    std::uint32_t num_subjects = 10;  // subject_id = i % num_subjects + 1

    /// Throws ParameterError naming the offending field.
    void validate() const;
};

/// Class-major order: all samples of class 0, then class 1, ... Sample ids
/// are "syn-c<class>-<index>" and seed every per-sample random stream.
std::vector<SkeletonSequence> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace skelbench

#endif  // SKELBENCH_SYNTHETIC_HPP
