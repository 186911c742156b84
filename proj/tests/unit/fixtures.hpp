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
// Builders shared by the unit tests.

#ifndef SKELBENCH_TESTS_FIXTURES_HPP
#define SKELBENCH_TESTS_FIXTURES_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "skelbench/rng.hpp"
#include "skelbench/sequence.hpp"

namespace fixtures {

using skelbench::FrameShape;
using skelbench::SequenceInfo;
using skelbench::SkeletonSequence;

inline SequenceInfo info(std::string id, int label = 0, std::uint32_t subject = 1, std::uint32_t setup = 1) {
    SequenceInfo i;
    i.label = label;
    i.subject_id = subject;
    i.setup_id = setup;
    i.camera_id = 1;
    i.sample_id = std::move(id);
    return i;
}

/// Joint j channel c moves as base + slope * t, slopes and bases varying by
/// coordinate, so every coordinate is an exact linear function of time.
inline SkeletonSequence linear_motion(std::size_t frames, std::size_t joints = 3, std::string id = "lin",
                                      double scale = 1.0) {
    const FrameShape shape{1, joints, 3};
    std::vector<double> coords(frames * shape.width());
    for (std::size_t t = 0; t < frames; ++t)
        for (std::size_t k = 0; k < shape.width(); ++k)
            coords[t * shape.width() + k] =
                scale * (0.1 * static_cast<double>(k) - 0.37 + (0.013 * static_cast<double>(k % 7) - 0.04) *
                                                                 static_cast<double>(t));
    return SkeletonSequence(std::move(coords), shape, 30.0, info(std::move(id)));
}

/// Random coordinates in [-1, 1].
inline SkeletonSequence random_sequence(std::size_t frames, std::size_t joints, std::uint64_t seed,
                                        std::string id = "rnd") {
    skelbench::CounterRng rng(seed);
    const FrameShape shape{1, joints, 3};
    std::vector<double> coords(frames * shape.width());
    for (auto& v : coords) v = rng.uniform(-1.0, 1.0);
    return SkeletonSequence(std::move(coords), shape, 30.0, info(std::move(id)));
}

/// Smooth sequence: sums of low-frequency sinusoids.
inline SkeletonSequence smooth_sequence(std::size_t frames, std::size_t joints, std::uint64_t seed,
                                        std::string id = "smooth") {
    skelbench::CounterRng rng(seed);
    const FrameShape shape{1, joints, 3};
    std::vector<double> amp(shape.width()), freq(shape.width()), phase(shape.width());
    for (std::size_t k = 0; k < shape.width(); ++k) {
        amp[k] = rng.uniform(0.2, 1.0);
        freq[k] = rng.uniform(0.5, 2.0);
        phase[k] = rng.uniform(0.0, 6.28);
    }
    std::vector<double> coords(frames * shape.width());
    for (std::size_t t = 0; t < frames; ++t) {
        const double s = static_cast<double>(t) / static_cast<double>(frames - 1);
        for (std::size_t k = 0; k < shape.width(); ++k)
            coords[t * shape.width() + k] = amp[k] * std::sin(2 * 3.141592653589793 * freq[k] * s + phase[k]);
    }
    return SkeletonSequence(std::move(coords), shape, 30.0, info(std::move(id)));
}

/// NTU .skeleton text: `bodies[t]` bodies in frame t, `joints` joints per body.
/// Joint (t, b, j) sits at (t + 0.01 j, b + 0.5, -j * 0.1).
inline std::string ntu_payload(const std::vector<std::size_t>& bodies, std::size_t joints = 25) {
    std::string s = std::to_string(bodies.size()) + "\n";
    char buf[256];
    for (std::size_t t = 0; t < bodies.size(); ++t) {
        s += std::to_string(bodies[t]) + "\n";
        for (std::size_t b = 0; b < bodies[t]; ++b) {
            s += "72057594037931101 0 1 1 1 1 0 -0.2 0.05 2\n";
            s += std::to_string(joints) + "\n";
            for (std::size_t j = 0; j < joints; ++j) {
                std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f 250.1 180.2 960.3 540.4 0.1 0.2 0.3 0.9 2\n",
                              static_cast<double>(t) + 0.01 * static_cast<double>(j), static_cast<double>(b) + 0.5,
                              -0.1 * static_cast<double>(j));
                s += buf;
            }
        }
    }
    return s;
}

}  // namespace fixtures

#endif  // SKELBENCH_TESTS_FIXTURES_HPP
