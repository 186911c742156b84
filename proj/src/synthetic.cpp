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

#include "skelbench/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "skelbench/error.hpp"
#include "skelbench/rng.hpp"

namespace skelbench {
namespace {

using Vec3 = std::array<double, 3>;
constexpr double kPi = std::numbers::pi;

double triangle(double x) {
    const double f = x - std::floor(x);
    return f < 0.5 ? 4.0 * f - 1.0 : 3.0 - 4.0 * f;
}

// Every prototype starts at the origin.
Vec3 prototype(int label, double s) {
    switch (label) {
        case 0: return {std::cos(2 * kPi * s) - 1.0, std::sin(2 * kPi * s), 0.0};  // circle
        case 1: return {std::sin(2 * kPi * s), 0.5 * std::sin(4 * kPi * s), 0.0};   // figure eight
        case 2: return {s, 0.4 * (triangle(1.5 * s) + 1.0), 0.0};                          // zigzag
        case 3: return {0.0, std::sin(kPi * s), 0.0};                                     // raise
        case 4: return {0.4 * std::sin(4 * kPi * s), 0.6 * std::sin(kPi * s), 0.0};      // wave
        case 5: return {0.0, 0.0, std::sin(kPi * s)};                                     // punch
        case 6: return {0.0, -0.6 * std::sin(kPi * s), 0.0};                              // squat
        default: return {0.0, 0.0, 0.0};                                                  // still
    }
}

double joint_weight(int label, std::size_t j, std::size_t joints) {
    if (label == 6) return 1.0;  // squat moves the whole body
    const double frac = joints > 1 ? static_cast<double>(j) / static_cast<double>(joints - 1) : 1.0;
    return 0.3 + 0.7 * frac;
}

Vec3 rest_position(std::size_t j, std::size_t joints) {
    const double frac = joints > 1 ? static_cast<double>(j) / static_cast<double>(joints - 1) : 0.0;
    const double angle = 2 * kPi * static_cast<double>(j) / static_cast<double>(joints);
    return {0.25 * std::cos(angle), 0.8 + 0.6 * frac, 0.25 * std::sin(angle)};
}

enum StreamTag : std::uint64_t { kSubject = 1, kShape = 2, kNoise = 3 };

}  // namespace

void SyntheticSpec::validate() const {
    if (num_classes < 2 || num_classes > static_cast<int>(kSyntheticClassNames.size()))
        throw ParameterError("num_classes must be in [2, 8], got " + std::to_string(num_classes));
    if (samples_per_class < 1) throw ParameterError("samples_per_class must be positive");
    if (joints < 1) throw ParameterError("joints must be positive");
    if (min_frames < 10) throw ParameterError("min_frames must be >= 10, got " + std::to_string(min_frames));
    if (max_frames < min_frames) throw ParameterError("max_frames must be >= min_frames");
    if (!(jitter_sigma >= 0.0) || !std::isfinite(jitter_sigma))
        throw ParameterError("jitter_sigma must be >= 0");
    if (!(time_warp_strength >= 0.0 && time_warp_strength <= 1.0))
        throw ParameterError("time_warp_strength must be in [0, 1]");
    if (!(fps > 0.0) || !std::isfinite(fps)) throw ParameterError("fps must be positive");
    if (num_subjects < 1) throw ParameterError("num_subjects must be positive");
}

std::vector<SkeletonSequence> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    spec.validate();
    const FrameShape shape{1, spec.joints, 3};
    std::vector<SkeletonSequence> out;
    out.reserve(static_cast<std::size_t>(spec.num_classes * spec.samples_per_class));

    for (int label = 0; label < spec.num_classes; ++label) {
        for (int i = 0; i < spec.samples_per_class; ++i) {
            char id[48];
            std::snprintf(id, sizeof id, "syn-c%d-%04d", label, i);
            SequenceInfo info;
            info.label = label;
            info.subject_id = static_cast<std::uint32_t>(i) % spec.num_subjects + 1;
            info.setup_id = (static_cast<std::uint32_t>(i) / spec.num_subjects) % 4 + 1;
            info.camera_id = 1;
            info.sample_id = id;

            CounterRng subject_rng(substream(seed, kSubject * 1000003ULL + info.subject_id));
            const double body_scale = subject_rng.uniform(0.85, 1.15);
            const double amplitude = 0.3 * subject_rng.uniform(0.85, 1.15);

            const std::uint64_t key = sample_seed(seed, info.sample_id);
            CounterRng shape_rng(substream(key, kShape));
            const auto frames = static_cast<std::size_t>(
                shape_rng.between(static_cast<std::int64_t>(spec.min_frames),
                                  static_cast<std::int64_t>(spec.max_frames)));
            const double warp = 0.9 * spec.time_warp_strength * shape_rng.uniform(-1.0, 1.0);
            const Vec3 offset = {shape_rng.uniform(-0.1, 0.1), shape_rng.uniform(-0.1, 0.1),
                                 shape_rng.uniform(-0.1, 0.1)};

            CounterRng noise_rng(substream(key, kNoise));
            std::vector<double> coords(frames * shape.width());
            for (std::size_t t = 0; t < frames; ++t) {
                const double s = static_cast<double>(t) / static_cast<double>(frames - 1);
                const double tau = s + warp * std::sin(kPi * s) / kPi;
                const Vec3 p = prototype(label, tau);
                for (std::size_t j = 0; j < spec.joints; ++j) {
                    const Vec3 rest = rest_position(j, spec.joints);
                    const double w = joint_weight(label, j, spec.joints) * amplitude;
                    double* dst = coords.data() + t * shape.width() + j * 3;
                    for (std::size_t c = 0; c < 3; ++c) {
                        const double noise = spec.jitter_sigma > 0.0 ? spec.jitter_sigma * noise_rng.normal() : 0.0;
                        dst[c] = body_scale * rest[c] + offset[c] + w * p[c] + noise;
                    }
                }
            }
            out.emplace_back(std::move(coords), shape, spec.fps, std::move(info));
        }
    }
    return out;
}

}  // namespace skelbench
