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

#include "skelbench/preproc.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "skelbench/error.hpp"

namespace skelbench {

std::string to_string(PreprocKind kind) {
    switch (kind) {
        case PreprocKind::resample_linear: return "resample_linear";
        case PreprocKind::pad_replicate: return "pad_replicate";
        case PreprocKind::pad_repeat_last: return "pad_repeat_last";
    }
    return "?";
}

PreprocKind parse_preproc_kind(std::string_view text) {
    if (text == "resample_linear") return PreprocKind::resample_linear;
    if (text == "pad_replicate") return PreprocKind::pad_replicate;
    if (text == "pad_repeat_last") return PreprocKind::pad_repeat_last;
    throw ParameterError("unknown preproc kind '" + std::string(text) + "'");
}

void PreprocSpec::validate() const {
    if (target_len < 2) throw ParameterError("preproc target_len must be >= 2, got " + std::to_string(target_len));
}

SkeletonSequence resample_linear(const SkeletonSequence& seq, std::size_t target_len) {
    if (target_len < 2) throw ParameterError("resample target_len must be >= 2, got " + std::to_string(target_len));
    const std::size_t frames = seq.num_frames();
    const std::size_t w = seq.width();
    if (target_len == frames)
        return seq.with_coords(std::vector<double>(seq.coords().begin(), seq.coords().end()));

    std::vector<double> out(target_len * w);
    for (std::size_t p = 0; p < target_len; ++p) {
        double* dst = out.data() + p * w;
        if (p == target_len - 1) {
            const FrameView last = seq.frame(frames - 1);
            std::copy(last.begin(), last.end(), dst);
            continue;
        }
        // Position in source frame units, computed with a single rounding.
        const double t = static_cast<double>(p * (frames - 1)) / static_cast<double>(target_len - 1);
        const auto lo = std::min(static_cast<std::size_t>(std::floor(t)), frames - 1);
        const std::size_t hi = std::min(lo + 1, frames - 1);
        const double alpha = t - static_cast<double>(lo);
        const FrameView a = seq.frame(lo);
        const FrameView b = seq.frame(hi);
        if (alpha == 0.0) {
            std::copy(a.begin(), a.end(), dst);
        } else {
            for (std::size_t c = 0; c < w; ++c) dst[c] = a[c] + alpha * (b[c] - a[c]);
        }
    }
    return seq.with_coords(std::move(out));
}

namespace {

void check_pad(const SkeletonSequence& seq, std::size_t target_len, const char* op) {
    if (target_len < 2) throw ParameterError(std::string(op) + " target_len must be >= 2");
    if (seq.num_frames() > target_len)
        throw LengthError(std::string(op) + ": sequence '" + seq.sample_id() + "' has " +
                          std::to_string(seq.num_frames()) + " frames, longer than target " +
                          std::to_string(target_len));
}

}  // namespace

SkeletonSequence pad_replicate(const SkeletonSequence& seq, std::size_t target_len) {
    check_pad(seq, target_len, "pad_replicate");
    const std::size_t w = seq.width();
    std::vector<double> out(target_len * w);
    for (std::size_t p = 0; p < target_len; ++p) {
        const FrameView f = seq.frame(p % seq.num_frames());
        std::copy(f.begin(), f.end(), out.begin() + static_cast<std::ptrdiff_t>(p * w));
    }
    return seq.with_coords(std::move(out));
}

SkeletonSequence pad_repeat_last(const SkeletonSequence& seq, std::size_t target_len) {
    check_pad(seq, target_len, "pad_repeat_last");
    const std::size_t w = seq.width();
    std::vector<double> out(seq.coords().begin(), seq.coords().end());
    out.reserve(target_len * w);
    const FrameView last = seq.frame(seq.num_frames() - 1);
    for (std::size_t p = seq.num_frames(); p < target_len; ++p) out.insert(out.end(), last.begin(), last.end());
    return seq.with_coords(std::move(out));
}

SkeletonSequence apply_preproc(const SkeletonSequence& seq, const PreprocSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case PreprocKind::resample_linear: return resample_linear(seq, spec.target_len);
        case PreprocKind::pad_replicate: return pad_replicate(seq, spec.target_len);
        case PreprocKind::pad_repeat_last: return pad_repeat_last(seq, spec.target_len);
    }
    throw ParameterError("unknown preproc kind");
}

}  // namespace skelbench
