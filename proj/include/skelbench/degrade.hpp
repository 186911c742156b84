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
// Temporal degradation operators, rate arithmetic and the linear
// interpolation mitigation.
//
// Every operator keeps frames 0 and T-1 so that interpolation always has
// anchors on both sides of a gap.
//
//   uniform(n)   keeps {i : i mod n == 0} plus T-1.
//   random(r)    drops k = min(round(r*T), T-2) interior frames chosen
//                uniformly without replacement.
//   block(r)     drops one run of L = min(round(r*T), T-2) frames starting at
//                s ~ Uniform{1, ..., T-1-L}.
//
// round() is half-away-from-zero applied to r*T evaluated in double.
// Random streams are keyed by sample_seed(master_seed, sample_id) (see
// rng.hpp), so a mask depends only on (sample_id, T, spec). The random
// operator shuffles all interior indices once per sample and drops a prefix
// of that order, so masks at a higher rate are subsets of masks at a lower
// rate for the same seed.

#ifndef SKELBENCH_DEGRADE_HPP
#define SKELBENCH_DEGRADE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "skelbench/sequence.hpp"

namespace skelbench {

/// Non-negative exact fraction kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    bool operator==(const Rational&) const = default;
};

enum class DegradationKind { uniform, random, block };

std::string to_string(DegradationKind kind);
DegradationKind parse_degradation_kind(std::string_view text);

struct DegradationSpec {
    DegradationKind kind = DegradationKind::uniform;
    std::int64_t stride = 1;  // uniform only
    double rate = 0.0;        // random / block only, in [0, 0.95]
    std::uint64_t master_seed = 0;

    static DegradationSpec uniform(std::int64_t n) { return {DegradationKind::uniform, n, 0.0, 0}; }
    static DegradationSpec random(double r, std::uint64_t seed) { return {DegradationKind::random, 1, r, seed}; }
    static DegradationSpec block(double r, std::uint64_t seed) { return {DegradationKind::block, 1, r, seed}; }

    /// Throws ParameterError for n < 1 or r outside [0, 0.95].
    void validate() const;
    /// 1 - 1/n for uniform, r otherwise.
    double nominal_rate() const;
    bool is_identity() const;
    std::string label() const;  // e.g. "uniform(n=3)", "random(r=0.5)"
};

/// Strictly increasing retained indices in [0, T-1] that include both anchors.
class RetentionMask {
public:
    /// Throws DataError when the invariants do not hold.
    RetentionMask(std::size_t original_length, std::vector<std::size_t> retained);

    static RetentionMask identity(std::size_t original_length);

    std::size_t original_length() const noexcept { return original_length_; }
    const std::vector<std::size_t>& retained() const noexcept { return retained_; }
    std::size_t retained_count() const noexcept { return retained_.size(); }
    std::size_t dropped_count() const noexcept { return original_length_ - retained_.size(); }
    bool is_identity() const noexcept { return retained_.size() == original_length_; }

    /// Number of maximal runs of missing indices.
    std::size_t gap_count() const noexcept;
    /// 1 - retained / T.
    Rational realized_rate() const;

    bool operator==(const RetentionMask&) const = default;

private:
    std::size_t original_length_;
    std::vector<std::size_t> retained_;
};

/// A source sequence, the mask applied to it and the surviving frames as a
/// compacted sequence (same metadata and fps, indexed 0..retained-1).
class DegradedSequence {
public:
    DegradedSequence(SkeletonSequence source, RetentionMask mask);

    const SkeletonSequence& source() const noexcept { return source_; }
    const RetentionMask& mask() const noexcept { return mask_; }
    const SkeletonSequence& frames() const noexcept { return frames_; }

private:
    SkeletonSequence source_;
    RetentionMask mask_;
    SkeletonSequence frames_;
};

DegradedSequence uniform_subsample(const SkeletonSequence& seq, std::int64_t n);
DegradedSequence random_subsample(const SkeletonSequence& seq, double r, std::uint64_t seed);
DegradedSequence block_dropout(const SkeletonSequence& seq, double r, std::uint64_t seed);
DegradedSequence apply_degradation(const SkeletonSequence& seq, const DegradationSpec& spec);

/// Mask computation without touching frames; what the operators above use.
RetentionMask degradation_mask(std::size_t length, std::string_view sample_id, const DegradationSpec& spec);

/// min(round(r*T), T-2).
std::size_t drop_count(double r, std::size_t length);

/// Restores the original length, filling each missing index j between
/// retained neighbours a < j < b with x(a) + (j-a)/(b-a) * (x(b) - x(a)).
SkeletonSequence interpolate_missing(const DegradedSequence& deg);

/// 1 - 1/n, exact. Throws ParameterError for n < 1.
Rational effective_dropout_rate(std::int64_t n);
Rational effective_dropout_rate(const RetentionMask& mask);
/// base_fps / n, exact.
Rational fps_equivalent(std::int64_t n, Rational base_fps = Rational(30));

/// Mask sidecar JSON: {sample_id, original_length, retained_indices, spec}.
std::string write_mask_sidecar(std::string_view sample_id, const RetentionMask& mask,
                               const DegradationSpec& spec);
struct MaskSidecar {
    std::string sample_id;
    RetentionMask mask;
    DegradationSpec spec;
};
MaskSidecar read_mask_sidecar(std::string_view bytes);

/// Rebuilds a DegradedSequence from a compacted sequence plus its mask, as
/// read back from files. Only retained frames are known, so the source is
/// reconstructed by interpolation; frames() equals `compacted`.
DegradedSequence from_compacted(const SkeletonSequence& compacted, const RetentionMask& mask);

}  // namespace skelbench

#endif  // SKELBENCH_DEGRADE_HPP
