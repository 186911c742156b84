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

#include "skelbench/degrade.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json_util.hpp"
#include "skelbench/error.hpp"
#include "skelbench/rng.hpp"

namespace skelbench {
namespace {

enum StreamTag : std::uint64_t { kRandomOrder = 0x52414E44, kBlockStart = 0x424C4F43 };

constexpr double kMaxRate = 0.95;

std::vector<double> gather(const SkeletonSequence& seq, const std::vector<std::size_t>& indices) {
    const std::size_t w = seq.width();
    std::vector<double> out;
    out.reserve(indices.size() * w);
    for (auto i : indices) {
        const FrameView f = seq.frame(i);
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

// Expands retained frames (compacted, in mask order) to the mask's original
// length, linearly interpolating every missing index from its neighbours.
SkeletonSequence fill_gaps(const SkeletonSequence& kept, const RetentionMask& mask) {
    if (kept.num_frames() != mask.retained_count())
        throw DataError("compacted sequence has " + std::to_string(kept.num_frames()) + " frames, mask retains " +
                        std::to_string(mask.retained_count()));
    const std::size_t w = kept.width();
    const auto& idx = mask.retained();
    std::vector<double> out(mask.original_length() * w);
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const FrameView fa = kept.frame(r);
        std::copy(fa.begin(), fa.end(), out.begin() + static_cast<std::ptrdiff_t>(idx[r] * w));
        if (r + 1 == idx.size()) break;
        const std::size_t a = idx[r];
        const std::size_t b = idx[r + 1];
        const FrameView fb = kept.frame(r + 1);
        const double span = static_cast<double>(b - a);
        for (std::size_t j = a + 1; j < b; ++j) {
            const double alpha = static_cast<double>(j - a) / span;
            double* dst = out.data() + j * w;
            for (std::size_t c = 0; c < w; ++c) dst[c] = fa[c] + alpha * (fb[c] - fa[c]);
        }
    }
    return kept.with_coords(std::move(out));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0) throw ParameterError("rational denominator must be positive");
    const std::int64_t g = std::gcd(n, d);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

std::string to_string(DegradationKind kind) {
    switch (kind) {
        case DegradationKind::uniform: return "uniform";
        case DegradationKind::random: return "random";
        case DegradationKind::block: return "block";
    }
    return "?";
}

DegradationKind parse_degradation_kind(std::string_view text) {
    if (text == "uniform") return DegradationKind::uniform;
    if (text == "random") return DegradationKind::random;
    if (text == "block") return DegradationKind::block;
    throw ParameterError("unknown degradation kind '" + std::string(text) + "'");
}

void DegradationSpec::validate() const {
    if (kind == DegradationKind::uniform) {
        if (stride < 1) throw ParameterError("uniform stride n must be >= 1, got " + std::to_string(stride));
        return;
    }
    if (!(rate >= 0.0 && rate <= kMaxRate))
        throw ParameterError(to_string(kind) + " rate must be in [0, 0.95], got " + std::to_string(rate));
}

double DegradationSpec::nominal_rate() const {
    return kind == DegradationKind::uniform ? effective_dropout_rate(stride).value() : rate;
}

bool DegradationSpec::is_identity() const {
    return kind == DegradationKind::uniform ? stride == 1 : rate == 0.0;
}

std::string DegradationSpec::label() const {
    char buf[64];
    if (kind == DegradationKind::uniform)
        std::snprintf(buf, sizeof buf, "uniform(n=%lld)", static_cast<long long>(stride));
    else
        std::snprintf(buf, sizeof buf, "%s(r=%.4f)", to_string(kind).c_str(), rate);
    return buf;
}

RetentionMask::RetentionMask(std::size_t original_length, std::vector<std::size_t> retained)
    : original_length_(original_length), retained_(std::move(retained)) {
    if (original_length_ < 2) throw DataError("mask original_length must be >= 2");
    if (retained_.size() < 2) throw DataError("mask must retain at least 2 frames");
    if (retained_.front() != 0 || retained_.back() != original_length_ - 1)
        throw DataError("mask must retain anchor frames 0 and " + std::to_string(original_length_ - 1));
    for (std::size_t i = 1; i < retained_.size(); ++i)
        if (retained_[i] <= retained_[i - 1]) throw DataError("mask indices must be strictly increasing");
}

RetentionMask RetentionMask::identity(std::size_t original_length) {
    std::vector<std::size_t> all(original_length);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return RetentionMask(original_length, std::move(all));
}

std::size_t RetentionMask::gap_count() const noexcept {
    std::size_t gaps = 0;
    for (std::size_t i = 1; i < retained_.size(); ++i)
        if (retained_[i] != retained_[i - 1] + 1) ++gaps;
    return gaps;
}

Rational RetentionMask::realized_rate() const {
    return Rational(static_cast<std::int64_t>(dropped_count()), static_cast<std::int64_t>(original_length_));
}

DegradedSequence::DegradedSequence(SkeletonSequence source, RetentionMask mask)
    : source_(std::move(source)),
      mask_(std::move(mask)),
      frames_(source_.with_coords(gather(source_, mask_.retained()))) {
    if (mask_.original_length() != source_.num_frames())
        throw DataError("mask length " + std::to_string(mask_.original_length()) +
                        " does not match sequence length " + std::to_string(source_.num_frames()));
}

std::size_t drop_count(double r, std::size_t length) {
    const auto k = static_cast<std::size_t>(std::llround(r * static_cast<double>(length)));
    return std::min(k, length - 2);
}

RetentionMask degradation_mask(std::size_t length, std::string_view sample_id, const DegradationSpec& spec) {
    spec.validate();
    if (length < 2) throw DataError("sequence must have at least 2 frames");
    std::vector<std::size_t> keep;

    switch (spec.kind) {
        case DegradationKind::uniform: {
            const auto n = static_cast<std::size_t>(spec.stride);
            for (std::size_t i = 0; i < length; i += n) keep.push_back(i);
            if (keep.back() != length - 1) keep.push_back(length - 1);
            break;
        }
        case DegradationKind::random: {
            const std::size_t k = drop_count(spec.rate, length);
            std::vector<std::size_t> interior(length - 2);
            std::iota(interior.begin(), interior.end(), std::size_t{1});
            CounterRng rng(substream(sample_seed(spec.master_seed, sample_id), kRandomOrder));
            // Fisher-Yates from the front; the first k positions are the dropped set.
            for (std::size_t i = 0; i + 1 < interior.size(); ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng.below(interior.size() - i));
                std::swap(interior[i], interior[j]);
            }
            std::vector<bool> dropped(length, false);
            for (std::size_t i = 0; i < k; ++i) dropped[interior[i]] = true;
            for (std::size_t i = 0; i < length; ++i)
                if (!dropped[i]) keep.push_back(i);
            break;
        }
        case DegradationKind::block: {
            const std::size_t len = drop_count(spec.rate, length);
            CounterRng rng(substream(sample_seed(spec.master_seed, sample_id), kBlockStart));
            const auto start = static_cast<std::size_t>(
                rng.between(1, static_cast<std::int64_t>(length) - 1 - static_cast<std::int64_t>(len)));
            for (std::size_t i = 0; i < length; ++i)
                if (i < start || i >= start + len) keep.push_back(i);
            break;
        }
    }
    return RetentionMask(length, std::move(keep));
}

DegradedSequence apply_degradation(const SkeletonSequence& seq, const DegradationSpec& spec) {
    return DegradedSequence(seq, degradation_mask(seq.num_frames(), seq.sample_id(), spec));
}

DegradedSequence uniform_subsample(const SkeletonSequence& seq, std::int64_t n) {
    return apply_degradation(seq, DegradationSpec::uniform(n));
}

DegradedSequence random_subsample(const SkeletonSequence& seq, double r, std::uint64_t seed) {
    return apply_degradation(seq, DegradationSpec::random(r, seed));
}

DegradedSequence block_dropout(const SkeletonSequence& seq, double r, std::uint64_t seed) {
    return apply_degradation(seq, DegradationSpec::block(r, seed));
}

SkeletonSequence interpolate_missing(const DegradedSequence& deg) { return fill_gaps(deg.frames(), deg.mask()); }

Rational effective_dropout_rate(std::int64_t n) {
    if (n < 1) throw ParameterError("uniform stride n must be >= 1, got " + std::to_string(n));
    return Rational(n - 1, n);
}

Rational effective_dropout_rate(const RetentionMask& mask) { return mask.realized_rate(); }

Rational fps_equivalent(std::int64_t n, Rational base_fps) {
    if (n < 1) throw ParameterError("uniform stride n must be >= 1, got " + std::to_string(n));
    if (base_fps.num <= 0) throw ParameterError("base fps must be positive");
    return Rational(base_fps.num, base_fps.den * n);
}

nlohmann::ordered_json degradation_spec_to_json(const DegradationSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(spec.kind);
    if (spec.kind == DegradationKind::uniform)
        j["n"] = spec.stride;
    else
        j["r"] = spec.rate;
    j["master_seed"] = spec.master_seed;
    return j;
}

std::string write_mask_sidecar(std::string_view sample_id, const RetentionMask& mask, const DegradationSpec& spec) {
    nlohmann::ordered_json doc;
    doc["sample_id"] = sample_id;
    doc["original_length"] = mask.original_length();
    doc["retained_indices"] = mask.retained();
    doc["spec"] = degradation_spec_to_json(spec);
    return doc.dump() + "\n";
}

DegradationSpec degradation_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SchemaError("degradation spec needs a string 'kind'");
    DegradationSpec spec;
    spec.kind = parse_degradation_kind(j["kind"].get<std::string>());
    if (spec.kind == DegradationKind::uniform) {
        if (!j.contains("n") || !j["n"].is_number_integer()) throw SchemaError("uniform spec needs integer 'n'");
        spec.stride = j["n"].get<std::int64_t>();
    } else {
        if (!j.contains("r") || !j["r"].is_number()) throw SchemaError(to_string(spec.kind) + " spec needs numeric 'r'");
        spec.rate = j["r"].get<double>();
    }
    if (j.contains("master_seed")) {
        if (!j["master_seed"].is_number_unsigned() && !j["master_seed"].is_number_integer())
            throw SchemaError("'master_seed' must be an integer");
        spec.master_seed = j["master_seed"].get<std::uint64_t>();
    }
    spec.validate();
    return spec;
}

MaskSidecar read_mask_sidecar(std::string_view bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid mask JSON: ") + e.what(), 0);
    }
    for (const char* key : {"sample_id", "original_length", "retained_indices", "spec"})
        if (!doc.contains(key)) throw SchemaError(std::string("mask sidecar missing key '") + key + "'");
    if (!doc["retained_indices"].is_array()) throw SchemaError("'retained_indices' must be an array");
    std::vector<std::size_t> idx;
    for (const auto& v : doc["retained_indices"]) {
        if (!v.is_number_unsigned()) throw SchemaError("'retained_indices' must hold non-negative integers");
        idx.push_back(v.get<std::size_t>());
    }
    return MaskSidecar{doc["sample_id"].get<std::string>(),
                       RetentionMask(doc["original_length"].get<std::size_t>(), std::move(idx)),
                       degradation_spec_from_json(doc["spec"])};
}

DegradedSequence from_compacted(const SkeletonSequence& compacted, const RetentionMask& mask) {
    return DegradedSequence(fill_gaps(compacted, mask), mask);
}

}  // namespace skelbench
