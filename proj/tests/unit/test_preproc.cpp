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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "skelbench/degrade.hpp"
#include "skelbench/error.hpp"
#include "skelbench/preproc.hpp"
#include "skelbench/signature.hpp"

using namespace skelbench;

namespace {

SkeletonSequence frames_of(const std::vector<std::vector<double>>& rows) {
    std::vector<double> coords;
    for (const auto& r : rows) coords.insert(coords.end(), r.begin(), r.end());
    return SkeletonSequence(coords, FrameShape{1, 1, rows[0].size()}, 30.0, fixtures::info("rows"));
}

bool same_frame(const SkeletonSequence& a, std::size_t i, const SkeletonSequence& b, std::size_t j) {
    const auto x = a.frame(i), y = b.frame(j);
    return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

// Dense-grid oracle: value of the piecewise-linear interpolant of coordinate
// k at real time t, found by scanning segments.
double pl_value(const SkeletonSequence& s, std::size_t k, double t) {
    const std::size_t T = s.num_frames();
    for (std::size_t i = 0; i + 1 < T; ++i) {
        const double a = static_cast<double>(i), b = a + 1.0;
        if (t >= a && t <= b) {
            const double u = t - a;
            return (1.0 - u) * s.frame(i)[k] + u * s.frame(i + 1)[k];
        }
    }
    return s.frame(T - 1)[k];
}

}  // namespace

TEST_SUITE("resample_linear") {
    TEST_CASE("identity grid") {
        for (std::uint64_t s = 1; s <= 5; ++s) {
            const auto seq = fixtures::random_sequence(10 + s, 3, s);
            CHECK(resample_linear(seq, seq.num_frames()) == seq);
        }
    }

    TEST_CASE("linear ramp") {
        const auto out = resample_linear(frames_of({{0, 0, 0}, {3, 3, 3}}), 4);
        REQUIRE(out.num_frames() == 4);
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t c = 0; c < 3; ++c) CHECK(out.frame(p)[c] == static_cast<double>(p));
    }

    TEST_CASE("endpoints map exactly and metadata is kept") {
        CounterRng rng(3);
        for (int i = 0; i < 100; ++i) {
            const auto T = static_cast<std::size_t>(rng.between(2, 120));
            const auto L = static_cast<std::size_t>(rng.between(2, 120));
            const auto seq = fixtures::random_sequence(T, 2, rng.next_u64());
            const auto out = resample_linear(seq, L);
            REQUIRE(out.num_frames() == L);
            REQUIRE(same_frame(out, 0, seq, 0));
            REQUIRE(same_frame(out, L - 1, seq, T - 1));
            REQUIRE(out.info() == seq.info());
            REQUIRE(out.fps() == seq.fps());
        }
    }

    TEST_CASE("matches the dense-grid oracle at every output position") {
        CounterRng rng(8);
        for (int i = 0; i < 50; ++i) {
            const auto T = static_cast<std::size_t>(rng.between(2, 80));
            const auto L = static_cast<std::size_t>(rng.between(2, 80));
            const auto seq = fixtures::random_sequence(T, 2, rng.next_u64());
            const auto out = resample_linear(seq, L);
            for (std::size_t p = 0; p < L; ++p) {
                const double t = static_cast<double>(p) * static_cast<double>(T - 1) / static_cast<double>(L - 1);
                for (std::size_t k = 0; k < seq.width(); ++k)
                    REQUIRE(out.frame(p)[k] == doctest::Approx(pl_value(seq, k, t)).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("upsample then downsample stays within the discretization bound") {
        // Composite error at source knot j is the chord-vs-kink deviation of
        // the upsampled grid around j, at most h/4 times the slope jump where
        // h = (T-1)/(L-1) is the upsampled spacing in source units.
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const std::size_t T = 20 + seed;
            const std::size_t L = 4 * T + seed;
            const auto seq = fixtures::smooth_sequence(T, 3, seed);
            const auto back = resample_linear(resample_linear(seq, L), T);
            const double h = static_cast<double>(T - 1) / static_cast<double>(L - 1);
            for (std::size_t k = 0; k < seq.width(); ++k) {
                double bound = 0.0;
                for (std::size_t j = 1; j + 1 < T; ++j) {
                    const double jump = seq.frame(j + 1)[k] - 2.0 * seq.frame(j)[k] + seq.frame(j - 1)[k];
                    bound = std::max(bound, 0.25 * h * std::abs(jump));
                }
                // Dense-grid evaluation of the same composite.
                double worst = 0.0;
                for (std::size_t j = 0; j < T; ++j) {
                    const double pos = static_cast<double>(j) / h;  // position on the upsampled grid
                    const auto lo = static_cast<std::size_t>(std::floor(pos));
                    const std::size_t hi = std::min(lo + 1, L - 1);
                    const double u = pos - static_cast<double>(lo);
                    const double expected = (1.0 - u) * pl_value(seq, k, static_cast<double>(lo) * h) +
                                            u * pl_value(seq, k, static_cast<double>(hi) * h);
                    REQUIRE(back.frame(j)[k] == doctest::Approx(expected).epsilon(1e-10));
                    worst = std::max(worst, std::abs(back.frame(j)[k] - seq.frame(j)[k]));
                }
                REQUIRE(worst <= bound + 1e-12);
            }
        }
    }

    TEST_CASE("parameter errors") {
        const auto seq = fixtures::linear_motion(5);
        CHECK_THROWS_AS(resample_linear(seq, 1), ParameterError);
        CHECK_THROWS_AS(resample_linear(seq, 0), ParameterError);
        CHECK_THROWS_AS(apply_preproc(seq, PreprocSpec{PreprocKind::resample_linear, 1}), ParameterError);
    }
}

TEST_SUITE("padding") {
    TEST_CASE("replicate tiles the sequence") {
        const auto seq = frames_of({{1}, {2}, {3}});
        const auto out = pad_replicate(seq, 7);
        CHECK(std::vector<double>(out.coords().begin(), out.coords().end()) ==
              std::vector<double>{1, 2, 3, 1, 2, 3, 1});
        CHECK(pad_replicate(seq, 3) == seq);
        CHECK_THROWS_AS(pad_replicate(seq, 2), LengthError);

        const auto long_seq = fixtures::random_sequence(150, 2, 4);
        const auto tiled = pad_replicate(long_seq, 300);
        for (std::size_t i = 0; i < 150; ++i) REQUIRE(same_frame(tiled, 150 + i, tiled, i));
    }

    TEST_CASE("repeat last frame") {
        const auto seq = frames_of({{1, 10}, {2, 20}});
        const auto out = pad_repeat_last(seq, 5);
        CHECK(std::vector<double>(out.coords().begin(), out.coords().end()) ==
              std::vector<double>{1, 10, 2, 20, 2, 20, 2, 20, 2, 20});
        CHECK(pad_repeat_last(seq, 2) == seq);
        CHECK_THROWS_AS(pad_repeat_last(fixtures::linear_motion(6), 5), LengthError);
    }

    TEST_CASE("padded tail has zero log-signature") {
        const auto seq = fixtures::random_sequence(10, 2, 9);
        const auto padded = pad_repeat_last(seq, 40);
        // Windows of 10 segments; the last three cover only repeated frames.
        const auto fm = roughpath::windowed_log_signature(padded, 3 + 1, 3, false);
        const auto tail = roughpath::Path::from_sequence(padded).slice(10, 39);
        const auto logsig = roughpath::log_signature(roughpath::signature(tail, 3));
        for (double v : logsig.coefficients) CHECK(v == 0.0);
        for (std::size_t w = 1; w < fm.windows; ++w)
            for (double v : fm.row(w)) CHECK(v == 0.0);
    }

    TEST_CASE("shared post-conditions") {
        CounterRng rng(12);
        for (int i = 0; i < 100; ++i) {
            const auto T = static_cast<std::size_t>(rng.between(2, 60));
            const auto L = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(T), 90));
            const auto seq = fixtures::random_sequence(T, 2, rng.next_u64());
            for (auto kind : {PreprocKind::resample_linear, PreprocKind::pad_replicate, PreprocKind::pad_repeat_last}) {
                const auto out = apply_preproc(seq, PreprocSpec{kind, L});
                REQUIRE(out.num_frames() == L);
                REQUIRE(same_frame(out, 0, seq, 0));
                if (kind != PreprocKind::pad_replicate) REQUIRE(same_frame(out, L - 1, seq, T - 1));
                bool last_seen = false;
                for (std::size_t p = 0; p < L; ++p) last_seen = last_seen || same_frame(out, p, seq, T - 1);
                REQUIRE(last_seen);
            }
        }
    }

    TEST_CASE("kind names") {
        CHECK(to_string(PreprocKind::pad_repeat_last) == "pad_repeat_last");
        CHECK(parse_preproc_kind("pad_replicate") == PreprocKind::pad_replicate);
        CHECK_THROWS_AS(parse_preproc_kind("crop"), ParameterError);
    }
}

TEST_SUITE("mitigation and resampling") {
    TEST_CASE("mitigated uniform subsampling then resampling equals resampling for linear motion") {
        CounterRng rng(21);
        for (int i = 0; i < 200; ++i) {
            const auto T = static_cast<std::size_t>(rng.between(2, 200));
            const auto n = rng.between(1, 12);
            const auto L = static_cast<std::size_t>(rng.between(2, 128));
            const auto seq = fixtures::linear_motion(T, 4, "eq", rng.uniform(0.5, 5.0));
            const auto mitigated = interpolate_missing(uniform_subsample(seq, n));
            const auto a = resample_linear(mitigated, L);
            const auto b = resample_linear(seq, L);
            for (std::size_t k = 0; k < a.coords().size(); ++k)
                REQUIRE(std::abs(a.coords()[k] - b.coords()[k]) <= 1e-9);
        }
    }

    TEST_CASE("unmitigated resampling discards original timestamps") {
        // Block dropout then resampling of the compacted frames is no longer
        // a uniform time grid, so linear motion is distorted.
        const auto seq = fixtures::linear_motion(40, 2);
        const auto deg = block_dropout(seq, 0.5, 3);
        const auto raw = resample_linear(deg.frames(), 40);
        const auto fixed = resample_linear(interpolate_missing(deg), 40);
        double raw_err = 0.0, fixed_err = 0.0;
        for (std::size_t k = 0; k < seq.coords().size(); ++k) {
            raw_err = std::max(raw_err, std::abs(raw.coords()[k] - seq.coords()[k]));
            fixed_err = std::max(fixed_err, std::abs(fixed.coords()[k] - seq.coords()[k]));
        }
        CHECK(fixed_err <= 1e-12);
        CHECK(raw_err > 0.05);
    }
}
