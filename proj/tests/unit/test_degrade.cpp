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
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "skelbench/degrade.hpp"
#include "skelbench/error.hpp"

using namespace skelbench;

namespace {

using Indices = std::vector<std::size_t>;

Indices range(std::size_t first, std::size_t last, std::size_t step = 1) {
    Indices v;
    for (std::size_t i = first; i <= last; i += step) v.push_back(i);
    return v;
}

// Independent replay of the documented generator: SplitMix64 in counter mode,
// FNV-1a sample keys, rejection sampling for bounded draws.
namespace replay {

std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

struct Stream {
    std::uint64_t key;
    std::uint64_t i = 0;
    std::uint64_t next() { return mix(key + ++i * 0x9E3779B97F4A7C15ULL); }
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            const std::uint64_t x = next();
            if (x < limit) return x % bound;
        }
    }
};

Stream stream(std::uint64_t master, const std::string& id, std::uint64_t tag) {
    const std::uint64_t key = mix(master ^ fnv(id));
    return Stream{mix(key ^ mix(tag + 0x9E3779B97F4A7C15ULL))};
}

std::size_t block_start(std::uint64_t master, const std::string& id, std::size_t T, std::size_t L) {
    auto s = stream(master, id, 0x424C4F43);  // "BLOC"
    return 1 + static_cast<std::size_t>(s.below(T - 1 - L));
}

Indices random_mask(std::uint64_t master, const std::string& id, std::size_t T, std::size_t k) {
    Indices order(T - 2);
    std::iota(order.begin(), order.end(), std::size_t{1});
    auto s = stream(master, id, 0x52414E44);  // "RAND"
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        std::swap(order[i], order[i + static_cast<std::size_t>(s.below(order.size() - i))]);
    std::set<std::size_t> dropped(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    Indices keep;
    for (std::size_t i = 0; i < T; ++i)
        if (!dropped.count(i)) keep.push_back(i);
    return keep;
}

}  // namespace replay

std::size_t gaps(const RetentionMask& m) {
    std::size_t g = 0;
    for (std::size_t i = 1; i < m.retained().size(); ++i) g += m.retained()[i] - m.retained()[i - 1] > 1;
    return g;
}

}  // namespace

TEST_SUITE("rates") {
    TEST_CASE("rational arithmetic") {
        CHECK(Rational(6, 4) == Rational(3, 2));
        CHECK(Rational(0, 7) == Rational(0, 1));
        CHECK(Rational(5, 6).str() == "5/6");
        CHECK_THROWS_AS(Rational(1, 0), ParameterError);
    }

    TEST_CASE("stride arithmetic") {
        CHECK(effective_dropout_rate(1) == Rational(0));
        CHECK(effective_dropout_rate(2) == Rational(1, 2));
        CHECK(fps_equivalent(2) == Rational(15));
        CHECK(effective_dropout_rate(3) == Rational(2, 3));
        CHECK(fps_equivalent(3) == Rational(10));
        CHECK(effective_dropout_rate(6) == Rational(5, 6));
        CHECK(fps_equivalent(6) == Rational(5));
        CHECK(effective_dropout_rate(6).value() == doctest::Approx(0.833).epsilon(1e-3));
        CHECK(effective_dropout_rate(10) == Rational(9, 10));
        CHECK(fps_equivalent(10) == Rational(3));
        CHECK(fps_equivalent(4, Rational(25)) == Rational(25, 4));
        CHECK_THROWS_AS(effective_dropout_rate(0), ParameterError);
        CHECK_THROWS_AS(fps_equivalent(-1), ParameterError);
    }

    TEST_CASE("mask rate") {
        CHECK(effective_dropout_rate(RetentionMask(10, {0, 9})) == Rational(4, 5));
        CHECK(RetentionMask(10, {0, 9}).realized_rate().value() == doctest::Approx(0.8));
    }

    TEST_CASE("drop count rounds half away from zero and caps") {
        CHECK(drop_count(0.25, 10) == 3);  // 2.5 -> 3
        CHECK(drop_count(0.15, 10) == 2);  // 1.5 -> 2
        CHECK(drop_count(0.9, 10) == 8);
        CHECK(drop_count(0.0, 10) == 0);
        CHECK(drop_count(0.5, 2) == 0);
    }
}

TEST_SUITE("masks") {
    TEST_CASE("mask invariants are enforced") {
        CHECK_THROWS_AS(RetentionMask(10, {1, 9}), DataError);
        CHECK_THROWS_AS(RetentionMask(10, {0, 8}), DataError);
        CHECK_THROWS_AS(RetentionMask(10, {0, 4, 4, 9}), DataError);
        CHECK_THROWS_AS(RetentionMask(10, {0, 5, 3, 9}), DataError);
        CHECK_THROWS_AS(RetentionMask(1, {0}), DataError);
        CHECK(RetentionMask::identity(4).retained() == Indices{0, 1, 2, 3});
    }

    TEST_CASE("uniform stride examples") {
        const auto seq = fixtures::linear_motion(10);
        CHECK(uniform_subsample(seq, 1).mask().is_identity());
        CHECK(uniform_subsample(seq, 2).mask().retained() == Indices{0, 2, 4, 6, 8, 9});
        CHECK(uniform_subsample(seq, 3).mask().retained() == Indices{0, 3, 6, 9});
        CHECK(uniform_subsample(seq, 20).mask().retained() == Indices{0, 9});
        CHECK_THROWS_AS(uniform_subsample(seq, 0), ParameterError);

        const auto d = apply_degradation(fixtures::linear_motion(30), DegradationSpec::uniform(3));
        Indices expected = range(0, 27, 3);
        expected.push_back(29);
        CHECK(d.mask().retained() == expected);
        CHECK(d.mask().retained_count() == 11);
    }

    TEST_CASE("random examples") {
        const auto seq = fixtures::linear_motion(10);
        CHECK(random_subsample(seq, 0.0, 5).mask().is_identity());
        CHECK(random_subsample(seq, 0.9, 5).mask().retained() == Indices{0, 9});
        CHECK(random_subsample(seq, 0.4, 5).mask() == random_subsample(seq, 0.4, 5).mask());
        CHECK_THROWS_AS(random_subsample(seq, 1.0, 5), ParameterError);
        CHECK_THROWS_AS(random_subsample(seq, -0.1, 5), ParameterError);
        CHECK_THROWS_AS(random_subsample(seq, 0.96, 5), ParameterError);
    }

    TEST_CASE("random mask matches the replayed generator") {
        for (std::uint64_t seed : {0ULL, 1ULL, 7ULL, 0xFFFFFFFFFFFFFFFFULL}) {
            for (std::size_t T : {3u, 10u, 47u, 120u}) {
                for (double r : {0.1, 0.5, 0.9}) {
                    const auto m = degradation_mask(T, "S001C001P001R001A001", DegradationSpec::random(r, seed));
                    const std::size_t k = std::min<std::size_t>(
                        static_cast<std::size_t>(std::floor(r * static_cast<double>(T) + 0.5)), T - 2);
                    CHECK(m.retained() == replay::random_mask(seed, "S001C001P001R001A001", T, k));
                }
            }
        }
        // Frozen from the replay above so that a change to either side is caught.
        CHECK(degradation_mask(12, "frozen", DegradationSpec::random(0.5, 42)).retained() ==
              replay::random_mask(42, "frozen", 12, 6));
    }

    TEST_CASE("block examples") {
        const auto seq = fixtures::linear_motion(10, 3, "blk");
        CHECK(block_dropout(seq, 0.0, 1).mask().is_identity());

        // Find a master seed whose replayed start is 3 for T=10, L=5.
        std::uint64_t seed = 0;
        while (replay::block_start(seed, "blk", 10, 5) != 3) ++seed;
        CHECK(block_dropout(seq, 0.5, seed).mask().retained() == Indices{0, 1, 2, 8, 9});

        std::set<std::size_t> starts;
        for (std::uint64_t s = 0; s < 400; ++s) {
            const auto m = block_dropout(seq, 0.5, s).mask();
            REQUIRE(m.retained_count() == 5);
            REQUIRE(gaps(m) == 1);
            const auto& kept = m.retained();
            const auto before_gap = std::adjacent_find(kept.begin(), kept.end(), [](auto a, auto b) { return b - a > 1; });
            const std::size_t start = *before_gap + 1;
            REQUIRE(start == replay::block_start(s, "blk", 10, 5));
            starts.insert(start);
        }
        CHECK(starts == std::set<std::size_t>{1, 2, 3, 4});
    }

    TEST_CASE("sample id changes the draw") {
        const auto spec = DegradationSpec::random(0.5, 9);
        std::set<Indices> distinct;
        for (int i = 0; i < 20; ++i) distinct.insert(degradation_mask(40, "id" + std::to_string(i), spec).retained());
        CHECK(distinct.size() == 20);
    }
}

TEST_SUITE("mask properties") {
    // 1000 randomized cases per operator.
    struct Case {
        std::size_t T;
        DegradationSpec spec;
        std::string id;
    };

    Case draw_case(CounterRng& rng, DegradationKind kind) {
        Case c;
        c.T = static_cast<std::size_t>(rng.between(2, 400));
        c.id = "case" + std::to_string(rng.next_u64() % 100000);
        const std::uint64_t seed = rng.next_u64();
        const double r = 0.95 * rng.uniform();
        switch (kind) {
            case DegradationKind::uniform: c.spec = DegradationSpec::uniform(rng.between(1, 40)); break;
            case DegradationKind::random: c.spec = DegradationSpec::random(r, seed); break;
            case DegradationKind::block: c.spec = DegradationSpec::block(r, seed); break;
        }
        return c;
    }

    TEST_CASE("anchors, determinism, structure and rate") {
        CounterRng rng(20260101);
        for (auto kind : {DegradationKind::uniform, DegradationKind::random, DegradationKind::block}) {
            for (int i = 0; i < 1000; ++i) {
                const Case c = draw_case(rng, kind);
                const auto m = degradation_mask(c.T, c.id, c.spec);
                const auto again = degradation_mask(c.T, c.id, c.spec);
                REQUIRE(m == again);
                REQUIRE(m.retained().front() == 0);
                REQUIRE(m.retained().back() == c.T - 1);
                REQUIRE(std::is_sorted(m.retained().begin(), m.retained().end()));
                REQUIRE(std::adjacent_find(m.retained().begin(), m.retained().end()) == m.retained().end());
                REQUIRE(m.gap_count() == gaps(m));
                const double realized = m.realized_rate().value();
                const double T = static_cast<double>(c.T);
                if (kind == DegradationKind::uniform) {
                    const auto n = static_cast<std::size_t>(c.spec.stride);
                    // Gaps of n-1 except the last one.
                    for (std::size_t j = 1; j + 1 < m.retained().size(); ++j)
                        REQUIRE(m.retained()[j] - m.retained()[j - 1] == n);
                    // The kept anchor can add one frame beyond the strided set.
                    REQUIRE(std::abs(realized - c.spec.nominal_rate()) < 2.0 / T);
                } else {
                    const std::size_t k = drop_count(c.spec.rate, c.T);
                    REQUIRE(m.dropped_count() == k);
                    if (k < c.T - 2) REQUIRE(std::abs(realized - c.spec.rate) <= 0.5 / T + 1e-12);
                    if (kind == DegradationKind::block) REQUIRE(gaps(m) == (k > 0 ? 1u : 0u));
                }
            }
        }
    }

    TEST_CASE("monotone severity and nesting") {
        CounterRng rng(77);
        for (int i = 0; i < 200; ++i) {
            const auto T = static_cast<std::size_t>(rng.between(2, 200));
            const std::uint64_t seed = rng.next_u64();
            std::size_t previous = T + 1;
            Indices previous_kept = range(0, T - 1);
            for (int step = 0; step <= 19; ++step) {
                const double r = step / 20.0;
                const auto m = degradation_mask(T, "mono", DegradationSpec::random(r, seed));
                REQUIRE(m.retained_count() <= previous);
                REQUIRE(std::includes(previous_kept.begin(), previous_kept.end(), m.retained().begin(),
                                      m.retained().end()));
                previous = m.retained_count();
                previous_kept = m.retained();
                const auto b = degradation_mask(T, "mono", DegradationSpec::block(r, seed));
                REQUIRE(b.dropped_count() == drop_count(r, T));
            }
            previous = T + 1;
            for (std::int64_t n = 1; n <= 30; ++n) {
                const auto m = degradation_mask(T, "mono", DegradationSpec::uniform(n));
                REQUIRE(m.retained_count() <= previous);
                previous = m.retained_count();
            }
        }
    }
}

TEST_SUITE("mitigation") {
    TEST_CASE("midpoint") {
        SkeletonSequence seq({0, 0, 0, 7, 7, 7, 2, 2, 2}, FrameShape{1, 1, 3}, 30.0, fixtures::info("m"));
        const DegradedSequence deg(seq, RetentionMask(3, {0, 2}));
        CHECK(deg.frames().num_frames() == 2);
        const auto out = interpolate_missing(deg);
        CHECK(out.num_frames() == 3);
        for (std::size_t c = 0; c < 3; ++c) CHECK(out.frame(1)[c] == 1.0);
        CHECK(out.fps() == seq.fps());
        CHECK(out.info() == seq.info());
    }

    TEST_CASE("identity mask returns the source exactly") {
        for (std::uint64_t s = 1; s <= 10; ++s) {
            const auto seq = fixtures::random_sequence(5 + s, 4, s);
            CHECK(interpolate_missing(apply_degradation(seq, DegradationSpec::uniform(1))) == seq);
            CHECK(interpolate_missing(apply_degradation(seq, DegradationSpec::random(0.0, s))) == seq);
        }
    }

    TEST_CASE("degraded frames are the source frames at retained indices") {
        const auto seq = fixtures::random_sequence(40, 3, 11);
        const auto deg = apply_degradation(seq, DegradationSpec::random(0.6, 3));
        for (std::size_t i = 0; i < deg.mask().retained_count(); ++i) {
            const auto a = deg.frames().frame(i);
            const auto b = seq.frame(deg.mask().retained()[i]);
            CHECK(std::equal(a.begin(), a.end(), b.begin()));
        }
    }

    TEST_CASE("linear motion is reconstructed exactly under any degradation") {
        CounterRng rng(5);
        for (int i = 0; i < 300; ++i) {
            const auto T = static_cast<std::size_t>(rng.between(2, 150));
            const auto seq = fixtures::linear_motion(T, 4, "lin" + std::to_string(i), rng.uniform(0.1, 10.0));
            DegradationSpec spec;
            switch (i % 3) {
                case 0: spec = DegradationSpec::uniform(rng.between(1, 12)); break;
                case 1: spec = DegradationSpec::random(0.95 * rng.uniform(), rng.next_u64()); break;
                default: spec = DegradationSpec::block(0.95 * rng.uniform(), rng.next_u64()); break;
            }
            const auto out = interpolate_missing(apply_degradation(seq, spec));
            REQUIRE(out.num_frames() == T);
            for (std::size_t k = 0; k < seq.coords().size(); ++k)
                REQUIRE(std::abs(out.coords()[k] - seq.coords()[k]) <= 1e-12 * std::max(1.0, std::abs(seq.coords()[k])));
        }
    }

    TEST_CASE("piecewise linear between retained frames is exact") {
        // Arbitrary values at retained frames, linear fill by the oracle.
        const auto mask = RetentionMask(9, {0, 3, 4, 8});
        const double knots[] = {1.0, -2.0, 5.0, 0.5};
        std::vector<double> truth(9);
        for (std::size_t seg = 0; seg + 1 < 4; ++seg) {
            const std::size_t a = mask.retained()[seg], b = mask.retained()[seg + 1];
            for (std::size_t j = a; j <= b; ++j)
                truth[j] = knots[seg] + (knots[seg + 1] - knots[seg]) * static_cast<double>(j - a) / static_cast<double>(b - a);
        }
        SkeletonSequence seq(truth, FrameShape{1, 1, 1}, 30.0, fixtures::info("pw"));
        const auto out = interpolate_missing(DegradedSequence(seq, mask));
        for (std::size_t j = 0; j < 9; ++j) CHECK(out.coords()[j] == doctest::Approx(truth[j]).epsilon(1e-14));
    }

    TEST_CASE("from_compacted reproduces the degraded view") {
        const auto seq = fixtures::random_sequence(25, 2, 4);
        const auto deg = apply_degradation(seq, DegradationSpec::block(0.4, 8));
        const auto rebuilt = from_compacted(deg.frames(), deg.mask());
        CHECK(rebuilt.frames() == deg.frames());
        CHECK(rebuilt.mask() == deg.mask());
        CHECK(interpolate_missing(rebuilt) == interpolate_missing(deg));
        CHECK_THROWS_AS(from_compacted(deg.frames(), RetentionMask::identity(25)), DataError);
    }
}

TEST_SUITE("sidecar") {
    TEST_CASE("round trip") {
        const auto spec = DegradationSpec::random(0.3, 123456789012345ULL);
        const auto mask = degradation_mask(31, "S001C001P001R001A001", spec);
        const auto back = read_mask_sidecar(write_mask_sidecar("S001C001P001R001A001", mask, spec));
        CHECK(back.sample_id == "S001C001P001R001A001");
        CHECK(back.mask == mask);
        CHECK(back.spec.kind == spec.kind);
        CHECK(back.spec.rate == spec.rate);
        CHECK(back.spec.master_seed == spec.master_seed);

        const auto u = DegradationSpec::uniform(6);
        const auto ub = read_mask_sidecar(write_mask_sidecar("x", degradation_mask(20, "x", u), u));
        CHECK(ub.spec.stride == 6);
        CHECK(ub.mask.retained() == Indices{0, 6, 12, 18, 19});
    }

    TEST_CASE("malformed sidecars") {
        CHECK_THROWS_AS(read_mask_sidecar("{"), ParseError);
        CHECK_THROWS_AS(read_mask_sidecar(R"({"sample_id":"a","original_length":5})"), SchemaError);
        CHECK_THROWS_AS(
            read_mask_sidecar(R"({"sample_id":"a","original_length":5,"retained_indices":[0,2],"spec":{"kind":"uniform","n":2}})"),
            DataError);
    }
}

TEST_SUITE("spec") {
    TEST_CASE("labels and parsing") {
        CHECK(DegradationSpec::uniform(3).label() == "uniform(n=3)");
        CHECK(DegradationSpec::random(0.5, 0).label() == "random(r=0.5000)");
        CHECK(parse_degradation_kind("block") == DegradationKind::block);
        CHECK_THROWS_AS(parse_degradation_kind("burst"), ParameterError);
        CHECK(DegradationSpec::uniform(3).nominal_rate() == doctest::Approx(2.0 / 3.0));
        CHECK(DegradationSpec::uniform(1).is_identity());
        CHECK(DegradationSpec::block(0.0, 3).is_identity());
        CHECK_FALSE(DegradationSpec::block(0.1, 3).is_identity());
    }
}
