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
// Path signatures and log-signatures of piecewise-linear paths.

#ifndef SKELBENCH_SIGNATURE_HPP
#define SKELBENCH_SIGNATURE_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skelbench/lyndon.hpp"
#include "skelbench/sequence.hpp"
#include "skelbench/tensor_algebra.hpp"

namespace skelbench::roughpath {

/// Ordered points in R^d, interpreted as the piecewise-linear curve through
/// them. Requires at least 2 finite points and d >= 1 (DataError otherwise).
class Path {
public:
    Path(std::vector<double> points, std::size_t dim);

    /// One point per frame, coordinates flattened in frame order.
    static Path from_sequence(const SkeletonSequence& seq);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t num_points() const noexcept { return points_.size() / dim_; }
    std::span<const double> point(std::size_t i) const {
        return std::span<const double>(points_).subspan(i * dim_, dim_);
    }
    std::span<const double> data() const noexcept { return points_; }

    /// Points [first, last] inclusive.
    Path slice(std::size_t first, std::size_t last) const;
    Path reversed() const;
    /// Appends the normalized index t / (N - 1) as an extra coordinate.
    Path time_augmented() const;

private:
    std::vector<double> points_;
    std::size_t dim_;
};

/// exp(increment): level k equals increment^(tensor k) / k!.
TruncatedSignature segment_signature(std::span<const double> increment, std::size_t depth);

/// Chen concatenation; shapes must match.
TruncatedSignature chen_product(const TruncatedSignature& a, const TruncatedSignature& b);

/// Left-to-right Chen product of the segment signatures.
TruncatedSignature signature(const Path& path, std::size_t depth);

struct LogSignature {
    std::shared_ptr<const LyndonBasis> basis;
    std::vector<double> coefficients;  // one per basis element

    std::size_t dim() const noexcept { return basis->dim(); }
    std::size_t depth() const noexcept { return basis->depth(); }
};

/// Tensor logarithm projected onto the Lyndon bracket basis.
LogSignature log_signature(const TruncatedSignature& sig);
LogSignature log_signature(const TruncatedSignature& sig, std::shared_ptr<const LyndonBasis> basis);

/// Coefficients of a Lie element (zero scalar term) in the Lyndon basis.
std::vector<double> project_to_lyndon(const TensorSeries& lie, const LyndonBasis& basis);
/// sum_w coefficients[w] * P_w as a tensor series with zero scalar term.
TensorSeries lie_element(const LogSignature& logsig);

/// Row-major w x dim feature matrix plus the parameters that produced it.
struct FeatureMatrix {
    std::size_t windows = 0;
    std::size_t dim = 0;          // logsig_dim(path_dim, depth)
    std::size_t path_dim = 0;     // d after time augmentation
    std::size_t depth = 0;
    bool time_augment = false;
    std::vector<double> values;

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(values).subspan(i * dim, dim);
    }
};

/// Window boundaries b_0 = 0 < b_1 < ... < b_w = N - 1. Each window spans
/// [b_i, b_{i+1}]; the N - 1 segments are shared out evenly with the
/// remainder going to the leftmost windows. Throws ParameterError unless
/// N >= w + 1 and w >= 1.
std::vector<std::size_t> window_boundaries(std::size_t num_points, std::size_t windows);

FeatureMatrix windowed_log_signature(const Path& path, std::size_t windows, std::size_t depth,
                                     bool time_augment);
FeatureMatrix windowed_log_signature(const SkeletonSequence& seq, std::size_t windows, std::size_t depth,
                                     bool time_augment);

/// Test oracle: nested left-point Riemann sums of the iterated integrals on
/// a uniform grid of `steps` increments over the path's parameter range
/// [0, N-1] (segment i occupies [i, i+1]). Converges at first order.
TruncatedSignature brute_force_signature(const Path& path, std::size_t depth, std::size_t steps);

/// CSV: a "#w=..,dim=..,d=..,m=..,time_augment=.." line, then w rows.
std::string write_feature_csv(const FeatureMatrix& fm);
FeatureMatrix read_feature_csv(std::string_view text);
/// Binary: "SKBFEAT1", uint32 header length, JSON header
/// {w, dim, d, m, time_augment}, then w*dim little-endian float64 values.
std::string write_feature_binary(const FeatureMatrix& fm);
FeatureMatrix read_feature_binary(std::string_view bytes);

}  // namespace skelbench::roughpath

#endif  // SKELBENCH_SIGNATURE_HPP
