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
// The truncated tensor algebra T^(m)(R^d): graded tensors up to depth m with
// dense levels. Level k is stored row-major as d^k values, so the multi-index
// (i_1, ..., i_k) lives at sum_j i_j d^(k-j) and index order coincides with
// lexicographic word order.

#ifndef SKELBENCH_TENSOR_ALGEBRA_HPP
#define SKELBENCH_TENSOR_ALGEBRA_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace skelbench::roughpath {

/// d^k with overflow check (throws ParameterError).
std::size_t checked_power(std::size_t d, std::size_t k);

/// scalar + sum_k levels[k-1].
class TensorSeries {
public:
    TensorSeries(std::size_t dim, std::size_t depth, double scalar = 0.0);

    static TensorSeries zero(std::size_t dim, std::size_t depth) { return TensorSeries(dim, depth, 0.0); }
    static TensorSeries one(std::size_t dim, std::size_t depth) { return TensorSeries(dim, depth, 1.0); }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t depth() const noexcept { return levels_.size(); }

    double scalar() const noexcept { return scalar_; }
    void set_scalar(double s) noexcept { scalar_ = s; }

    /// k in [1, depth].
    std::span<double> level(std::size_t k) { return levels_[k - 1]; }
    std::span<const double> level(std::size_t k) const { return levels_[k - 1]; }

    /// Total number of stored coefficients (excluding the scalar).
    std::size_t size() const noexcept;

    TensorSeries& operator+=(const TensorSeries& other);
    TensorSeries& operator*=(double factor);
    /// Adds factor * other.
    TensorSeries& axpy(double factor, const TensorSeries& other);

    bool all_finite() const noexcept;

private:
    std::size_t dim_;
    double scalar_;
    std::vector<std::vector<double>> levels_;
};

/// Max absolute coefficient difference, scalar included. Shapes must match.
double max_abs_diff(const TensorSeries& a, const TensorSeries& b);

/// Truncated tensor product. Throws ParameterError on shape mismatch.
TensorSeries multiply(const TensorSeries& a, const TensorSeries& b);

/// exp(x) for x with zero scalar term.
TensorSeries tensor_exp(const TensorSeries& x);
/// log(s) = sum_{n>=1} (-1)^(n+1) (s-1)^n / n for s with scalar term 1.
TensorSeries tensor_log(const TensorSeries& s);

/// Signatures are TensorSeries with scalar term 1.
using TruncatedSignature = TensorSeries;

}  // namespace skelbench::roughpath

#endif  // SKELBENCH_TENSOR_ALGEBRA_HPP
