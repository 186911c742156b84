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

#include "skelbench/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "skelbench/error.hpp"

namespace skelbench::roughpath {
namespace {

void check_same_shape(const TensorSeries& a, const TensorSeries& b, const char* op) {
    if (a.dim() != b.dim() || a.depth() != b.depth())
        throw ParameterError(std::string(op) + ": shape mismatch (d=" + std::to_string(a.dim()) + ", m=" +
                             std::to_string(a.depth()) + " vs d=" + std::to_string(b.dim()) +
                             ", m=" + std::to_string(b.depth()) + ")");
}

// out[x * |b| + y] += factor * a[x] * b[y]
void outer_accumulate(std::span<double> out, std::span<const double> a, std::span<const double> b) {
    const std::size_t nb = b.size();
    for (std::size_t x = 0; x < a.size(); ++x) {
        const double ax = a[x];
        if (ax == 0.0) continue;
        double* row = out.data() + x * nb;
        for (std::size_t y = 0; y < nb; ++y) row[y] += ax * b[y];
    }
}

}  // namespace

std::size_t checked_power(std::size_t d, std::size_t k) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (d != 0 && out > std::numeric_limits<std::size_t>::max() / d)
            throw ParameterError("tensor level d^k overflows (d=" + std::to_string(d) + ", k=" + std::to_string(k) + ")");
        out *= d;
    }
    return out;
}

TensorSeries::TensorSeries(std::size_t dim, std::size_t depth, double scalar) : dim_(dim), scalar_(scalar) {
    if (dim < 1) throw ParameterError("tensor dimension d must be >= 1");
    if (depth < 1) throw ParameterError("truncation depth m must be >= 1");
    levels_.reserve(depth);
    for (std::size_t k = 1; k <= depth; ++k) levels_.emplace_back(checked_power(dim, k), 0.0);
}

std::size_t TensorSeries::size() const noexcept {
    std::size_t n = 0;
    for (const auto& l : levels_) n += l.size();
    return n;
}

TensorSeries& TensorSeries::operator+=(const TensorSeries& other) { return axpy(1.0, other); }

TensorSeries& TensorSeries::operator*=(double factor) {
    scalar_ *= factor;
    for (auto& l : levels_)
        for (auto& v : l) v *= factor;
    return *this;
}

TensorSeries& TensorSeries::axpy(double factor, const TensorSeries& other) {
    check_same_shape(*this, other, "axpy");
    scalar_ += factor * other.scalar_;
    for (std::size_t k = 0; k < levels_.size(); ++k)
        for (std::size_t i = 0; i < levels_[k].size(); ++i) levels_[k][i] += factor * other.levels_[k][i];
    return *this;
}

bool TensorSeries::all_finite() const noexcept {
    if (!std::isfinite(scalar_)) return false;
    for (const auto& l : levels_)
        for (double v : l)
            if (!std::isfinite(v)) return false;
    return true;
}

double max_abs_diff(const TensorSeries& a, const TensorSeries& b) {
    check_same_shape(a, b, "max_abs_diff");
    double m = std::abs(a.scalar() - b.scalar());
    for (std::size_t k = 1; k <= a.depth(); ++k) {
        const auto la = a.level(k);
        const auto lb = b.level(k);
        for (std::size_t i = 0; i < la.size(); ++i) m = std::max(m, std::abs(la[i] - lb[i]));
    }
    return m;
}

TensorSeries multiply(const TensorSeries& a, const TensorSeries& b) {
    check_same_shape(a, b, "tensor product");
    const std::size_t depth = a.depth();
    TensorSeries out(a.dim(), depth, a.scalar() * b.scalar());
    for (std::size_t k = 1; k <= depth; ++k) {
        auto dst = out.level(k);
        const auto ak = a.level(k);
        const auto bk = b.level(k);
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a.scalar() * bk[i] + b.scalar() * ak[i];
        for (std::size_t i = 1; i < k; ++i) outer_accumulate(dst, a.level(i), b.level(k - i));
    }
    return out;
}

TensorSeries tensor_exp(const TensorSeries& x) {
    if (x.scalar() != 0.0) throw ParameterError("tensor_exp expects a zero scalar term");
    // Horner: 1 + x(1 + x/2(1 + x/3(...)))
    TensorSeries acc = TensorSeries::one(x.dim(), x.depth());
    for (std::size_t n = x.depth(); n >= 1; --n) {
        TensorSeries term = multiply(x, acc);
        term *= 1.0 / static_cast<double>(n);
        term.set_scalar(1.0);
        acc = std::move(term);
    }
    return acc;
}

TensorSeries tensor_log(const TensorSeries& s) {
    if (s.scalar() != 1.0) throw ParameterError("tensor_log expects a unit scalar term");
    TensorSeries x = s;
    x.set_scalar(0.0);
    // Horner with signed coefficients c_n = (-1)^(n+1) / n:
    // log = x (c_1 + x (c_2 + x (c_3 + ...)))
    const std::size_t m = s.depth();
    TensorSeries acc = TensorSeries::zero(s.dim(), m);
    acc.set_scalar((m % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(m));
    for (std::size_t n = m - 1; n >= 1; --n) {
        TensorSeries term = multiply(x, acc);
        term.set_scalar((n % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(n));
        acc = std::move(term);
    }
    return multiply(x, acc);
}

}  // namespace skelbench::roughpath
