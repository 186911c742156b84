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
// Lyndon words and the Lyndon bracket basis of the free Lie algebra.
//
// Words are generated with Duval's algorithm and ordered by (length,
// lexicographic). Each word w of length >= 2 carries its standard
// factorization w = uv, v the longest proper Lyndon suffix, and the bracket
// polynomial P_w = [P_u, P_v] = P_u P_v - P_v P_u expanded over words of
// length |w|. P_w has coefficient 1 on w itself and every other word in its
// expansion is lexicographically larger, so projecting a Lie element onto
// the basis is a forward triangular solve.

#ifndef SKELBENCH_LYNDON_HPP
#define SKELBENCH_LYNDON_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace skelbench::roughpath {

/// Number of Lyndon words of length k over d letters:
/// (1/k) sum_{j | k} mu(j) d^(k/j).
std::uint64_t witt_number(std::uint64_t d, std::uint64_t k);
/// sum_{k=1}^{m} witt_number(d, k).
std::uint64_t logsig_dim(std::uint64_t d, std::uint64_t m);

/// All Lyndon words (0-based letters) of length <= max_len, in plain
/// lexicographic order as produced by Duval's algorithm.
std::vector<std::vector<std::size_t>> duval_lyndon_words(std::size_t d, std::size_t max_len);

bool is_lyndon(std::span<const std::size_t> word);

class LyndonBasis {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    struct Element {
        std::vector<std::size_t> letters;   // 0-based
        std::size_t tensor_index = 0;        // position of the word in its level
        std::size_t left = npos;             // basis index of u in w = uv
        std::size_t right = npos;            // basis index of v
        std::vector<std::pair<std::size_t, double>> expansion;  // P_w, sorted by tensor index
    };

    LyndonBasis(std::size_t dim, std::size_t depth);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t depth() const noexcept { return depth_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const Element& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<Element>& elements() const noexcept { return elements_; }

    /// Basis indices of the words of length k form [level_begin(k), level_begin(k+1)).
    std::size_t level_begin(std::size_t k) const { return level_offsets_[k - 1]; }

    /// 1-based letters, e.g. "112".
    std::string word_string(std::size_t i) const;
    /// Nested bracketing, e.g. "[1,[1,2]]".
    std::string bracket_string(std::size_t i) const;

private:
    std::size_t dim_;
    std::size_t depth_;
    std::vector<Element> elements_;
    std::vector<std::size_t> level_offsets_;  // depth + 1 entries
};

/// Process-wide cache keyed by (dim, depth); thread-safe.
std::shared_ptr<const LyndonBasis> shared_lyndon_basis(std::size_t dim, std::size_t depth);

}  // namespace skelbench::roughpath

#endif  // SKELBENCH_LYNDON_HPP
