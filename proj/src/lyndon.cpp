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

#include "skelbench/lyndon.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "skelbench/error.hpp"
#include "skelbench/tensor_algebra.hpp"

namespace skelbench::roughpath {
namespace {

int mobius(std::uint64_t n) {
    int result = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
    return static_cast<std::uint64_t>(checked_power(static_cast<std::size_t>(base), static_cast<std::size_t>(exp)));
}

std::size_t word_index(std::span<const std::size_t> letters, std::size_t d) {
    std::size_t idx = 0;
    for (auto l : letters) idx = idx * d + l;
    return idx;
}

}  // namespace

std::uint64_t witt_number(std::uint64_t d, std::uint64_t k) {
    if (k == 0) return 0;
    std::int64_t sum = 0;
    for (std::uint64_t j = 1; j <= k; ++j) {
        if (k % j != 0) continue;
        const int mu = mobius(j);
        if (mu != 0) sum += mu * static_cast<std::int64_t>(checked_pow(d, k / j));
    }
    return static_cast<std::uint64_t>(sum) / k;
}

std::uint64_t logsig_dim(std::uint64_t d, std::uint64_t m) {
    std::uint64_t total = 0;
    for (std::uint64_t k = 1; k <= m; ++k) total += witt_number(d, k);
    return total;
}

std::vector<std::vector<std::size_t>> duval_lyndon_words(std::size_t d, std::size_t max_len) {
    std::vector<std::vector<std::size_t>> out;
    if (d == 0 || max_len == 0) return out;
    std::vector<std::size_t> w{0};
    while (!w.empty()) {
        out.push_back(w);
        // Repeat w to length max_len, then strip trailing maximal letters and
        // increment the last one.
        const std::size_t len = w.size();
        while (w.size() < max_len) w.push_back(w[w.size() - len]);
        while (!w.empty() && w.back() == d - 1) w.pop_back();
        if (!w.empty()) ++w.back();
    }
    return out;
}

bool is_lyndon(std::span<const std::size_t> word) {
    const std::size_t n = word.size();
    if (n == 0) return false;
    // Strictly smaller than every proper suffix.
    for (std::size_t i = 1; i < n; ++i) {
        const auto suffix = word.subspan(i);
        if (!std::lexicographical_compare(word.begin(), word.end(), suffix.begin(), suffix.end())) return false;
    }
    return true;
}

LyndonBasis::LyndonBasis(std::size_t dim, std::size_t depth) : dim_(dim), depth_(depth) {
    if (dim < 1) throw ParameterError("Lyndon basis needs d >= 1");
    if (depth < 1) throw ParameterError("Lyndon basis needs m >= 1");

    auto words = duval_lyndon_words(dim, depth);
    std::stable_sort(words.begin(), words.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });

    std::map<std::vector<std::size_t>, std::size_t> lookup;
    level_offsets_.assign(depth + 1, 0);
    elements_.reserve(words.size());
    for (auto& letters : words) {
        Element e;
        e.tensor_index = word_index(letters, dim);
        const std::size_t len = letters.size();
        if (len == 1) {
            e.expansion = {{e.tensor_index, 1.0}};
        } else {
            std::size_t split = 1;
            while (!is_lyndon(std::span<const std::size_t>(letters).subspan(split))) ++split;
            const std::vector<std::size_t> u(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(split));
            const std::vector<std::size_t> v(letters.begin() + static_cast<std::ptrdiff_t>(split), letters.end());
            e.left = lookup.at(u);
            e.right = lookup.at(v);
            const auto& pu = elements_[e.left].expansion;
            const auto& pv = elements_[e.right].expansion;
            const std::size_t shift_v = checked_power(dim, v.size());
            const std::size_t shift_u = checked_power(dim, u.size());
            std::map<std::size_t, double> acc;
            for (const auto& [x, cx] : pu)
                for (const auto& [y, cy] : pv) {
                    acc[x * shift_v + y] += cx * cy;
                    acc[y * shift_u + x] -= cx * cy;
                }
            for (const auto& [idx, c] : acc)
                if (c != 0.0) e.expansion.emplace_back(idx, c);
        }
        lookup.emplace(letters, elements_.size());
        e.letters = std::move(letters);
        elements_.push_back(std::move(e));
    }
    for (std::size_t i = 0, k = 1; k <= depth; ++k) {
        level_offsets_[k - 1] = i;
        while (i < elements_.size() && elements_[i].letters.size() == k) ++i;
        level_offsets_[k] = i;
    }
}

std::string LyndonBasis::word_string(std::size_t i) const {
    std::string s;
    for (auto l : elements_.at(i).letters) {
        if (!s.empty() && dim_ > 9) s += ',';
        s += std::to_string(l + 1);
    }
    return s;
}

std::string LyndonBasis::bracket_string(std::size_t i) const {
    const Element& e = elements_.at(i);
    if (e.left == npos) return std::to_string(e.letters[0] + 1);
    return "[" + bracket_string(e.left) + "," + bracket_string(e.right) + "]";
}

std::shared_ptr<const LyndonBasis> shared_lyndon_basis(std::size_t dim, std::size_t depth) {
    static std::mutex mutex;
    static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const LyndonBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{dim, depth}];
    if (!slot) slot = std::make_shared<const LyndonBasis>(dim, depth);
    return slot;
}

}  // namespace skelbench::roughpath
