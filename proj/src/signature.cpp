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

#include "skelbench/signature.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include <json.hpp>

#include "skelbench/error.hpp"

namespace skelbench::roughpath {

Path::Path(std::vector<double> points, std::size_t dim) : points_(std::move(points)), dim_(dim) {
    if (dim_ < 1) throw DataError("path dimension must be >= 1");
    if (points_.size() % dim_ != 0) throw DataError("path coordinate count is not a multiple of its dimension");
    if (points_.size() / dim_ < 2)
        throw DataError("path needs at least 2 points, got " + std::to_string(points_.size() / dim_));
    for (double v : points_)
        if (!std::isfinite(v)) throw DataError("path has a non-finite coordinate");
}

Path Path::from_sequence(const SkeletonSequence& seq) {
    return Path(std::vector<double>(seq.coords().begin(), seq.coords().end()), seq.width());
}

Path Path::slice(std::size_t first, std::size_t last) const {
    if (first >= last || last >= num_points()) throw ParameterError("invalid path slice");
    return Path(std::vector<double>(points_.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                                    points_.begin() + static_cast<std::ptrdiff_t>((last + 1) * dim_)),
                dim_);
}

Path Path::reversed() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (std::size_t i = num_points(); i-- > 0;) {
        const auto p = point(i);
        out.insert(out.end(), p.begin(), p.end());
    }
    return Path(std::move(out), dim_);
}

Path Path::time_augmented() const {
    const std::size_t n = num_points();
    std::vector<double> out;
    out.reserve(n * (dim_ + 1));
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = point(i);
        out.insert(out.end(), p.begin(), p.end());
        out.push_back(static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return Path(std::move(out), dim_ + 1);
}

TruncatedSignature segment_signature(std::span<const double> increment, std::size_t depth) {
    if (depth < 1) throw ParameterError("signature depth m must be >= 1");
    if (increment.empty()) throw ParameterError("increment must have dimension >= 1");
    TruncatedSignature sig = TensorSeries::one(increment.size(), depth);
    auto l1 = sig.level(1);
    for (std::size_t i = 0; i < increment.size(); ++i) {
        if (!std::isfinite(increment[i])) throw DataError("non-finite increment");
        l1[i] = increment[i];
    }
    const std::size_t d = increment.size();
    for (std::size_t k = 2; k <= depth; ++k) {
        const auto prev = sig.level(k - 1);
        auto cur = sig.level(k);
        const double inv_k = 1.0 / static_cast<double>(k);
        for (std::size_t x = 0; x < prev.size(); ++x)
            for (std::size_t y = 0; y < d; ++y) cur[x * d + y] = prev[x] * increment[y] * inv_k;
    }
    return sig;
}

TruncatedSignature chen_product(const TruncatedSignature& a, const TruncatedSignature& b) { return multiply(a, b); }

TruncatedSignature signature(const Path& path, std::size_t depth) {
    const std::size_t d = path.dim();
    std::vector<double> inc(d);
    auto increment = [&](std::size_t i) {
        const auto p = path.point(i);
        const auto q = path.point(i + 1);
        for (std::size_t c = 0; c < d; ++c) inc[c] = q[c] - p[c];
        return std::span<const double>(inc);
    };
    TruncatedSignature sig = segment_signature(increment(0), depth);
    for (std::size_t i = 1; i + 1 < path.num_points(); ++i) sig = chen_product(sig, segment_signature(increment(i), depth));
    // Level 1 is the displacement; set it exactly rather than as a running sum.
    auto l1 = sig.level(1);
    const auto first = path.point(0);
    const auto last = path.point(path.num_points() - 1);
    for (std::size_t c = 0; c < d; ++c) l1[c] = last[c] - first[c];
    return sig;
}

std::vector<double> project_to_lyndon(const TensorSeries& lie, const LyndonBasis& basis) {
    if (lie.dim() != basis.dim() || lie.depth() != basis.depth())
        throw ParameterError("Lie element shape does not match the Lyndon basis");
    std::vector<double> coeffs(basis.size(), 0.0);
    for (std::size_t k = 1; k <= basis.depth(); ++k) {
        std::vector<double> residual(lie.level(k).begin(), lie.level(k).end());
        for (std::size_t i = basis.level_begin(k); i < basis.level_begin(k + 1); ++i) {
            const auto& e = basis[i];
            double lead = 0.0;
            for (const auto& [idx, c] : e.expansion)
                if (idx == e.tensor_index) lead = c;
            const double lambda = residual[e.tensor_index] / lead;
            coeffs[i] = lambda;
            if (lambda == 0.0) continue;
            for (const auto& [idx, c] : e.expansion) residual[idx] -= lambda * c;
        }
    }
    return coeffs;
}

LogSignature log_signature(const TruncatedSignature& sig, std::shared_ptr<const LyndonBasis> basis) {
    if (!basis || basis->dim() != sig.dim() || basis->depth() != sig.depth())
        throw ParameterError("Lyndon basis does not match the signature shape");
    LogSignature out;
    out.coefficients = project_to_lyndon(tensor_log(sig), *basis);
    out.basis = std::move(basis);
    return out;
}

LogSignature log_signature(const TruncatedSignature& sig) {
    return log_signature(sig, shared_lyndon_basis(sig.dim(), sig.depth()));
}

TensorSeries lie_element(const LogSignature& logsig) {
    const LyndonBasis& basis = *logsig.basis;
    TensorSeries out = TensorSeries::zero(basis.dim(), basis.depth());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& e = basis[i];
        auto level = out.level(e.letters.size());
        for (const auto& [idx, c] : e.expansion) level[idx] += logsig.coefficients[i] * c;
    }
    return out;
}

std::vector<std::size_t> window_boundaries(std::size_t num_points, std::size_t windows) {
    if (windows < 1) throw ParameterError("window count must be >= 1");
    if (num_points < windows + 1)
        throw ParameterError("path with " + std::to_string(num_points) + " points cannot be split into " +
                             std::to_string(windows) + " windows (needs at least " + std::to_string(windows + 1) + ")");
    const std::size_t segments = num_points - 1;
    const std::size_t base = segments / windows;
    const std::size_t extra = segments % windows;
    std::vector<std::size_t> b(windows + 1, 0);
    for (std::size_t i = 0; i < windows; ++i) b[i + 1] = b[i] + base + (i < extra ? 1 : 0);
    return b;
}

FeatureMatrix windowed_log_signature(const Path& input, std::size_t windows, std::size_t depth, bool time_augment) {
    const Path path = time_augment ? input.time_augmented() : input;
    const auto bounds = window_boundaries(path.num_points(), windows);
    auto basis = shared_lyndon_basis(path.dim(), depth);
    FeatureMatrix fm;
    fm.windows = windows;
    fm.dim = basis->size();
    fm.path_dim = path.dim();
    fm.depth = depth;
    fm.time_augment = time_augment;
    fm.values.reserve(windows * fm.dim);
    for (std::size_t i = 0; i < windows; ++i) {
        const auto ls = log_signature(signature(path.slice(bounds[i], bounds[i + 1]), depth), basis);
        fm.values.insert(fm.values.end(), ls.coefficients.begin(), ls.coefficients.end());
    }
    return fm;
}

FeatureMatrix windowed_log_signature(const SkeletonSequence& seq, std::size_t windows, std::size_t depth,
                                     bool time_augment) {
    return windowed_log_signature(Path::from_sequence(seq), windows, depth, time_augment);
}

TruncatedSignature brute_force_signature(const Path& path, std::size_t depth, std::size_t steps) {
    const std::size_t segments = path.num_points() - 1;
    if (steps < segments) throw ParameterError("brute_force_signature needs steps >= path segments");
    if (depth < 1) throw ParameterError("signature depth m must be >= 1");
    const std::size_t d = path.dim();

    auto position = [&](std::size_t j, std::vector<double>& out) {
        // Parameter u = j * segments / steps, evaluated exactly at the grid ends.
        const double u = static_cast<double>(j) * static_cast<double>(segments) / static_cast<double>(steps);
        std::size_t seg = static_cast<std::size_t>(std::floor(u));
        if (seg >= segments) seg = segments - 1;
        const double alpha = u - static_cast<double>(seg);
        const auto p = path.point(seg);
        const auto q = path.point(seg + 1);
        for (std::size_t c = 0; c < d; ++c) out[c] = p[c] + alpha * (q[c] - p[c]);
    };

    // acc[k] holds the k-fold iterated sum over strictly increasing step indices.
    std::vector<std::vector<double>> acc(depth + 1);
    acc[0] = {1.0};
    for (std::size_t k = 1; k <= depth; ++k) acc[k].assign(checked_power(d, k), 0.0);

    std::vector<double> prev(d), cur(d), dx(d);
    position(0, prev);
    for (std::size_t j = 0; j < steps; ++j) {
        position(j + 1, cur);
        for (std::size_t c = 0; c < d; ++c) dx[c] = cur[c] - prev[c];
        for (std::size_t k = depth; k >= 1; --k) {
            const auto& lower = acc[k - 1];
            auto& upper = acc[k];
            for (std::size_t x = 0; x < lower.size(); ++x) {
                const double lx = lower[x];
                for (std::size_t y = 0; y < d; ++y) upper[x * d + y] += lx * dx[y];
            }
        }
        std::swap(prev, cur);
    }

    TruncatedSignature sig = TensorSeries::one(d, depth);
    for (std::size_t k = 1; k <= depth; ++k) std::copy(acc[k].begin(), acc[k].end(), sig.level(k).begin());
    return sig;
}

namespace {

constexpr std::string_view kFeatureMagic = "SKBFEAT1";

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

FeatureMatrix header_from_json(const nlohmann::json& h) {
    FeatureMatrix fm;
    try {
        fm.windows = h.at("w").get<std::size_t>();
        fm.dim = h.at("dim").get<std::size_t>();
        fm.path_dim = h.at("d").get<std::size_t>();
        fm.depth = h.at("m").get<std::size_t>();
        fm.time_augment = h.at("time_augment").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("feature header: ") + e.what());
    }
    if (fm.dim != logsig_dim(fm.path_dim, fm.depth))
        throw SchemaError("feature header dim " + std::to_string(fm.dim) + " does not match logsig_dim(d, m)");
    return fm;
}

}  // namespace

std::string write_feature_csv(const FeatureMatrix& fm) {
    std::string out = "#w=" + std::to_string(fm.windows) + ",dim=" + std::to_string(fm.dim) +
                      ",d=" + std::to_string(fm.path_dim) + ",m=" + std::to_string(fm.depth) +
                      ",time_augment=" + (fm.time_augment ? "1" : "0") + "\n";
    for (std::size_t i = 0; i < fm.windows; ++i) {
        const auto row = fm.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += format_double(row[j]);
        }
        out += '\n';
    }
    return out;
}

FeatureMatrix read_feature_csv(std::string_view text) {
    if (text.empty() || text[0] != '#') throw ParseError("feature CSV must start with a '#' header line", 1);
    const std::size_t nl = text.find('\n');
    std::string_view header = text.substr(1, nl == std::string_view::npos ? std::string_view::npos : nl - 1);
    nlohmann::json h;
    while (!header.empty()) {
        const std::size_t comma = header.find(',');
        std::string_view kv = header.substr(0, comma);
        header.remove_prefix(comma == std::string_view::npos ? header.size() : comma + 1);
        const std::size_t eq = kv.find('=');
        if (eq == std::string_view::npos) throw ParseError("bad header field '" + std::string(kv) + "'", 1);
        std::size_t v = 0;
        const auto val = kv.substr(eq + 1);
        if (std::from_chars(val.data(), val.data() + val.size(), v).ec != std::errc())
            throw ParseError("bad header value '" + std::string(kv) + "'", 1);
        const std::string key(kv.substr(0, eq));
        if (key == "time_augment")
            h[key] = v != 0;
        else
            h[key] = v;
    }
    FeatureMatrix fm = header_from_json(h);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    std::size_t line_no = 1;
    while (!text.empty()) {
        ++line_no;
        const std::size_t end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        std::size_t count = 0;
        while (true) {
            const std::size_t comma = line.find(',');
            const std::string_view tok = line.substr(0, comma);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw ParseError("invalid number '" + std::string(tok) + "'", line_no);
            fm.values.push_back(v);
            ++count;
            if (comma == std::string_view::npos) break;
            line.remove_prefix(comma + 1);
        }
        if (count != fm.dim)
            throw SchemaError("feature row " + std::to_string(line_no - 1) + " has " + std::to_string(count) +
                              " values, expected " + std::to_string(fm.dim));
    }
    if (fm.values.size() != fm.windows * fm.dim)
        throw SchemaError("feature CSV has " + std::to_string(fm.values.size() / std::max<std::size_t>(fm.dim, 1)) +
                          " rows, expected " + std::to_string(fm.windows));
    return fm;
}

std::string write_feature_binary(const FeatureMatrix& fm) {
    nlohmann::ordered_json h;
    h["w"] = fm.windows;
    h["dim"] = fm.dim;
    h["d"] = fm.path_dim;
    h["m"] = fm.depth;
    h["time_augment"] = fm.time_augment;
    const std::string header = h.dump();
    std::string out(kFeatureMagic);
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((header.size() >> (8 * i)) & 0xFF));
    out += header;
    for (double v : fm.values) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
    }
    return out;
}

FeatureMatrix read_feature_binary(std::string_view bytes) {
    if (bytes.size() < kFeatureMagic.size() + 4 || bytes.substr(0, kFeatureMagic.size()) != kFeatureMagic)
        throw SchemaError("not a skelbench feature matrix (bad magic)");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i)
        len |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[kFeatureMagic.size() + i])) << (8 * i);
    const std::size_t data_at = kFeatureMagic.size() + 4 + len;
    if (bytes.size() < data_at) throw SchemaError("feature header truncated");
    nlohmann::json h;
    try {
        h = nlohmann::json::parse(bytes.substr(kFeatureMagic.size() + 4, len));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid feature header: ") + e.what(), 0);
    }
    FeatureMatrix fm = header_from_json(h);
    const std::size_t count = fm.windows * fm.dim;
    if (bytes.size() - data_at != count * 8) throw SchemaError("feature payload size does not match header");
    fm.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[data_at + 8 * i + b])) << (8 * b);
        fm.values[i] = std::bit_cast<double>(bits);
    }
    return fm;
}

}  // namespace skelbench::roughpath
