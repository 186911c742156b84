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

#include "skelbench/canonical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

#include <json.hpp>

#include "skelbench/error.hpp"
#include "skelbench/files.hpp"
#include "skelbench/ntu.hpp"

namespace skelbench::canonical {
namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

constexpr std::string_view kMagic = "SKBSEQ01";

ordered_json header_of(const SkeletonSequence& seq) {
    ordered_json doc;
    doc["format"] = "skelbench.sequence";
    doc["version"] = 1;
    doc["fps"] = seq.fps();
    doc["num_joints"] = seq.shape().num_joints;
    doc["channels"] = seq.shape().channels;
    doc["num_bodies"] = seq.shape().num_bodies;
    doc["label"] = seq.info().label;
    doc["subject_id"] = seq.info().subject_id;
    doc["setup_id"] = seq.info().setup_id;
    doc["camera_id"] = seq.info().camera_id;
    doc["sample_id"] = seq.sample_id();
    return doc;
}

const json& require(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end()) throw SchemaError(std::string("missing key '") + key + "'");
    return *it;
}

template <typename T>
T require_uint(const json& doc, const char* key) {
    const json& v = require(doc, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw SchemaError(std::string("'") + key + "' must be a non-negative integer");
    return v.get<T>();
}

struct Header {
    FrameShape shape;
    double fps = 0.0;
    SequenceInfo info;
};

Header parse_header(const json& doc) {
    if (!doc.is_object()) throw SchemaError("sequence document must be a JSON object");
    Header h;
    const json& fps = require(doc, "fps");
    if (!fps.is_number()) throw SchemaError("'fps' must be a number");
    h.fps = fps.get<double>();
    if (!std::isfinite(h.fps) || h.fps <= 0.0) throw SchemaError("'fps' must be positive and finite");
    h.shape.num_joints = require_uint<std::size_t>(doc, "num_joints");
    h.shape.channels = require_uint<std::size_t>(doc, "channels");
    h.shape.num_bodies = doc.contains("num_bodies") ? require_uint<std::size_t>(doc, "num_bodies") : 1;
    if (h.shape.num_joints == 0) throw SchemaError("'num_joints' must be positive");
    if (h.shape.channels == 0) throw SchemaError("'channels' must be positive");
    if (h.shape.num_bodies < 1 || h.shape.num_bodies > 2) throw SchemaError("'num_bodies' must be 1 or 2");
    h.info.label = static_cast<int>(require_uint<std::uint32_t>(doc, "label"));
    h.info.subject_id = require_uint<std::uint32_t>(doc, "subject_id");
    h.info.setup_id = require_uint<std::uint32_t>(doc, "setup_id");
    h.info.camera_id = require_uint<std::uint32_t>(doc, "camera_id");
    const json& id = require(doc, "sample_id");
    if (!id.is_string()) throw SchemaError("'sample_id' must be a string");
    h.info.sample_id = id.get<std::string>();
    return h;
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(std::string_view in, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
    return v;
}

void put_f64(std::string& out, double d) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

double get_f64(std::string_view in, std::size_t at) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

std::string write_json(const SkeletonSequence& seq) {
    ordered_json doc = header_of(seq);
    const std::size_t joints = seq.shape().num_bodies * seq.shape().num_joints;
    const std::size_t channels = seq.shape().channels;
    ordered_json frames = ordered_json::array();
    for (std::size_t t = 0; t < seq.num_frames(); ++t) {
        const FrameView f = seq.frame(t);
        ordered_json frame = ordered_json::array();
        for (std::size_t j = 0; j < joints; ++j)
            frame.push_back(ordered_json(std::vector<double>(f.begin() + j * channels,
                                                             f.begin() + (j + 1) * channels)));
        frames.push_back(std::move(frame));
    }
    doc["frames"] = std::move(frames);
    return doc.dump() + "\n";
}

SkeletonSequence read_json(std::string_view bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    Header h = parse_header(doc);
    const json& frames = require(doc, "frames");
    if (!frames.is_array()) throw SchemaError("'frames' must be an array");
    const std::size_t joints = h.shape.num_bodies * h.shape.num_joints;
    const std::size_t channels = h.shape.channels;
    std::vector<double> coords;
    coords.reserve(frames.size() * h.shape.width());
    for (std::size_t t = 0; t < frames.size(); ++t) {
        const json& frame = frames[t];
        if (!frame.is_array() || frame.size() != joints)
            throw SchemaError("dimension mismatch: 'frames[" + std::to_string(t) + "]' must hold " +
                              std::to_string(joints) + " joints");
        for (std::size_t j = 0; j < joints; ++j) {
            const json& joint = frame[j];
            if (!joint.is_array() || joint.size() != channels)
                throw SchemaError("dimension mismatch: 'frames[" + std::to_string(t) + "][" +
                                  std::to_string(j) + "]' must hold " + std::to_string(channels) +
                                  " values");
            for (std::size_t c = 0; c < channels; ++c) {
                const json& v = joint[c];
                const std::string field = "frames[" + std::to_string(t) + "][" + std::to_string(j) + "][" +
                                          std::to_string(c) + "]";
                if (!v.is_number()) throw SchemaError("'" + field + "' is not a finite number");
                const double d = v.get<double>();
                if (!std::isfinite(d)) throw SchemaError("'" + field + "' is not a finite number");
                coords.push_back(d);
            }
        }
    }
    if (frames.size() < 2)
        throw SchemaError("'frames' must hold at least 2 frames, found " + std::to_string(frames.size()));
    return SkeletonSequence(std::move(coords), h.shape, h.fps, std::move(h.info));
}

std::string write_binary(const SkeletonSequence& seq) {
    ordered_json header = header_of(seq);
    header["num_frames"] = seq.num_frames();
    const std::string header_text = header.dump();
    std::string out(kMagic);
    put_u32(out, static_cast<std::uint32_t>(header_text.size()));
    out += header_text;
    out.reserve(out.size() + seq.coords().size() * 8);
    for (double d : seq.coords()) put_f64(out, d);
    return out;
}

SkeletonSequence read_binary(std::string_view bytes) {
    if (bytes.size() < kMagic.size() + 4 || bytes.substr(0, kMagic.size()) != kMagic)
        throw SchemaError("not a skelbench binary sequence (bad magic)");
    const std::uint32_t header_len = get_u32(bytes, kMagic.size());
    const std::size_t data_at = kMagic.size() + 4 + header_len;
    if (bytes.size() < data_at) throw SchemaError("binary sequence header truncated");
    json header;
    try {
        header = json::parse(bytes.substr(kMagic.size() + 4, header_len));
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid binary header: ") + e.what(), 0);
    }
    Header h = parse_header(header);
    const auto num_frames = require_uint<std::size_t>(header, "num_frames");
    const std::size_t count = num_frames * h.shape.width();
    if (bytes.size() - data_at != count * 8)
        throw SchemaError("dimension mismatch: payload holds " + std::to_string((bytes.size() - data_at) / 8) +
                          " values, header implies " + std::to_string(count));
    std::vector<double> coords(count);
    for (std::size_t i = 0; i < count; ++i) {
        coords[i] = get_f64(bytes, data_at + 8 * i);
        if (!std::isfinite(coords[i]))
            throw SchemaError("'frames' value " + std::to_string(i) + " is not a finite number");
    }
    if (num_frames < 2) throw SchemaError("binary sequence must hold at least 2 frames");
    return SkeletonSequence(std::move(coords), h.shape, h.fps, std::move(h.info));
}

SkeletonSequence read_sequence_file(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".skeleton") return ntu::read_skeleton_file(path);
    const std::string bytes = read_file(path);
    try {
        return ext == ".skb" ? read_binary(bytes) : read_json(bytes);
    } catch (const Error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_sequence_file(const std::filesystem::path& path, const SkeletonSequence& seq) {
    write_file(path, path.extension() == ".skb" ? write_binary(seq) : write_json(seq));
}

std::vector<SkeletonSequence> load_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw DataError("'" + dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".json" || ext == ".skb" || ext == ".skeleton") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<SkeletonSequence> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(read_sequence_file(f));
    return out;
}

}  // namespace skelbench::canonical
