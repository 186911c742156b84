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

#include "skelbench/ntu.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "skelbench/error.hpp"
#include "skelbench/files.hpp"

namespace skelbench::ntu {
namespace {

constexpr std::size_t kBodyInfoFields = 10;
constexpr std::size_t kJointFields = 12;

// Splits the payload into whitespace-separated tokens, one line at a time.
class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    // Tokens of the next non-empty line; throws at end of input.
    const std::vector<std::string_view>& next(const char* expecting) {
        while (pos_ < text_.size()) {
            tokenize(take_line());
            if (!tokens_.empty()) return tokens_;
        }
        throw ParseError(std::string("unexpected end of file, expecting ") + expecting, line_no_);
    }

    std::size_t line() const noexcept { return line_no_; }

    bool at_end() {
        while (pos_ < text_.size()) {
            const std::size_t saved_pos = pos_;
            const std::size_t saved_line = line_no_;
            const std::string_view line = take_line();
            if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
                pos_ = saved_pos;
                line_no_ = saved_line;
                return false;
            }
        }
        return true;
    }

private:
    std::string_view take_line() {
        const std::size_t end = text_.find('\n', pos_);
        const std::string_view line =
            text_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
        pos_ = end == std::string_view::npos ? text_.size() : end + 1;
        ++line_no_;
        return line;
    }

    void tokenize(std::string_view line) {
        tokens_.clear();
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) tokens_.push_back(line.substr(i, j - i));
            i = j;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
    std::vector<std::string_view> tokens_;
};

std::size_t parse_count(LineReader& reader, const char* what) {
    const auto& tokens = reader.next(what);
    const std::size_t line = reader.line();
    if (tokens.size() != 1)
        throw ParseError(std::string("expected a single ") + what + ", found " +
                             std::to_string(tokens.size()) + " fields",
                         line);
    std::size_t value = 0;
    const auto tok = tokens[0];
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line);
    return value;
}

double parse_double(std::string_view tok, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("invalid number '" + std::string(tok) + "'", line);
    return value;
}

bool parse_field(std::string_view s, std::size_t& pos, char tag, std::uint32_t& out) {
    if (pos + 4 > s.size() || s[pos] != tag) return false;
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data() + pos + 1, s.data() + pos + 4, value);
    if (ec != std::errc() || ptr != s.data() + pos + 4) return false;
    out = value;
    pos += 4;
    return true;
}

}  // namespace

std::string SampleName::stem() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "S%03uC%03uP%03uR%03uA%03u", setup, camera, performer, replication,
                  action);
    return buf;
}

std::optional<SampleName> decode_sample_name(std::string_view file_name) {
    const std::size_t slash = file_name.find_last_of("/\\");
    if (slash != std::string_view::npos) file_name.remove_prefix(slash + 1);
    constexpr std::string_view ext = ".skeleton";
    if (file_name.size() > ext.size() && file_name.substr(file_name.size() - ext.size()) == ext)
        file_name.remove_suffix(ext.size());
    if (file_name.size() != 20) return std::nullopt;
    SampleName name;
    std::size_t pos = 0;
    if (parse_field(file_name, pos, 'S', name.setup) && parse_field(file_name, pos, 'C', name.camera) &&
        parse_field(file_name, pos, 'P', name.performer) &&
        parse_field(file_name, pos, 'R', name.replication) && parse_field(file_name, pos, 'A', name.action))
        return name;
    return std::nullopt;
}

SkeletonSequence parse_skeleton(std::string_view text, std::string_view file_name, std::size_t body_slots) {
    const auto name = decode_sample_name(file_name);
    if (!name)
        throw SchemaError("file name '" + std::string(file_name) +
                          "' does not follow the SsssCcccPpppRrrrAaaa convention");
    if (name->action < 1) throw SchemaError("action index in '" + std::string(file_name) + "' must be >= 1");
    if (body_slots < 1 || body_slots > 2) throw ParameterError("body_slots must be 1 or 2");

    const FrameShape shape{body_slots, kJointsPerBody, 3};
    const std::size_t body_width = kJointsPerBody * 3;

    LineReader reader(text);
    const std::size_t num_frames = parse_count(reader, "frame count");
    std::vector<double> coords(num_frames * shape.width(), 0.0);

    for (std::size_t t = 0; t < num_frames; ++t) {
        const std::size_t bodies = parse_count(reader, "body count");
        if (bodies > body_slots)
            throw SchemaError("frame " + std::to_string(t) + " has " + std::to_string(bodies) +
                              " bodies, at most " + std::to_string(body_slots) + " supported (line " +
                              std::to_string(reader.line()) + ")");
        for (std::size_t b = 0; b < bodies; ++b) {
            const auto& info = reader.next("body info");
            if (info.size() != kBodyInfoFields)
                throw ParseError("body info line must have " + std::to_string(kBodyInfoFields) +
                                     " fields, found " + std::to_string(info.size()),
                                 reader.line());
            const std::size_t joints = parse_count(reader, "joint count");
            if (joints != kJointsPerBody)
                throw SchemaError("frame " + std::to_string(t) + ", body " + std::to_string(b) + ": " +
                                  std::to_string(joints) + " joints, expected 25 (line " +
                                  std::to_string(reader.line()) + ")");
            for (std::size_t j = 0; j < joints; ++j) {
                if (reader.at_end())
                    throw SchemaError("frame " + std::to_string(t) + ", body " + std::to_string(b) +
                                      ": joint block ended after " + std::to_string(j) + " of 25 joints at end of file");
                const auto& fields = reader.next("joint line");
                if (fields.size() != kJointFields) {
                    // A short body block shows up as a body-info or count line here.
                    if (fields.size() == 1 || fields.size() == kBodyInfoFields)
                        throw SchemaError("frame " + std::to_string(t) + ", body " + std::to_string(b) +
                                          ": joint block ended after " + std::to_string(j) +
                                          " of 25 joints (line " + std::to_string(reader.line()) + ")");
                    throw ParseError("joint line must have 12 fields, found " + std::to_string(fields.size()),
                                     reader.line());
                }
                double* dst = coords.data() + t * shape.width() + b * body_width + j * 3;
                for (std::size_t c = 0; c < 3; ++c) {
                    const double v = parse_double(fields[c], reader.line());
                    if (!std::isfinite(v))
                        throw DataError("non-finite coordinate at frame " + std::to_string(t) + ", body " +
                                        std::to_string(b) + ", joint " + std::to_string(j) + " (line " +
                                        std::to_string(reader.line()) + ")");
                    dst[c] = v;
                }
            }
        }
    }
    if (!reader.at_end()) throw ParseError("trailing content after last frame", reader.line() + 1);
    if (num_frames < 2)
        throw DataError("'" + std::string(file_name) + "' has " + std::to_string(num_frames) +
                        " frames, at least 2 required");

    SequenceInfo info;
    info.label = static_cast<int>(name->action) - 1;
    info.subject_id = name->performer;
    info.setup_id = name->setup;
    info.camera_id = name->camera;
    info.sample_id = name->stem();
    return SkeletonSequence(std::move(coords), shape, kCaptureFps, std::move(info));
}

SkeletonSequence read_skeleton_file(const std::filesystem::path& path, std::size_t body_slots) {
    return parse_skeleton(read_file(path), path.filename().string(), body_slots);
}

}  // namespace skelbench::ntu
