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

#include "skelbench/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "json_util.hpp"
#include "skelbench/canonical.hpp"
#include "skelbench/error.hpp"
#include "skelbench/files.hpp"

namespace skelbench {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fixed4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    // Avoid "-0.0000" for tiny negative deltas.
    if (std::string_view(buf) == "-0.0000") return "0.0000";
    return buf;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

double parse_double(std::string_view field, std::size_t line, const char* what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
        throw ParseError(std::string("bad ") + what + " '" + std::string(field) + "'", line);
    return v;
}

template <typename Int>
Int parse_int(std::string_view field, std::size_t line, const char* what) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
        throw ParseError(std::string("bad ") + what + " '" + std::string(field) + "'", line);
    return v;
}

// Same exception type, message prefixed with context.
[[noreturn]] void rethrow_with_context(const Error& e, const std::string& context) {
    const std::string msg = context + ": " + e.what();
    if (dynamic_cast<const ParameterError*>(&e)) throw ParameterError(msg);
    if (dynamic_cast<const SchemaError*>(&e)) throw SchemaError(msg);
    if (dynamic_cast<const DataError*>(&e)) throw DataError(msg);
    if (dynamic_cast<const ConsistencyError*>(&e)) throw ConsistencyError(msg);
    if (dynamic_cast<const NumericError*>(&e)) throw NumericError(msg);
    if (dynamic_cast<const LengthError*>(&e)) throw LengthError(msg);
    if (dynamic_cast<const TrainingError*>(&e)) throw TrainingError(msg);
    if (dynamic_cast<const ParseError*>(&e)) throw ParseError(msg, 0);
    throw Error(e.category(), msg);
}

std::string grid_label(const DegradationSpec& spec) { return spec.label(); }

ordered_json synthetic_to_json(const SyntheticSpec& s) {
    ordered_json j;
    j["num_classes"] = s.num_classes;
    j["samples_per_class"] = s.samples_per_class;
    j["joints"] = s.joints;
    j["min_frames"] = s.min_frames;
    j["max_frames"] = s.max_frames;
    j["jitter_sigma"] = s.jitter_sigma;
    j["time_warp_strength"] = s.time_warp_strength;
    j["fps"] = s.fps;
    j["num_subjects"] = s.num_subjects;
    return j;
}

// Missing keys keep their defaults.
SyntheticSpec synthetic_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("'synthetic' must be an object");
    SyntheticSpec s;
    if (j.contains("num_classes")) s.num_classes = static_cast<int>(get_unsigned(j, "num_classes"));
    if (j.contains("samples_per_class")) s.samples_per_class = static_cast<int>(get_unsigned(j, "samples_per_class"));
    if (j.contains("joints")) s.joints = get_unsigned(j, "joints");
    if (j.contains("min_frames")) s.min_frames = get_unsigned(j, "min_frames");
    if (j.contains("max_frames")) s.max_frames = get_unsigned(j, "max_frames");
    if (j.contains("jitter_sigma")) s.jitter_sigma = get_number(j, "jitter_sigma");
    if (j.contains("time_warp_strength")) s.time_warp_strength = get_number(j, "time_warp_strength");
    if (j.contains("fps")) s.fps = get_number(j, "fps");
    if (j.contains("num_subjects")) s.num_subjects = static_cast<std::uint32_t>(get_unsigned(j, "num_subjects"));
    s.validate();
    return s;
}

std::set<std::uint32_t> ids_from_json(const json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_array()) throw SchemaError(std::string("'") + key + "' must be an array of ids");
    std::set<std::uint32_t> ids;
    for (const auto& id : v) {
        if (!id.is_number_unsigned()) throw SchemaError(std::string("'") + key + "' must hold non-negative integers");
        ids.insert(id.get<std::uint32_t>());
    }
    return ids;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

// Split ids: "<prefix>_ids" inline or "<prefix>_ids_file".
std::set<std::uint32_t> load_ids(const json& ds, const std::string& prefix, const std::filesystem::path& base) {
    const std::string inline_key = prefix + "_ids";
    const std::string file_key = prefix + "_ids_file";
    if (ds.contains(inline_key)) return ids_from_json(ds, inline_key.c_str());
    if (ds.contains(file_key)) return read_id_list(resolve(base, get_string(ds, file_key.c_str())));
    return {};
}

std::vector<DegradationSpec> grid_from_json(const json& g) {
    std::vector<DegradationSpec> grid;
    if (g.is_array()) {
        for (const auto& item : g) grid.push_back(degradation_spec_from_json(item));
        return grid;
    }
    if (!g.is_object()) throw SchemaError("'grid' must be an array of specs or an object keyed by kind");
    // Shorthand {"uniform": [n...], "random": [r...], "block": [r...]}, run in that order.
    for (const char* kind : {"uniform", "random", "block"}) {
        if (!g.contains(kind)) continue;
        const auto& values = g[kind];
        if (!values.is_array()) throw SchemaError(std::string("grid '") + kind + "' must be an array");
        for (const auto& v : values) {
            DegradationSpec spec;
            spec.kind = parse_degradation_kind(kind);
            if (spec.kind == DegradationKind::uniform) {
                if (!v.is_number_integer()) throw SchemaError("uniform grid values must be integers");
                spec.stride = v.get<std::int64_t>();
            } else {
                if (!v.is_number()) throw SchemaError(std::string(kind) + " grid values must be numbers");
                spec.rate = v.get<double>();
            }
            grid.push_back(spec);
        }
    }
    for (const auto& [key, value] : g.items())
        if (key != "uniform" && key != "random" && key != "block")
            throw SchemaError("unknown grid kind '" + key + "'");
    return grid;
}

double base_fps(std::span<const SkeletonSequence> samples) {
    return samples.empty() ? 30.0 : samples.front().fps();
}

double fps_at(const DegradationSpec& spec, double base) {
    if (spec.kind == DegradationKind::uniform) return base / static_cast<double>(spec.stride);
    return base * (1.0 - spec.rate);
}

}  // namespace

std::string split_code(SplitKind kind) { return kind == SplitKind::cross_subject ? "xsub" : "xset"; }

std::string to_string(MitigationMode mode) {
    switch (mode) {
        case MitigationMode::off: return "off";
        case MitigationMode::on: return "on";
        case MitigationMode::both: return "both";
    }
    return "?";
}

MitigationMode parse_mitigation_mode(std::string_view text) {
    if (text == "off") return MitigationMode::off;
    if (text == "on") return MitigationMode::on;
    if (text == "both") return MitigationMode::both;
    throw ParameterError("unknown mitigation mode '" + std::string(text) + "' (expected off, on or both)");
}

void ExperimentConfig::validate() const {
    if (grid.empty()) throw ParameterError("experiment grid is empty");
    if (pipelines.empty()) throw ParameterError("experiment has no extractors");
    for (const auto& spec : grid) {
        try {
            spec.validate();
        } catch (const ParameterError& e) {
            throw ParameterError("grid point " + spec.label() + ": " + e.what());
        }
    }
    std::set<std::string> names;
    for (const auto& p : pipelines) {
        if (p.name.empty()) throw ParameterError("extractor without a name");
        if (!names.insert(p.name).second) throw ParameterError("duplicate extractor name '" + p.name + "'");
        p.extractor.validate();
        if (p.preproc) p.preproc->validate();
    }
    train.validate();
    if (!dataset.synthetic && dataset.directory.empty())
        throw ParameterError("dataset needs either a synthetic spec or a directory");
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::filesystem::path& base_dir) {
    try {
        const json doc = json::parse(text);
        if (!doc.is_object()) throw SchemaError("config must be a JSON object");
        const auto version = get_unsigned(doc, "version");
        if (version != 1) throw SchemaError("unsupported config version " + std::to_string(version));

        ExperimentConfig config;
        if (doc.contains("name")) config.name = get_string(doc, "name");
        if (doc.contains("split")) config.split = parse_split_kind(get_string(doc, "split"));

        const auto& ds = require(doc, "dataset");
        if (ds.contains("synthetic")) {
            config.dataset.synthetic = synthetic_from_json(ds["synthetic"]);
            if (ds.contains("seed")) config.dataset.synthetic_seed = get_unsigned(ds, "seed");
        } else if (ds.contains("directory")) {
            config.dataset.directory = resolve(base_dir, get_string(ds, "directory"));
        } else {
            throw SchemaError("dataset needs 'synthetic' or 'directory'");
        }
        config.dataset.train_ids = load_ids(ds, "train", base_dir);
        config.dataset.test_ids = load_ids(ds, "test", base_dir);

        config.grid = grid_from_json(require(doc, "grid"));
        if (doc.contains("mitigation")) config.mitigation = parse_mitigation_mode(get_string(doc, "mitigation"));

        const auto& extractors = require(doc, "extractors");
        if (!extractors.is_array()) throw SchemaError("'extractors' must be an array");
        for (const auto& e : extractors) config.pipelines.push_back(pipeline_from_json(e));

        if (doc.contains("train")) config.train = train_config_from_json(doc["train"]);
        if (doc.contains("master_seed")) config.master_seed = get_unsigned(doc, "master_seed");
        if (doc.contains("outputs")) {
            const auto& out = doc["outputs"];
            if (out.contains("results")) config.results_path = resolve(base_dir, get_string(out, "results"));
        }
        for (auto& spec : config.grid) spec.master_seed = config.master_seed;
        config.validate();
        return config;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config: ") + e.what());
    } catch (const ParameterError&) {
        throw;
    } catch (const Error& e) {
        // Every defect in the config document is a configuration error.
        throw ParameterError(std::string("config: ") + e.what());
    }
}

ExperimentConfig read_experiment_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const DataError& e) {
        throw ParameterError(e.what());
    }
    return parse_experiment_config(text, path.parent_path());
}

std::string write_experiment_config(const ExperimentConfig& config) {
    ordered_json doc;
    doc["version"] = 1;
    doc["name"] = config.name;
    ordered_json ds;
    if (config.dataset.synthetic) {
        ds["synthetic"] = synthetic_to_json(*config.dataset.synthetic);
        ds["seed"] = config.dataset.synthetic_seed;
    } else {
        ds["directory"] = config.dataset.directory.generic_string();
    }
    if (!config.dataset.train_ids.empty()) ds["train_ids"] = config.dataset.train_ids;
    if (!config.dataset.test_ids.empty()) ds["test_ids"] = config.dataset.test_ids;
    doc["dataset"] = ds;
    doc["split"] = split_code(config.split);
    ordered_json grid = ordered_json::array();
    for (const auto& spec : config.grid) {
        ordered_json g = degradation_spec_to_json(spec);
        g.erase("master_seed");
        grid.push_back(g);
    }
    doc["grid"] = grid;
    doc["mitigation"] = to_string(config.mitigation);
    ordered_json extractors = ordered_json::array();
    for (const auto& p : config.pipelines) extractors.push_back(pipeline_to_json(p));
    doc["extractors"] = extractors;
    doc["train"] = train_config_to_json(config.train);
    doc["master_seed"] = config.master_seed;
    if (!config.results_path.empty()) doc["outputs"]["results"] = config.results_path.generic_string();
    return doc.dump(2) + "\n";
}

ExperimentConfig default_experiment_config() {
    ExperimentConfig config;
    config.name = "synthetic-default";
    config.dataset.synthetic = SyntheticSpec{};
    config.dataset.synthetic_seed = 7;
    config.dataset.train_ids = {1, 3, 5, 7, 9};
    config.dataset.test_ids = {2, 4, 6, 8, 10};
    config.split = SplitKind::cross_subject;
    for (std::int64_t n : {1, 2, 3, 6, 10}) config.grid.push_back(DegradationSpec::uniform(n));
    for (int i = 0; i <= 9; ++i) config.grid.push_back(DegradationSpec::random(i / 10.0, 0));
    for (double r : {0.0, 0.5, 2.0 / 3.0, 5.0 / 6.0, 0.9}) config.grid.push_back(DegradationSpec::block(r, 0));
    config.mitigation = MitigationMode::both;

    FeaturePipeline raw_pad;
    raw_pad.name = "raw_pad";
    raw_pad.preproc = PreprocSpec{PreprocKind::pad_replicate, 64};
    raw_pad.extractor.params = RawParams{64};

    FeaturePipeline raw_resample;
    raw_resample.name = "raw_resample";
    raw_resample.preproc = PreprocSpec{PreprocKind::resample_linear, 64};
    raw_resample.extractor.params = RawParams{64};

    FeaturePipeline logsig;
    logsig.name = "logsig";
    LogsigParams lp;
    lp.windows = 8;
    lp.depth = 2;
    lp.time_augment = true;
    lp.projection = ChannelProjection{8, 1, {}};
    logsig.extractor.params = lp;

    config.pipelines = {raw_pad, raw_resample, logsig};
    config.master_seed = 0;
    return config;
}

SplitResult load_dataset(const ExperimentConfig& config) {
    std::vector<SkeletonSequence> samples;
    SplitSpec split;
    split.kind = config.split;
    if (config.dataset.synthetic) {
        samples = generate_synthetic(*config.dataset.synthetic, config.dataset.synthetic_seed);
    } else {
        samples = canonical::load_directory(config.dataset.directory);
        if (samples.empty())
            throw DataError("no sequence files in '" + config.dataset.directory.string() + "'");
    }
    split.train_ids = config.dataset.train_ids;
    split.test_ids = config.dataset.test_ids;
    if (split.train_ids.empty() && split.test_ids.empty() && config.dataset.synthetic) {
        // Odd keys train, even keys test.
        const std::uint32_t top = config.split == SplitKind::cross_subject ? config.dataset.synthetic->num_subjects : 4;
        for (std::uint32_t id = 1; id <= top; ++id) (id % 2 ? split.train_ids : split.test_ids).insert(id);
    }
    if (split.train_ids.empty() || split.test_ids.empty())
        throw ParameterError("split needs non-empty train and test id lists");
    split.validate();
    SplitResult result = split_dataset(samples, split);
    if (result.train.empty()) throw DataError("training split is empty");
    if (result.test.empty()) throw DataError("test split is empty");
    return result;
}

SkeletonSequence degrade_for_test(const SkeletonSequence& seq, const DegradationSpec& spec, bool mitigate) {
    const DegradedSequence deg = apply_degradation(seq, spec);
    return mitigate ? interpolate_missing(deg) : deg.frames();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const SplitResult data = load_dataset(config);
    ExperimentResult result;

    for (const auto& pipeline : config.pipelines) {
        try {
            result.models.push_back(train_classifier(data.train, pipeline, config.train));
            result.baselines.push_back(evaluate_accuracy(result.models.back(), data.test));
        } catch (const Error& e) {
            rethrow_with_context(e, "extractor '" + pipeline.name + "'");
        }
    }

    std::vector<bool> settings;
    if (config.mitigation != MitigationMode::on) settings.push_back(false);
    if (config.mitigation != MitigationMode::off) settings.push_back(true);

    const std::string split = split_code(config.split);
    const double fps0 = base_fps(data.test);

    // rows[grid][setting][extractor], flattened extractor-major afterwards.
    struct Cell {
        double realized = 0.0;
        std::vector<Accuracy> per_model;
    };
    std::vector<std::vector<Cell>> cells(config.grid.size(), std::vector<Cell>(settings.size()));

    for (std::size_t g = 0; g < config.grid.size(); ++g) {
        DegradationSpec spec = config.grid[g];
        spec.master_seed = config.master_seed;
        try {
            result.train_checksums.push_back(checksum(data.train));
            std::vector<DegradedSequence> degraded;
            degraded.reserve(data.test.size());
            double realized_sum = 0.0;
            for (const auto& seq : data.test) {
                degraded.push_back(apply_degradation(seq, spec));
                realized_sum += degraded.back().mask().realized_rate().value();
            }
            for (std::size_t s = 0; s < settings.size(); ++s) {
                std::vector<SkeletonSequence> inputs;
                inputs.reserve(degraded.size());
                for (const auto& d : degraded) inputs.push_back(settings[s] ? interpolate_missing(d) : d.frames());
                Cell& cell = cells[g][s];
                cell.realized = realized_sum / static_cast<double>(degraded.size());
                for (const auto& model : result.models) cell.per_model.push_back(evaluate_accuracy(model, inputs));
            }
        } catch (const Error& e) {
            rethrow_with_context(e, "grid point " + grid_label(spec));
        }
    }

    for (std::size_t m = 0; m < config.pipelines.size(); ++m) {
        for (std::size_t g = 0; g < config.grid.size(); ++g) {
            const DegradationSpec& spec = config.grid[g];
            for (std::size_t s = 0; s < settings.size(); ++s) {
                ResultsRow row;
                row.extractor = config.pipelines[m].name;
                row.split = split;
                row.kind = to_string(spec.kind);
                row.nominal_rate = spec.nominal_rate();
                row.realized_rate = cells[g][s].realized;
                row.fps = fps_at(spec, fps0);
                row.mitigated = settings[s];
                row.accuracy = cells[g][s].per_model[m].value();
                row.n_samples = cells[g][s].per_model[m].total;
                row.seed = config.master_seed;
                result.table.rows.push_back(std::move(row));
            }
        }
    }
    return result;
}

std::string write_results_csv(const ResultsTable& table) {
    std::string out(kResultsHeader);
    out += '\n';
    for (const auto& r : table.rows) {
        out += r.extractor + ',' + r.split + ',' + r.kind + ',' + fixed4(r.nominal_rate) + ',' +
               fixed4(r.realized_rate) + ',' + fixed4(r.fps) + ',' + (r.mitigated ? "true" : "false") + ',' +
               fixed4(r.accuracy) + ',' + std::to_string(r.n_samples) + ',' + std::to_string(r.seed) + '\n';
    }
    return out;
}

ResultsTable read_results_csv(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines.front() != kResultsHeader)
        throw ParseError("results header must be '" + std::string(kResultsHeader) + "'", 1);
    ResultsTable table;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t ln = i + 1;
        if (lines[i].empty()) continue;
        const auto f = split_fields(lines[i]);
        if (f.size() != 10) throw ParseError("expected 10 fields, got " + std::to_string(f.size()), ln);
        ResultsRow r;
        r.extractor = f[0];
        r.split = f[1];
        r.kind = f[2];
        r.nominal_rate = parse_double(f[3], ln, "nominal_rate");
        r.realized_rate = parse_double(f[4], ln, "realized_rate");
        r.fps = parse_double(f[5], ln, "fps");
        if (f[6] == "true")
            r.mitigated = true;
        else if (f[6] == "false")
            r.mitigated = false;
        else
            throw ParseError("mitigated must be true or false", ln);
        r.accuracy = parse_double(f[7], ln, "accuracy");
        r.n_samples = parse_int<std::size_t>(f[8], ln, "n_samples");
        r.seed = parse_int<std::uint64_t>(f[9], ln, "seed");
        if (r.accuracy < 0.0 || r.accuracy > 1.0) throw ParseError("accuracy outside [0, 1]", ln);
        if (r.realized_rate < 0.0 || r.realized_rate >= 1.0) throw ParseError("realized_rate outside [0, 1)", ln);
        table.rows.push_back(std::move(r));
    }
    return table;
}

ResultsTable read_results_file(const std::filesystem::path& path) { return read_results_csv(read_file(path)); }

ReportFormat parse_report_format(std::string_view text) {
    if (text == "csv") return ReportFormat::csv;
    if (text == "json") return ReportFormat::json;
    throw ParameterError("unknown report format '" + std::string(text) + "' (expected csv or json)");
}

std::string emit_report(const ResultsTable& table, ReportFormat format) {
    if (table.rows.empty()) throw ParameterError("cannot report an empty results table");
    if (format == ReportFormat::csv) return write_results_csv(table);
    // Numbers go through the same 4-decimal rendering as the CSV.
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows) {
        ordered_json j;
        j["extractor"] = r.extractor;
        j["split"] = r.split;
        j["kind"] = r.kind;
        j["nominal_rate"] = std::stod(fixed4(r.nominal_rate));
        j["realized_rate"] = std::stod(fixed4(r.realized_rate));
        j["fps"] = std::stod(fixed4(r.fps));
        j["mitigated"] = r.mitigated;
        j["accuracy"] = std::stod(fixed4(r.accuracy));
        j["n_samples"] = r.n_samples;
        j["seed"] = r.seed;
        rows.push_back(std::move(j));
    }
    ordered_json doc;
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::vector<Series> plot_series(const ResultsTable& table) {
    if (table.rows.empty()) throw ParameterError("cannot plot an empty results table");
    std::vector<Series> series;
    std::map<std::tuple<std::string, std::string, std::string, bool>, std::size_t> index;
    for (const auto& r : table.rows) {
        const auto key = std::make_tuple(r.extractor, r.split, r.kind, r.mitigated);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, series.size()).first;
            series.push_back(Series{r.extractor, r.split, r.kind, r.mitigated, {}});
        }
        series[it->second].points.push_back({r.nominal_rate, r.accuracy});
    }
    for (auto& s : series) {
        std::stable_sort(s.points.begin(), s.points.end(),
                         [](const SeriesPoint& a, const SeriesPoint& b) { return a.rate < b.rate; });
        for (std::size_t i = 1; i < s.points.size(); ++i)
            if (s.points[i].rate == s.points[i - 1].rate)
                throw AlignmentError("series " + s.extractor + "/" + s.split + "/" + s.kind + (s.mitigated ? "/mitigated" : "") +
                                     " has two rows at rate " + fixed4(s.points[i].rate));
    }
    return series;
}

std::string write_series_csv(const std::vector<Series>& series) {
    std::string out = "extractor,split,kind,mitigated,rate,accuracy\n";
    for (const auto& s : series)
        for (const auto& p : s.points)
            out += s.extractor + ',' + s.split + ',' + s.kind + ',' + (s.mitigated ? "true" : "false") + ',' +
                   fixed4(p.rate) + ',' + fixed4(p.accuracy) + '\n';
    return out;
}

ResultsTable select_rows(const ResultsTable& table, const std::function<bool(const ResultsRow&)>& keep) {
    ResultsTable out;
    for (const auto& r : table.rows)
        if (keep(r)) out.rows.push_back(r);
    return out;
}

ResultsTable rename_extractor(const ResultsTable& table, std::string_view from, std::string_view to) {
    ResultsTable out = table;
    for (auto& r : out.rows)
        if (r.extractor == from) r.extractor = to;
    return out;
}

namespace {

using DiffKey = std::tuple<std::string, std::string, std::int64_t, std::string>;

DiffKey diff_key(const ResultsRow& r) {
    return {r.extractor, r.kind, std::llround(r.nominal_rate * 1e4), r.split};
}

std::string key_text(const DiffKey& k) {
    return std::get<0>(k) + "/" + std::get<3>(k) + "/" + std::get<1>(k) + "@" +
           fixed4(static_cast<double>(std::get<2>(k)) / 1e4);
}

std::map<DiffKey, const ResultsRow*> index_rows(const ResultsTable& t, const char* name) {
    std::map<DiffKey, const ResultsRow*> out;
    std::vector<std::string> dups;
    for (const auto& r : t.rows) {
        const auto k = diff_key(r);
        if (!out.emplace(k, &r).second) dups.push_back(key_text(k));
    }
    if (!dups.empty()) {
        std::string msg = std::string("table ") + name + " has duplicate keys:";
        for (const auto& d : dups) msg += " " + d;
        throw AlignmentError(msg);
    }
    return out;
}

}  // namespace

std::vector<DeltaRow> diff_tables(const ResultsTable& a, const ResultsTable& b) {
    const auto ia = index_rows(a, "a");
    const auto ib = index_rows(b, "b");
    std::vector<std::string> only_a, only_b;
    for (const auto& [k, r] : ia)
        if (!ib.count(k)) only_a.push_back(key_text(k));
    for (const auto& [k, r] : ib)
        if (!ia.count(k)) only_b.push_back(key_text(k));
    if (!only_a.empty() || !only_b.empty()) {
        std::string msg = "tables do not align;";
        if (!only_a.empty()) {
            msg += " missing from b:";
            for (const auto& s : only_a) msg += " " + s;
            msg += ";";
        }
        if (!only_b.empty()) {
            msg += " missing from a:";
            for (const auto& s : only_b) msg += " " + s;
        }
        throw AlignmentError(msg);
    }
    // Output follows the row order of a.
    std::vector<DeltaRow> out;
    for (const auto& ra : a.rows) {
        const ResultsRow& rb = *ib.at(diff_key(ra));
        out.push_back(DeltaRow{ra.extractor, ra.split, ra.kind, ra.nominal_rate, ra.accuracy, rb.accuracy,
                               rb.accuracy - ra.accuracy});
    }
    return out;
}

std::string write_delta_csv(const std::vector<DeltaRow>& deltas) {
    std::string out = "extractor,split,kind,rate,accuracy_a,accuracy_b,delta\n";
    for (const auto& d : deltas)
        out += d.extractor + ',' + d.split + ',' + d.kind + ',' + fixed4(d.rate) + ',' + fixed4(d.accuracy_a) + ',' +
               fixed4(d.accuracy_b) + ',' + fixed4(d.delta) + '\n';
    return out;
}

std::string write_prediction_file(const PredictionFile& file) {
    std::string out = "# model: " + file.model + "\n# provenance: " + file.provenance + "\nsample_id,predicted_label\n";
    for (const auto& e : file.entries) out += e.sample_id + ',' + std::to_string(e.predicted_label) + '\n';
    return out;
}

PredictionFile read_prediction_file(std::string_view text) {
    PredictionFile file;
    const auto lines = split_lines(text);
    bool header_seen = false;
    std::set<std::string> seen;
    std::vector<std::string> dups;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t ln = i + 1;
        const std::string_view line = lines[i];
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr std::string_view kModel = "# model: ";
            constexpr std::string_view kProv = "# provenance: ";
            if (line.starts_with(kModel)) file.model = line.substr(kModel.size());
            else if (line.starts_with(kProv)) file.provenance = line.substr(kProv.size());
            continue;
        }
        if (!header_seen) {
            if (line != "sample_id,predicted_label") throw ParseError("expected header 'sample_id,predicted_label'", ln);
            header_seen = true;
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 2 || f[0].empty()) throw ParseError("expected 'sample_id,predicted_label'", ln);
        PredictionEntry e{std::string(f[0]), parse_int<int>(f[1], ln, "predicted_label")};
        if (e.predicted_label < 0) throw IngestionError("negative label for '" + e.sample_id + "'");
        if (!seen.insert(e.sample_id).second) dups.push_back(e.sample_id);
        file.entries.push_back(std::move(e));
    }
    if (!header_seen) throw ParseError("missing header 'sample_id,predicted_label'", 0);
    if (!dups.empty()) {
        std::string msg = "duplicate sample ids:";
        for (const auto& d : dups) msg += " " + d;
        throw IngestionError(msg);
    }
    return file;
}

std::vector<TruthEntry> truth_of(std::span<const SkeletonSequence> samples) {
    std::vector<TruthEntry> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back({s.sample_id(), s.label()});
    return out;
}

IngestResult ingest_predictions(const PredictionFile& predictions, std::span<const TruthEntry> truth) {
    if (truth.empty()) throw ParameterError("truth set is empty");
    std::map<std::string, int> truth_map;
    for (const auto& t : truth)
        if (!truth_map.emplace(t.sample_id, t.label).second)
            throw IngestionError("truth set repeats sample id '" + t.sample_id + "'");

    std::map<std::string, int> predicted;
    std::vector<std::string> unknown, dups;
    for (const auto& e : predictions.entries) {
        if (!truth_map.count(e.sample_id)) unknown.push_back(e.sample_id);
        if (!predicted.emplace(e.sample_id, e.predicted_label).second) dups.push_back(e.sample_id);
    }
    std::vector<std::string> missing;
    for (const auto& t : truth)
        if (!predicted.count(t.sample_id)) missing.push_back(t.sample_id);
    if (!unknown.empty() || !dups.empty() || !missing.empty()) {
        std::string msg = "predictions do not match the truth set;";
        auto list = [&msg](const char* what, const std::vector<std::string>& ids) {
            if (ids.empty()) return;
            msg += std::string(" ") + what + ":";
            for (const auto& id : ids) msg += " " + id;
            msg += ";";
        };
        list("unknown ids", unknown);
        list("duplicate ids", dups);
        list("missing ids", missing);
        msg.pop_back();
        throw IngestionError(msg);
    }

    std::vector<int> pred, gold;
    for (const auto& t : truth) {
        pred.push_back(predicted.at(t.sample_id));
        gold.push_back(t.label);
    }
    IngestResult result;
    result.accuracy = score_predictions(pred, gold);
    result.row.extractor = predictions.model.empty() ? "external" : predictions.model;
    result.row.kind = "none";
    result.row.accuracy = result.accuracy.value();
    result.row.n_samples = result.accuracy.total;
    return result;
}

}  // namespace skelbench
