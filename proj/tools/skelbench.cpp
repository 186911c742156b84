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
// skelbench command-line tool. Each pipeline stage is a subcommand so it can
// be run and inspected on its own.
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 4 numeric error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "skelbench/bench.hpp"
#include "skelbench/canonical.hpp"
#include "skelbench/degrade.hpp"
#include "skelbench/error.hpp"
#include "skelbench/files.hpp"
#include "skelbench/model.hpp"
#include "skelbench/synthetic.hpp"

namespace fs = std::filesystem;
using namespace skelbench;

namespace {

// Writes to `out`, or stdout when it is empty.
void emit(const std::string& out, const std::string& bytes) {
    if (out.empty())
        std::cout << bytes;
    else
        write_file(out, bytes);
}

ExperimentConfig load_config(const std::string& path, std::optional<std::uint64_t> seed) {
    ExperimentConfig c = path.empty() ? default_experiment_config() : read_experiment_config(path);
    if (seed) {
        c.master_seed = *seed;
        for (auto& g : c.grid) g.master_seed = *seed;
    }
    return c;
}

DegradationSpec spec_from_flags(const std::string& kind, std::int64_t n, double rate, std::uint64_t seed) {
    DegradationSpec spec;
    spec.kind = parse_degradation_kind(kind);
    spec.stride = n;
    spec.rate = rate;
    spec.master_seed = seed;
    spec.validate();
    return spec;
}

std::string model_path(const fs::path& dir, const std::string& name) { return (dir / (name + ".model.json")).string(); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skelbench: temporal degradation benchmark for skeletal time series"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a synthetic labelled dataset");
    SyntheticSpec synth_spec;
    std::uint64_t synth_seed = 7;
    std::string synth_out, synth_format = "json";
    synth->add_option("--classes", synth_spec.num_classes, "Number of classes (2-8)");
    synth->add_option("--per-class", synth_spec.samples_per_class, "Samples per class");
    synth->add_option("--joints", synth_spec.joints, "Joints per frame");
    synth->add_option("--min-frames", synth_spec.min_frames);
    synth->add_option("--max-frames", synth_spec.max_frames);
    synth->add_option("--jitter", synth_spec.jitter_sigma, "Gaussian jitter sigma (meters)");
    synth->add_option("--warp", synth_spec.time_warp_strength, "Time-warp strength in [0, 1]");
    synth->add_option("--seed", synth_seed, "Dataset seed");
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--format", synth_format, "json or skb")->check(CLI::IsMember({"json", "skb"}));

    // degrade
    auto* degrade = app.add_subcommand("degrade", "Degrade one sequence file and write its mask sidecar");
    std::string deg_in, deg_out, deg_kind = "uniform";
    std::int64_t deg_n = 1;
    double deg_rate = 0.0;
    std::uint64_t deg_seed = 0;
    bool deg_mitigate = false;
    degrade->add_option("--in", deg_in, "Input sequence (.json, .skb or .skeleton)")->required();
    degrade->add_option("--out", deg_out, "Output sequence; the mask goes to <out>.mask.json")->required();
    degrade->add_option("--kind", deg_kind, "uniform, random or block");
    degrade->add_option("-n,--stride", deg_n, "Uniform stride n");
    degrade->add_option("-r,--rate", deg_rate, "Drop rate for random and block");
    degrade->add_option("--seed", deg_seed, "Master seed");
    degrade->add_flag("--mitigate", deg_mitigate, "Fill dropped frames by linear interpolation");

    // features
    auto* features = app.add_subcommand("features", "Extract features from sequence files");
    std::vector<std::string> feat_in;
    std::string feat_out, feat_model, feat_extractor = "logsig";
    std::size_t feat_windows = 8, feat_depth = 2, feat_len = 64;
    bool feat_time = false;
    features->add_option("--in", feat_in, "Input sequence files")->required();
    features->add_option("--model", feat_model, "Use the pipeline and standardizer of a model checkpoint");
    features->add_option("--extractor", feat_extractor, "raw or logsig")->check(CLI::IsMember({"raw", "logsig"}));
    features->add_option("--windows", feat_windows);
    features->add_option("--depth", feat_depth);
    features->add_option("--target-len", feat_len);
    features->add_flag("--time-augment", feat_time);
    features->add_option("--out", feat_out, "Output CSV (stdout if omitted)");

    // train
    auto* train = app.add_subcommand("train", "Train every extractor of a config on its clean training split");
    std::string train_config, train_out;
    train->add_option("--config", train_config, "Experiment config (default config if omitted)");
    train->add_option("--out", train_out, "Directory for <name>.model.json checkpoints")->required();

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint on the test split, optionally degraded");
    std::string eval_config, eval_model, eval_kind, eval_pred;
    std::int64_t eval_n = 1;
    double eval_rate = 0.0;
    std::optional<std::uint64_t> eval_seed;
    bool eval_mitigate = false;
    eval->add_option("--config", eval_config, "Experiment config providing the dataset");
    eval->add_option("--model", eval_model, "Model checkpoint")->required();
    eval->add_option("--kind", eval_kind, "Degradation kind (none if omitted)");
    eval->add_option("-n,--stride", eval_n);
    eval->add_option("-r,--rate", eval_rate);
    eval->add_option("--seed", eval_seed, "Master seed");
    eval->add_flag("--mitigate", eval_mitigate);
    eval->add_option("--predictions", eval_pred, "Also write a prediction file here");

    // run
    auto* run = app.add_subcommand("run", "Run a full experiment grid");
    std::string run_config, run_out, run_format = "csv";
    std::optional<std::uint64_t> run_seed;
    run->add_option("--config", run_config, "Experiment config (default config if omitted)");
    run->add_option("--seed", run_seed, "Override the master seed");
    run->add_option("--out", run_out, "Results file (config output path, else stdout)");
    run->add_option("--format", run_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // score
    auto* score = app.add_subcommand("score", "Score an external prediction file against the test split");
    std::string score_config, score_pred, score_out;
    score->add_option("--config", score_config, "Experiment config providing the truth set");
    score->add_option("--predictions", score_pred, "Prediction file")->required();
    score->add_option("--out", score_out, "Results CSV (stdout if omitted)");

    // report
    auto* report = app.add_subcommand("report", "Render a results table as CSV, JSON or plot series");
    std::string rep_in, rep_out, rep_format = "csv";
    report->add_option("--in", rep_in, "Results CSV")->required();
    report->add_option("--out", rep_out);
    report->add_option("--format", rep_format, "csv, json or series")->check(CLI::IsMember({"csv", "json", "series"}));

    // diff
    auto* diff = app.add_subcommand("diff", "Per-key accuracy(b) - accuracy(a)");
    std::string diff_a, diff_b, diff_out;
    std::optional<bool> diff_a_mitigated, diff_b_mitigated;
    diff->add_option("a", diff_a, "Baseline results CSV")->required();
    diff->add_option("b", diff_b, "Compared results CSV (defaults to a)");
    diff->add_option("--a-mitigated", diff_a_mitigated, "Keep only rows of a with this mitigated flag");
    diff->add_option("--b-mitigated", diff_b_mitigated, "Keep only rows of b with this mitigated flag");
    diff->add_option("--out", diff_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) {
            synth_spec.validate();
            const auto samples = generate_synthetic(synth_spec, synth_seed);
            for (const auto& s : samples)
                canonical::write_sequence_file(fs::path(synth_out) / (s.sample_id() + "." + synth_format), s);
            std::cerr << "wrote " << samples.size() << " sequences to " << synth_out << "\n";
        } else if (degrade->parsed()) {
            const auto spec = spec_from_flags(deg_kind, deg_n, deg_rate, deg_seed);
            const auto seq = canonical::read_sequence_file(deg_in);
            const auto deg = apply_degradation(seq, spec);
            canonical::write_sequence_file(deg_out, deg_mitigate ? interpolate_missing(deg) : deg.frames());
            write_file(deg_out + ".mask.json", write_mask_sidecar(seq.sample_id(), deg.mask(), spec));
        } else if (features->parsed()) {
            std::optional<ClassifierModel> model;
            FeaturePipeline pipeline;
            if (!feat_model.empty()) {
                model = read_checkpoint(read_file(feat_model));
                pipeline = model->pipeline;
            } else {
                pipeline.name = feat_extractor;
                if (feat_extractor == "raw")
                    pipeline.extractor.params = RawParams{feat_len};
                else
                    pipeline.extractor.params = LogsigParams{feat_windows, feat_depth, feat_time, std::nullopt};
                pipeline.extractor.validate();
            }
            std::string csv;
            for (const auto& path : feat_in) {
                const auto seq = canonical::read_sequence_file(path);
                auto f = pipeline.extract(seq);
                if (model) model->standardizer.apply(f);
                if (csv.empty()) {
                    csv = "sample_id,label";
                    for (std::size_t i = 0; i < f.size(); ++i) csv += ",f" + std::to_string(i);
                    csv += "\n";
                }
                csv += seq.sample_id() + "," + std::to_string(seq.label());
                char buf[40];
                for (double v : f) {
                    std::snprintf(buf, sizeof buf, ",%.17g", v);
                    csv += buf;
                }
                csv += "\n";
            }
            emit(feat_out, csv);
        } else if (train->parsed()) {
            const auto config = load_config(train_config, std::nullopt);
            const auto data = load_dataset(config);
            for (const auto& p : config.pipelines) {
                const auto model = train_classifier(data.train, p, config.train);
                write_file(model_path(train_out, p.name), write_checkpoint(model));
                std::cerr << p.name << ": final loss " << model.metadata.final_loss << "\n";
            }
        } else if (eval->parsed()) {
            const auto config = load_config(eval_config, std::nullopt);
            const auto model = read_checkpoint(read_file(eval_model));
            const auto data = load_dataset(config);
            std::vector<SkeletonSequence> inputs;
            if (eval_kind.empty() || eval_kind == "none") {
                inputs = data.test;
            } else {
                const auto spec = spec_from_flags(eval_kind, eval_n, eval_rate, eval_seed.value_or(config.master_seed));
                for (const auto& s : data.test) inputs.push_back(degrade_for_test(s, spec, eval_mitigate));
            }
            PredictionFile preds{model.pipeline.name, "skelbench eval", {}};
            std::vector<int> predicted, gold;
            for (const auto& s : inputs) {
                const int label = predict(model, s).label;
                preds.entries.push_back({s.sample_id(), label});
                predicted.push_back(label);
                gold.push_back(s.label());
            }
            const auto acc = score_predictions(predicted, gold);
            std::printf("%s accuracy %.4f (%zu/%zu)\n", model.pipeline.name.c_str(), acc.value(), acc.correct, acc.total);
            if (!eval_pred.empty()) write_file(eval_pred, write_prediction_file(preds));
        } else if (run->parsed()) {
            const auto config = load_config(run_config, run_seed);
            const auto result = run_experiment(config);
            const auto bytes = emit_report(result.table, parse_report_format(run_format));
            const std::string out = !run_out.empty() ? run_out : config.results_path.string();
            emit(out, bytes);
        } else if (score->parsed()) {
            const auto config = load_config(score_config, std::nullopt);
            const auto data = load_dataset(config);
            const auto truth = truth_of(data.test);
            const auto result = ingest_predictions(read_prediction_file(read_file(score_pred)), truth);
            ResultsTable t;
            t.rows.push_back(result.row);
            t.rows.back().split = split_code(config.split);
            t.rows.back().fps = data.test.front().fps();
            t.rows.back().seed = config.master_seed;
            emit(score_out, write_results_csv(t));
        } else if (report->parsed()) {
            const auto table = read_results_file(rep_in);
            if (rep_format == "series")
                emit(rep_out, write_series_csv(plot_series(table)));
            else
                emit(rep_out, emit_report(table, parse_report_format(rep_format)));
        } else if (diff->parsed()) {
            // A run table holds both mitigation settings under one key, so
            // `diff run.csv --a-mitigated false --b-mitigated true` gives the gain.
            const auto load = [](const std::string& path, std::optional<bool> mitigated) {
                const auto t = read_results_file(path);
                if (!mitigated) return t;
                return select_rows(t, [&](const ResultsRow& r) { return r.mitigated == *mitigated; });
            };
            const auto a = load(diff_a, diff_a_mitigated);
            const auto b = load(diff_b.empty() ? diff_a : diff_b, diff_b_mitigated);
            emit(diff_out, write_delta_csv(diff_tables(a, b)));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.category());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
