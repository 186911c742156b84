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
// Experiment runner, results tables and prediction-file scoring.
//
// A run trains one classifier per pipeline on the clean training split, then
// for every grid point degrades each test sample, optionally fills the
// missing frames by interpolation, and only then hands the sequence to the
// pipeline (pre-processing, features, classifier). Training inputs are never
// degraded.

#ifndef SKELBENCH_BENCH_HPP
#define SKELBENCH_BENCH_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skelbench/degrade.hpp"
#include "skelbench/model.hpp"
#include "skelbench/split.hpp"
#include "skelbench/synthetic.hpp"

namespace skelbench {

/// "xsub" or "xset", the split column of results tables.
std::string split_code(SplitKind kind);

enum class MitigationMode { off, on, both };
std::string to_string(MitigationMode mode);
MitigationMode parse_mitigation_mode(std::string_view text);

struct DatasetSource {
    // Exactly one of synthetic / directory is used.
    std::optional<SyntheticSpec> synthetic;
    std::uint64_t synthetic_seed = 0;
    std::filesystem::path directory;
    // Split ids, inline or from id-list files (resolved against the config's directory).
    std::set<std::uint32_t> train_ids;
    std::set<std::uint32_t> test_ids;
};

struct ExperimentConfig {
    std::string name = "experiment";
    DatasetSource dataset;
    SplitKind split = SplitKind::cross_subject;
    /// Grid points in run order; master_seed fields are overridden by master_seed below.
    std::vector<DegradationSpec> grid;
    MitigationMode mitigation = MitigationMode::both;
    std::vector<FeaturePipeline> pipelines;
    TrainConfig train;
    std::uint64_t master_seed = 0;
    std::filesystem::path results_path;  // optional output location

    /// Throws ParameterError on an empty grid or pipeline list, duplicate
    /// pipeline names or out-of-domain grid points.
    void validate() const;
};

/// Config JSON (version 1). Relative paths resolve against base_dir.
/// Malformed documents throw ParameterError.
ExperimentConfig parse_experiment_config(std::string_view json, const std::filesystem::path& base_dir = {});
ExperimentConfig read_experiment_config(const std::filesystem::path& path);
std::string write_experiment_config(const ExperimentConfig& config);

/// Synthetic 8-class dataset, cross-subject split (odd subjects train, even
/// test), three pipelines and the full degradation grid.
ExperimentConfig default_experiment_config();

struct ResultsRow {
    std::string extractor;
    std::string split;
    std::string kind;  // uniform, random, block, or none
    double nominal_rate = 0.0;
    double realized_rate = 0.0;
    double fps = 0.0;
    bool mitigated = false;
    double accuracy = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct ResultsTable {
    std::vector<ResultsRow> rows;
};

inline constexpr std::string_view kResultsHeader =
    "extractor,split,kind,nominal_rate,realized_rate,fps,mitigated,accuracy,n_samples,seed";

/// Header plus one line per row, real numbers with 4 decimals.
std::string write_results_csv(const ResultsTable& table);
ResultsTable read_results_csv(std::string_view text);
ResultsTable read_results_file(const std::filesystem::path& path);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view text);
/// Throws ParameterError on an empty table.
std::string emit_report(const ResultsTable& table, ReportFormat format);

struct SeriesPoint {
    double rate = 0.0;
    double accuracy = 0.0;
};
struct Series {
    std::string extractor;
    std::string split;
    std::string kind;
    bool mitigated = false;
    std::vector<SeriesPoint> points;  // strictly increasing rate
};
/// One curve per (extractor, split, kind, mitigated) in order of first
/// appearance. Throws ParameterError on an empty table and AlignmentError
/// when a curve holds two rows at the same rate.
std::vector<Series> plot_series(const ResultsTable& table);
std::string write_series_csv(const std::vector<Series>& series);

/// Row filter and extractor renaming, for diffs across tables or models.
ResultsTable select_rows(const ResultsTable& table, const std::function<bool(const ResultsRow&)>& keep);
ResultsTable rename_extractor(const ResultsTable& table, std::string_view from, std::string_view to);

struct DeltaRow {
    std::string extractor;
    std::string split;
    std::string kind;
    double rate = 0.0;
    double accuracy_a = 0.0;
    double accuracy_b = 0.0;
    double delta = 0.0;  // b - a
};
/// Pairs rows on (extractor, kind, rate to 1e-4, split). Throws
/// AlignmentError listing unmatched or duplicated keys.
std::vector<DeltaRow> diff_tables(const ResultsTable& a, const ResultsTable& b);
std::string write_delta_csv(const std::vector<DeltaRow>& deltas);

struct ExperimentResult {
    ResultsTable table;
    /// Clean-test accuracy per pipeline, in config order.
    std::vector<Accuracy> baselines;
    /// Checksum of the training inputs observed at each grid point.
    std::vector<std::uint64_t> train_checksums;
    std::vector<ClassifierModel> models;
};

/// Loads (or generates) the dataset and splits it.
SplitResult load_dataset(const ExperimentConfig& config);

/// The one test-time path: degrade, then optionally mitigate. Pre-processing
/// happens later, inside the pipeline.
SkeletonSequence degrade_for_test(const SkeletonSequence& seq, const DegradationSpec& spec, bool mitigate);

/// Errors raised at a grid point are rethrown with the grid point named.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct PredictionEntry {
    std::string sample_id;
    int predicted_label = 0;
};
struct PredictionFile {
    std::string model;
    std::string provenance;
    std::vector<PredictionEntry> entries;
};

/// "# model: <name>", "# provenance: <text>", header "sample_id,predicted_label", rows.
std::string write_prediction_file(const PredictionFile& file);
/// Throws ParseError on malformed lines and IngestionError on duplicate ids
/// or negative labels.
PredictionFile read_prediction_file(std::string_view text);

struct TruthEntry {
    std::string sample_id;
    int label = 0;
};
std::vector<TruthEntry> truth_of(std::span<const SkeletonSequence> samples);

struct IngestResult {
    Accuracy accuracy;
    ResultsRow row;  // extractor = model name, accuracy and n_samples filled
};
/// Scores predictions against the labelled truth set. Unknown ids, duplicate
/// ids and truth ids without a prediction throw IngestionError listing them.
IngestResult ingest_predictions(const PredictionFile& predictions, std::span<const TruthEntry> truth);

}  // namespace skelbench

#endif  // SKELBENCH_BENCH_HPP
