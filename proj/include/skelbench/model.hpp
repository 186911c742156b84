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
// Desk-scale classifiers: a feature pipeline (optional fixed-length
// pre-processing, then raw frames or windowed log-signatures), per-feature
// standardization and a multinomial softmax head.
//
// Training minimizes
//   L(W) = mean_i -log softmax(W x_i)[y_i] + (l2 / 2) * ||W without bias||^2
// by gradient descent. x_i carries a trailing 1 for the bias column.

#ifndef SKELBENCH_MODEL_HPP
#define SKELBENCH_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "skelbench/degrade.hpp"
#include "skelbench/preproc.hpp"
#include "skelbench/sequence.hpp"

namespace skelbench {

enum class ExtractorKind { raw_resampled, windowed_logsig };
std::string to_string(ExtractorKind kind);
ExtractorKind parse_extractor_kind(std::string_view text);

/// Fixed linear map from the flattened frame (in_dim) to out_dim channels.
/// The matrix has orthonormal columns drawn from `seed`; it is materialized
/// once the input width is known.
struct ChannelProjection {
    std::size_t out_dim = 8;
    std::uint64_t seed = 0;
    Eigen::MatrixXd matrix;  // in_dim x out_dim, empty until materialized
};

/// Orthonormal in_dim x out_dim matrix from Gaussian draws (Householder QR).
Eigen::MatrixXd orthonormal_projection(std::size_t in_dim, std::size_t out_dim, std::uint64_t seed);

struct RawParams {
    std::size_t target_len = 64;
};

struct LogsigParams {
    std::size_t windows = 8;
    std::size_t depth = 2;
    bool time_augment = false;
    std::optional<ChannelProjection> projection;
};

struct ExtractorSpec {
    std::variant<RawParams, LogsigParams> params;

    ExtractorKind kind() const noexcept {
        return std::holds_alternative<RawParams>(params) ? ExtractorKind::raw_resampled
                                                         : ExtractorKind::windowed_logsig;
    }
    /// Throws ParameterError on out-of-range parameters or a projection
    /// matrix without full column rank.
    void validate() const;
};

/// Named extractor plus the pre-processing applied before it. Pre-processing
/// always runs after degradation and mitigation.
struct FeaturePipeline {
    std::string name;
    std::optional<PreprocSpec> preproc;
    ExtractorSpec extractor;

    /// Materializes the channel projection for frames of `frame_width`
    /// values; a no-op when there is none or it is already present.
    void bind(std::size_t frame_width);
    /// Feature length for frames of `frame_width` values.
    std::size_t feature_dim(std::size_t frame_width) const;
    /// Unstandardized features. Throws ConsistencyError when a projection is
    /// bound to a different frame width.
    std::vector<double> extract(const SkeletonSequence& seq) const;
};

/// Per-feature affine standardization. Standard deviations below
/// kStdFloor are replaced by 1 so constant features map to 0.
class Standardizer {
public:
    static constexpr double kStdFloor = 1e-8;

    Standardizer() = default;
    Standardizer(std::vector<double> mean, std::vector<double> stddev);
    /// Rows are samples.
    static Standardizer fit(const Eigen::MatrixXd& features);

    std::size_t dim() const noexcept { return mean_.size(); }
    const std::vector<double>& mean() const noexcept { return mean_; }
    const std::vector<double>& stddev() const noexcept { return std_; }

    /// Throws ConsistencyError on a dimension mismatch.
    void apply(std::span<double> features) const;

private:
    std::vector<double> mean_;
    std::vector<double> std_;
};

struct TrainConfig {
    double learning_rate = 0.5;
    std::size_t epochs = 300;
    std::size_t batch_size = 0;  // 0 = full batch
    double l2_penalty = 1e-3;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrainingMetadata {
    std::size_t epochs_run = 0;
    double final_loss = 0.0;
    std::vector<double> loss_history;  // loss before each epoch, then the final loss
    std::size_t step_halvings = 0;
    std::uint64_t train_checksum = 0;
    std::size_t num_train = 0;
};

struct ClassifierModel {
    FeaturePipeline pipeline;
    Standardizer standardizer;
    Eigen::MatrixXd weights;  // K x (F + 1), last column is the bias
    TrainConfig config;
    TrainingMetadata metadata;

    std::size_t num_classes() const noexcept { return static_cast<std::size_t>(weights.rows()); }
    std::size_t feature_dim() const noexcept {
        return weights.cols() > 0 ? static_cast<std::size_t>(weights.cols() - 1) : 0;
    }
};

/// Standardized features with labels; rows are samples.
struct LabeledBatch {
    Eigen::MatrixXd features;
    std::vector<int> labels;
};

/// Mean cross-entropy plus penalty, and its gradient with respect to W.
struct LossGradient {
    double loss = 0.0;
    Eigen::MatrixXd gradient;
};
LossGradient loss_and_gradient(const Eigen::MatrixXd& weights, const LabeledBatch& batch, double l2_penalty);
double loss_only(const Eigen::MatrixXd& weights, const LabeledBatch& batch, double l2_penalty);

/// Softmax of W [x; 1], shifted by the largest logit.
Eigen::VectorXd softmax_probabilities(const Eigen::MatrixXd& weights, std::span<const double> features);

/// Extracts unstandardized features for every sample (rows).
Eigen::MatrixXd feature_matrix(const FeaturePipeline& pipeline, std::span<const SkeletonSequence> samples);

/// Trains on standardized features directly. Full-batch descent halves the
/// step whenever the loss would increase, so the loss never goes up.
/// Throws TrainingError for fewer than two classes and NumericError on a
/// non-finite loss.
ClassifierModel train_on_features(const LabeledBatch& batch, std::size_t num_classes, const TrainConfig& config);

/// Binds the pipeline, fits the standardizer on the (clean) training set and
/// trains the head.
ClassifierModel train_classifier(std::span<const SkeletonSequence> train, FeaturePipeline pipeline,
                                 const TrainConfig& config);

struct Prediction {
    int label = 0;
    std::vector<double> probabilities;
};

/// Throws ConsistencyError when the pipeline output does not match the model.
Prediction predict(const ClassifierModel& model, const SkeletonSequence& seq);
/// Prediction from already standardized features.
Prediction predict_features(const ClassifierModel& model, std::span<const double> standardized);

/// Max over weight entries of |analytic - numeric| / max(|analytic|, |numeric|, floor)
/// with central differences of step epsilon.
double gradient_check(const Eigen::MatrixXd& weights, const LabeledBatch& batch, double l2_penalty, double epsilon);
double gradient_check(const ClassifierModel& model, const LabeledBatch& batch, double epsilon);

struct Accuracy {
    std::size_t correct = 0;
    std::size_t total = 0;
    double value() const noexcept { return static_cast<double>(correct) / static_cast<double>(total); }
    Rational exact() const { return Rational(static_cast<std::int64_t>(correct), static_cast<std::int64_t>(total)); }
};

/// Throws ParameterError on an empty dataset.
Accuracy evaluate_accuracy(const ClassifierModel& model, std::span<const SkeletonSequence> samples);
Accuracy score_predictions(std::span<const int> predicted, std::span<const int> truth);

/// Checkpoint JSON (version 1): {format, version, pipeline, standardizer,
/// weights, config, metadata}.
std::string write_checkpoint(const ClassifierModel& model);
ClassifierModel read_checkpoint(std::string_view bytes);

}  // namespace skelbench

#endif  // SKELBENCH_MODEL_HPP
