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

#include "skelbench/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "json_util.hpp"
#include "skelbench/error.hpp"
#include "skelbench/rng.hpp"
#include "skelbench/signature.hpp"

namespace skelbench {

namespace {

constexpr double kGradientFloor = 1e-8;
constexpr std::size_t kMaxHalvings = 60;

// Inserts k - 1 evenly spaced collinear points into every segment so a short
// path still has one segment per window. Signatures are unchanged.
roughpath::Path refine_to(const roughpath::Path& path, std::size_t min_points) {
    const std::size_t segments = path.num_points() - 1;
    const std::size_t k = (min_points - 1 + segments - 1) / segments;
    const std::size_t d = path.dim();
    std::vector<double> out;
    out.reserve((segments * k + 1) * d);
    for (std::size_t i = 0; i < segments; ++i) {
        const auto a = path.point(i);
        const auto b = path.point(i + 1);
        for (std::size_t s = 0; s < k; ++s) {
            const double u = static_cast<double>(s) / static_cast<double>(k);
            for (std::size_t c = 0; c < d; ++c) out.push_back(a[c] + u * (b[c] - a[c]));
        }
    }
    const auto last = path.point(segments);
    out.insert(out.end(), last.begin(), last.end());
    return roughpath::Path(std::move(out), d);
}

Eigen::MatrixXd with_bias(const Eigen::MatrixXd& features) {
    Eigen::MatrixXd xb(features.rows(), features.cols() + 1);
    xb.leftCols(features.cols()) = features;
    xb.col(features.cols()).setOnes();
    return xb;
}

// Row-wise log-sum-exp and softmax of logits (N x K).
void softmax_rows(const Eigen::MatrixXd& logits, Eigen::MatrixXd& probs, Eigen::VectorXd& lse) {
    probs.resize(logits.rows(), logits.cols());
    lse.resize(logits.rows());
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double zmax = logits.row(i).maxCoeff();
        const Eigen::RowVectorXd e = (logits.row(i).array() - zmax).exp().matrix();
        const double sum = e.sum();
        probs.row(i) = e / sum;
        lse(i) = zmax + std::log(sum);
    }
}

double penalty(const Eigen::MatrixXd& weights, double l2) {
    if (l2 == 0.0) return 0.0;
    return 0.5 * l2 * weights.leftCols(weights.cols() - 1).squaredNorm();
}

void check_batch(const Eigen::MatrixXd& weights, const LabeledBatch& batch) {
    if (batch.features.rows() != static_cast<Eigen::Index>(batch.labels.size()))
        throw ConsistencyError("batch has " + std::to_string(batch.features.rows()) + " rows but " +
                               std::to_string(batch.labels.size()) + " labels");
    if (batch.features.cols() + 1 != weights.cols())
        throw ConsistencyError("feature dimension " + std::to_string(batch.features.cols()) +
                               " does not match model dimension " + std::to_string(weights.cols() - 1));
    for (int y : batch.labels)
        if (y < 0 || y >= weights.rows())
            throw ConsistencyError("label " + std::to_string(y) + " outside the model's " +
                                   std::to_string(weights.rows()) + " classes");
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const char* what) {
    const auto rows = get_unsigned(j, "rows");
    const auto cols = get_unsigned(j, "cols");
    const auto& data = require(j, "data");
    if (!data.is_array() || data.size() != rows * cols)
        throw SchemaError(std::string("'") + what + "' data must hold rows*cols numbers");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c, ++k) {
            if (!data[k].is_number()) throw SchemaError(std::string("'") + what + "' holds a non-number");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[k].get<double>();
        }
    return m;
}

nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    j["data"] = data;
    return j;
}

std::vector<double> doubles_from_json(const nlohmann::json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_array()) throw SchemaError(std::string("'") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw SchemaError(std::string("'") + key + "' holds a non-number");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

std::string to_string(ExtractorKind kind) {
    return kind == ExtractorKind::raw_resampled ? "raw_resampled" : "windowed_logsig";
}

ExtractorKind parse_extractor_kind(std::string_view text) {
    if (text == "raw_resampled") return ExtractorKind::raw_resampled;
    if (text == "windowed_logsig") return ExtractorKind::windowed_logsig;
    throw ParameterError("unknown extractor kind '" + std::string(text) +
                         "' (expected raw_resampled or windowed_logsig)");
}

Eigen::MatrixXd orthonormal_projection(std::size_t in_dim, std::size_t out_dim, std::uint64_t seed) {
    if (out_dim < 1 || out_dim > in_dim)
        throw ParameterError("projection needs 1 <= out_dim <= in_dim, got out_dim " + std::to_string(out_dim) +
                             " for in_dim " + std::to_string(in_dim));
    CounterRng rng(seed);
    Eigen::MatrixXd g(static_cast<Eigen::Index>(in_dim), static_cast<Eigen::Index>(out_dim));
    for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = rng.normal();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(g.rows(), g.cols());
    // Fix column signs so that R has a positive diagonal.
    for (Eigen::Index c = 0; c < q.cols(); ++c)
        if (qr.matrixQR()(c, c) < 0.0) q.col(c) *= -1.0;
    return q;
}

void ExtractorSpec::validate() const {
    if (const auto* raw = std::get_if<RawParams>(&params)) {
        if (raw->target_len < 2) throw ParameterError("raw_resampled target_len must be >= 2");
        return;
    }
    const auto& ls = std::get<LogsigParams>(params);
    if (ls.windows < 1) throw ParameterError("windowed_logsig needs windows >= 1");
    if (ls.depth < 1 || ls.depth > 6) throw ParameterError("windowed_logsig depth must be in [1, 6]");
    if (ls.projection) {
        const auto& p = *ls.projection;
        if (p.out_dim < 1) throw ParameterError("projection out_dim must be >= 1");
        if (p.matrix.size() > 0) {
            if (p.matrix.cols() != static_cast<Eigen::Index>(p.out_dim))
                throw ParameterError("projection matrix has " + std::to_string(p.matrix.cols()) +
                                     " columns, expected out_dim " + std::to_string(p.out_dim));
            if (!p.matrix.allFinite()) throw ParameterError("projection matrix has non-finite entries");
            const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(p.matrix);
            if (qr.rank() != p.matrix.cols()) throw ParameterError("projection matrix lacks full column rank");
        }
    }
}

void FeaturePipeline::bind(std::size_t frame_width) {
    auto* ls = std::get_if<LogsigParams>(&extractor.params);
    if (!ls || !ls->projection || ls->projection->matrix.size() > 0) return;
    ls->projection->matrix = orthonormal_projection(frame_width, ls->projection->out_dim, ls->projection->seed);
}

std::size_t FeaturePipeline::feature_dim(std::size_t frame_width) const {
    if (const auto* raw = std::get_if<RawParams>(&extractor.params)) return raw->target_len * frame_width;
    const auto& ls = std::get<LogsigParams>(extractor.params);
    std::size_t d = ls.projection ? ls.projection->out_dim : frame_width;
    if (ls.time_augment) ++d;
    return ls.windows * static_cast<std::size_t>(roughpath::logsig_dim(d, ls.depth));
}

std::vector<double> FeaturePipeline::extract(const SkeletonSequence& input) const {
    const SkeletonSequence seq = preproc ? apply_preproc(input, *preproc) : input;
    if (const auto* raw = std::get_if<RawParams>(&extractor.params)) {
        const auto r = resample_linear(seq, raw->target_len);
        return std::vector<double>(r.coords().begin(), r.coords().end());
    }
    const auto& ls = std::get<LogsigParams>(extractor.params);
    const std::size_t n = seq.num_frames();
    const std::size_t w = seq.width();
    std::vector<double> points;
    std::size_t d = w;
    if (ls.projection) {
        const auto& m = ls.projection->matrix;
        if (m.size() == 0) throw ConsistencyError("pipeline '" + name + "': channel projection is not bound");
        if (m.rows() != static_cast<Eigen::Index>(w))
            throw ConsistencyError("pipeline '" + name + "': projection expects frames of width " +
                                   std::to_string(m.rows()) + ", got " + std::to_string(w));
        d = ls.projection->out_dim;
        const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> frames(
            seq.coords().data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(w));
        const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> projected = frames * m;
        points.assign(projected.data(), projected.data() + projected.size());
    } else {
        points.assign(seq.coords().begin(), seq.coords().end());
    }
    roughpath::Path path(std::move(points), d);
    if (path.num_points() < ls.windows + 1) path = refine_to(path, ls.windows + 1);
    return roughpath::windowed_log_signature(path, ls.windows, ls.depth, ls.time_augment).values;
}

Standardizer::Standardizer(std::vector<double> mean, std::vector<double> stddev)
    : mean_(std::move(mean)), std_(std::move(stddev)) {
    if (mean_.size() != std_.size()) throw ConsistencyError("standardizer mean and std lengths differ");
    for (std::size_t i = 0; i < std_.size(); ++i)
        if (!std::isfinite(mean_[i]) || !(std_[i] > 0.0) || !std::isfinite(std_[i]))
            throw ConsistencyError("standardizer entry " + std::to_string(i) + " is not usable");
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& features) {
    if (features.rows() == 0) throw TrainingError("cannot fit a standardizer on zero samples");
    const Eigen::RowVectorXd mean = features.colwise().mean();
    const Eigen::RowVectorXd var = (features.rowwise() - mean).array().square().colwise().mean();
    std::vector<double> m(mean.data(), mean.data() + mean.size());
    std::vector<double> s(static_cast<std::size_t>(var.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double sd = std::sqrt(var(static_cast<Eigen::Index>(i)));
        s[i] = sd < kStdFloor ? 1.0 : sd;
    }
    return Standardizer(std::move(m), std::move(s));
}

void Standardizer::apply(std::span<double> features) const {
    if (features.size() != mean_.size())
        throw ConsistencyError("feature vector of length " + std::to_string(features.size()) +
                               " does not match standardizer of dimension " + std::to_string(mean_.size()));
    for (std::size_t i = 0; i < features.size(); ++i) features[i] = (features[i] - mean_[i]) / std_[i];
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
        throw ParameterError("learning_rate must be positive");
    if (!(l2_penalty >= 0.0) || !std::isfinite(l2_penalty)) throw ParameterError("l2_penalty must be >= 0");
}

LossGradient loss_and_gradient(const Eigen::MatrixXd& weights, const LabeledBatch& batch, double l2) {
    check_batch(weights, batch);
    const Eigen::MatrixXd xb = with_bias(batch.features);
    const Eigen::MatrixXd logits = xb * weights.transpose();
    Eigen::MatrixXd probs;
    Eigen::VectorXd lse;
    softmax_rows(logits, probs, lse);
    const auto n = static_cast<double>(batch.labels.size());
    double loss = 0.0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const int y = batch.labels[static_cast<std::size_t>(i)];
        loss += lse(i) - logits(i, y);
        probs(i, y) -= 1.0;
    }
    LossGradient out;
    out.loss = loss / n + penalty(weights, l2);
    out.gradient = probs.transpose() * xb / n;
    if (l2 != 0.0) out.gradient.leftCols(weights.cols() - 1) += l2 * weights.leftCols(weights.cols() - 1);
    return out;
}

double loss_only(const Eigen::MatrixXd& weights, const LabeledBatch& batch, double l2) {
    check_batch(weights, batch);
    const Eigen::MatrixXd logits = with_bias(batch.features) * weights.transpose();
    double loss = 0.0;
    for (Eigen::Index i = 0; i < logits.rows(); ++i) {
        const double zmax = logits.row(i).maxCoeff();
        const double lse = zmax + std::log((logits.row(i).array() - zmax).exp().sum());
        loss += lse - logits(i, batch.labels[static_cast<std::size_t>(i)]);
    }
    return loss / static_cast<double>(batch.labels.size()) + penalty(weights, l2);
}

Eigen::VectorXd softmax_probabilities(const Eigen::MatrixXd& weights, std::span<const double> features) {
    if (static_cast<Eigen::Index>(features.size()) + 1 != weights.cols())
        throw ConsistencyError("feature vector of length " + std::to_string(features.size()) +
                               " does not match model dimension " + std::to_string(weights.cols() - 1));
    Eigen::VectorXd x(weights.cols());
    for (std::size_t i = 0; i < features.size(); ++i) x(static_cast<Eigen::Index>(i)) = features[i];
    x(weights.cols() - 1) = 1.0;
    const Eigen::VectorXd z = weights * x;
    const Eigen::VectorXd e = (z.array() - z.maxCoeff()).exp().matrix();
    return e / e.sum();
}

Eigen::MatrixXd feature_matrix(const FeaturePipeline& pipeline, std::span<const SkeletonSequence> samples) {
    if (samples.empty()) return Eigen::MatrixXd(0, 0);
    const auto first = pipeline.extract(samples[0]);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(first.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto f = i == 0 ? first : pipeline.extract(samples[i]);
        if (f.size() != first.size())
            throw ConsistencyError("sample '" + samples[i].sample_id() + "' yields " + std::to_string(f.size()) +
                                   " features, expected " + std::to_string(first.size()));
        x.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(f.data(), x.cols());
    }
    return x;
}

ClassifierModel train_on_features(const LabeledBatch& batch, std::size_t num_classes, const TrainConfig& config) {
    config.validate();
    if (batch.labels.empty()) throw TrainingError("training set is empty");
    if (!batch.features.allFinite()) throw TrainingError("training features contain non-finite values");
    const std::set<int> distinct(batch.labels.begin(), batch.labels.end());
    if (distinct.size() < 2)
        throw TrainingError("training set has " + std::to_string(distinct.size()) + " class; at least 2 required");

    ClassifierModel model;
    model.config = config;
    model.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_classes), batch.features.cols() + 1);
    check_batch(model.weights, batch);
    auto& meta = model.metadata;
    meta.num_train = batch.labels.size();

    const std::size_t n = batch.labels.size();
    const bool full_batch = config.batch_size == 0 || config.batch_size >= n;
    double lr = config.learning_rate;
    auto current = loss_and_gradient(model.weights, batch, config.l2_penalty);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        meta.loss_history.push_back(current.loss);
        if (full_batch) {
            std::size_t halvings = 0;
            for (;;) {
                Eigen::MatrixXd trial = model.weights - lr * current.gradient;
                const double trial_loss = loss_only(trial, batch, config.l2_penalty);
                if (!std::isfinite(trial_loss))
                    throw NumericError("training diverged at epoch " + std::to_string(epoch + 1) +
                                       ": loss is not finite");
                if (trial_loss <= current.loss) {
                    model.weights = std::move(trial);
                    break;
                }
                if (++halvings > kMaxHalvings) break;
                lr *= 0.5;
                ++meta.step_halvings;
            }
            current = loss_and_gradient(model.weights, batch, config.l2_penalty);
        } else {
            std::vector<std::size_t> order(n);
            std::iota(order.begin(), order.end(), std::size_t{0});
            CounterRng rng(substream(config.seed, epoch));
            for (std::size_t i = 0; i + 1 < n; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
            for (std::size_t start = 0; start < n; start += config.batch_size) {
                const std::size_t stop = std::min(n, start + config.batch_size);
                LabeledBatch mini;
                mini.features.resize(static_cast<Eigen::Index>(stop - start), batch.features.cols());
                for (std::size_t i = start; i < stop; ++i) {
                    mini.features.row(static_cast<Eigen::Index>(i - start)) =
                        batch.features.row(static_cast<Eigen::Index>(order[i]));
                    mini.labels.push_back(batch.labels[order[i]]);
                }
                model.weights -= lr * loss_and_gradient(model.weights, mini, config.l2_penalty).gradient;
            }
            current = loss_and_gradient(model.weights, batch, config.l2_penalty);
            if (!std::isfinite(current.loss))
                throw NumericError("training diverged at epoch " + std::to_string(epoch + 1) +
                                   ": loss is not finite");
        }
        ++meta.epochs_run;
    }
    meta.final_loss = current.loss;
    meta.loss_history.push_back(current.loss);
    return model;
}

ClassifierModel train_classifier(std::span<const SkeletonSequence> train, FeaturePipeline pipeline,
                                 const TrainConfig& config) {
    config.validate();
    pipeline.extractor.validate();
    if (train.empty()) throw TrainingError("training set is empty");
    pipeline.bind(train[0].width());
    pipeline.extractor.validate();

    Eigen::MatrixXd x = feature_matrix(pipeline, train);
    if (!x.allFinite()) throw TrainingError("training features contain non-finite values");
    Standardizer standardizer = Standardizer::fit(x);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        Eigen::RowVectorXd row = x.row(i);
        standardizer.apply(std::span<double>(row.data(), static_cast<std::size_t>(row.size())));
        x.row(i) = row;
    }
    LabeledBatch batch{std::move(x), {}};
    int max_label = 0;
    for (const auto& s : train) {
        batch.labels.push_back(s.label());
        max_label = std::max(max_label, s.label());
    }
    ClassifierModel model = train_on_features(batch, static_cast<std::size_t>(max_label) + 1, config);
    model.pipeline = std::move(pipeline);
    model.standardizer = std::move(standardizer);
    model.metadata.train_checksum = checksum(train);
    return model;
}

Prediction predict_features(const ClassifierModel& model, std::span<const double> standardized) {
    const Eigen::VectorXd p = softmax_probabilities(model.weights, standardized);
    Prediction out;
    out.probabilities.assign(p.data(), p.data() + p.size());
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < p.size(); ++k)
        if (p(k) > p(best)) best = k;
    out.label = static_cast<int>(best);
    return out;
}

Prediction predict(const ClassifierModel& model, const SkeletonSequence& seq) {
    auto f = model.pipeline.extract(seq);
    model.standardizer.apply(f);
    return predict_features(model, f);
}

double gradient_check(const Eigen::MatrixXd& weights, const LabeledBatch& batch, double l2, double epsilon) {
    if (!(epsilon >= 1e-7 && epsilon <= 1e-4)) throw ParameterError("gradient check epsilon must lie in [1e-7, 1e-4]");
    const Eigen::MatrixXd analytic = loss_and_gradient(weights, batch, l2).gradient;
    Eigen::MatrixXd w = weights;
    double worst = 0.0;
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
        for (Eigen::Index c = 0; c < w.cols(); ++c) {
            const double saved = w(r, c);
            w(r, c) = saved + epsilon;
            const double up = loss_only(w, batch, l2);
            w(r, c) = saved - epsilon;
            const double down = loss_only(w, batch, l2);
            w(r, c) = saved;
            const double numeric = (up - down) / (2.0 * epsilon);
            const double a = analytic(r, c);
            const double denom = std::max({std::abs(a), std::abs(numeric), kGradientFloor});
            worst = std::max(worst, std::abs(a - numeric) / denom);
        }
    }
    return worst;
}

double gradient_check(const ClassifierModel& model, const LabeledBatch& batch, double epsilon) {
    return gradient_check(model.weights, batch, model.config.l2_penalty, epsilon);
}

Accuracy score_predictions(std::span<const int> predicted, std::span<const int> truth) {
    if (truth.empty()) throw ParameterError("accuracy of an empty dataset is undefined");
    if (predicted.size() != truth.size()) throw ConsistencyError("prediction and truth counts differ");
    Accuracy acc;
    acc.total = truth.size();
    for (std::size_t i = 0; i < truth.size(); ++i) acc.correct += predicted[i] == truth[i];
    return acc;
}

Accuracy evaluate_accuracy(const ClassifierModel& model, std::span<const SkeletonSequence> samples) {
    if (samples.empty()) throw ParameterError("accuracy of an empty dataset is undefined");
    std::vector<int> predicted, truth;
    for (const auto& s : samples) {
        predicted.push_back(predict(model, s).label);
        truth.push_back(s.label());
    }
    return score_predictions(predicted, truth);
}

nlohmann::ordered_json pipeline_to_json(const FeaturePipeline& pipeline) {
    nlohmann::ordered_json j;
    j["name"] = pipeline.name;
    j["preproc"] = pipeline.preproc ? preproc_spec_to_json(*pipeline.preproc) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json e;
    e["kind"] = to_string(pipeline.extractor.kind());
    if (const auto* raw = std::get_if<RawParams>(&pipeline.extractor.params)) {
        e["target_len"] = raw->target_len;
    } else {
        const auto& ls = std::get<LogsigParams>(pipeline.extractor.params);
        e["windows"] = ls.windows;
        e["depth"] = ls.depth;
        e["time_augment"] = ls.time_augment;
        if (ls.projection) {
            nlohmann::ordered_json p;
            p["out_dim"] = ls.projection->out_dim;
            p["seed"] = ls.projection->seed;
            if (ls.projection->matrix.size() > 0) p["matrix"] = matrix_to_json(ls.projection->matrix);
            e["projection"] = p;
        } else {
            e["projection"] = nullptr;
        }
    }
    j["extractor"] = e;
    return j;
}

FeaturePipeline pipeline_from_json(const nlohmann::json& j) {
    FeaturePipeline p;
    p.name = get_string(j, "name");
    if (j.contains("preproc") && !j["preproc"].is_null()) p.preproc = preproc_spec_from_json(j["preproc"]);
    const auto& e = require(j, "extractor");
    if (parse_extractor_kind(get_string(e, "kind")) == ExtractorKind::raw_resampled) {
        p.extractor.params = RawParams{get_unsigned(e, "target_len")};
    } else {
        LogsigParams ls;
        ls.windows = get_unsigned(e, "windows");
        ls.depth = get_unsigned(e, "depth");
        ls.time_augment = get_bool(e, "time_augment");
        if (e.contains("projection") && !e["projection"].is_null()) {
            const auto& pj = e["projection"];
            ChannelProjection proj;
            proj.out_dim = get_unsigned(pj, "out_dim");
            proj.seed = get_unsigned(pj, "seed");
            if (pj.contains("matrix")) proj.matrix = matrix_from_json(pj["matrix"], "projection.matrix");
            ls.projection = std::move(proj);
        }
        p.extractor.params = std::move(ls);
    }
    p.extractor.validate();
    return p;
}

nlohmann::ordered_json train_config_to_json(const TrainConfig& c) {
    nlohmann::ordered_json j;
    j["learning_rate"] = c.learning_rate;
    j["epochs"] = c.epochs;
    j["batch_size"] = c.batch_size;
    j["l2_penalty"] = c.l2_penalty;
    j["seed"] = c.seed;
    return j;
}

TrainConfig train_config_from_json(const nlohmann::json& j) {
    TrainConfig c;
    if (j.contains("learning_rate")) c.learning_rate = get_number(j, "learning_rate");
    if (j.contains("epochs")) c.epochs = get_unsigned(j, "epochs");
    if (j.contains("batch_size")) c.batch_size = get_unsigned(j, "batch_size");
    if (j.contains("l2_penalty")) c.l2_penalty = get_number(j, "l2_penalty");
    if (j.contains("seed")) c.seed = get_unsigned(j, "seed");
    c.validate();
    return c;
}

std::string write_checkpoint(const ClassifierModel& model) {
    nlohmann::ordered_json doc;
    doc["format"] = "skelbench.model";
    doc["version"] = 1;
    doc["pipeline"] = pipeline_to_json(model.pipeline);
    doc["standardizer"] = {{"mean", model.standardizer.mean()}, {"std", model.standardizer.stddev()}};
    doc["weights"] = matrix_to_json(model.weights);
    doc["config"] = train_config_to_json(model.config);
    const auto& m = model.metadata;
    doc["metadata"] = {{"epochs_run", m.epochs_run},         {"final_loss", m.final_loss},
                       {"step_halvings", m.step_halvings},   {"num_train", m.num_train},
                       {"train_checksum", m.train_checksum}, {"loss_history", m.loss_history}};
    return doc.dump() + "\n";
}

ClassifierModel read_checkpoint(std::string_view bytes) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid checkpoint JSON: ") + e.what(), 0);
    }
    if (get_string(doc, "format") != "skelbench.model") throw SchemaError("not a skelbench model checkpoint");
    if (get_unsigned(doc, "version") != 1)
        throw SchemaError("unsupported checkpoint version " + std::to_string(get_unsigned(doc, "version")));
    ClassifierModel model;
    model.pipeline = pipeline_from_json(require(doc, "pipeline"));
    const auto& st = require(doc, "standardizer");
    model.standardizer = Standardizer(doubles_from_json(st, "mean"), doubles_from_json(st, "std"));
    model.weights = matrix_from_json(require(doc, "weights"), "weights");
    if (!model.weights.allFinite()) throw SchemaError("checkpoint weights are not finite");
    if (model.weights.cols() != static_cast<Eigen::Index>(model.standardizer.dim()) + 1)
        throw ConsistencyError("checkpoint weights do not match the standardizer dimension");
    model.config = train_config_from_json(require(doc, "config"));
    const auto& m = require(doc, "metadata");
    model.metadata.epochs_run = get_unsigned(m, "epochs_run");
    model.metadata.final_loss = get_number(m, "final_loss");
    model.metadata.step_halvings = get_unsigned(m, "step_halvings");
    model.metadata.num_train = get_unsigned(m, "num_train");
    model.metadata.train_checksum = get_unsigned(m, "train_checksum");
    model.metadata.loss_history = doubles_from_json(m, "loss_history");
    return model;
}

}  // namespace skelbench
