#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dctembed {

/// Dense row-major feature block.
struct FeatureMatrix {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<double> values;  // count * dim

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
  void push_row(std::span<const double> row_values) {
    values.insert(values.end(), row_values.begin(), row_values.end());
    ++count;
  }
};

struct ClassifierConfig {
  std::size_t hidden_size = 0;  // 0 = logistic regression (no hidden layer)
  double dropout = 0.0;         // applied to hidden activations during training
  double learning_rate = 0.05;
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

/// Parameter layout of the classifier: [W1 (in*h), b1 (h)] when h > 0,
/// then [W2 (h_or_in * labels), b2 (labels)], all row-major.
struct MlpShape {
  std::size_t input_dim = 0;
  std::size_t hidden_size = 0;
  std::size_t label_count = 0;

  std::size_t penultimate() const { return hidden_size ? hidden_size : input_dim; }
  std::size_t param_count() const {
    std::size_t n = penultimate() * label_count + label_count;
    if (hidden_size) n += input_dim * hidden_size + hidden_size;
    return n;
  }
};

/// Mean softmax cross-entropy over (x, y) plus its gradient in grad_out
/// (same layout/length as params). hidden_scale, when non-empty, holds one
/// multiplier per hidden unit (inverted-dropout masks use 0 or 1/(1-p));
/// the loss is deterministic given the mask, which keeps it checkable by
/// finite differences. Returns the loss.
double mlp_loss_grad(const MlpShape& shape, std::span<const double> params,
                     const FeatureMatrix& x, std::span<const int> y,
                     std::span<const std::size_t> subset,
                     std::span<const double> hidden_scale,
                     std::span<double> grad_out);

class ClassifierModel {
 public:
  ClassifierModel() = default;
  ClassifierModel(MlpShape shape, std::vector<double> params)
      : shape_(shape), params_(std::move(params)), trained_(true) {}

  const MlpShape& shape() const { return shape_; }
  bool trained() const { return trained_; }
  std::span<const double> params() const { return params_; }

  /// Logit ties break toward the lowest label index.
  int predict(std::span<const double> x) const;
  std::vector<double> logits(std::span<const double> x) const;

 private:
  MlpShape shape_;
  std::vector<double> params_;
  bool trained_ = false;
};

/// Mini-batch SGD on softmax cross-entropy; deterministic given config.seed.
ClassifierModel train(const ClassifierConfig& config, const FeatureMatrix& x,
                      std::span<const int> y, std::size_t label_count);

/// Fraction of correct argmax predictions; rejects an empty evaluation set.
double evaluate(const ClassifierModel& model, const FeatureMatrix& x,
                std::span<const int> y);

/// Mean cross-entropy of the model on (x, y); no dropout.
double mean_cross_entropy(const ClassifierModel& model, const FeatureMatrix& x,
                          std::span<const int> y);

struct GridSearchResult {
  ClassifierConfig selected;
  ClassifierModel model;
  double dev_accuracy = 0.0;
  double test_accuracy = 0.0;
};

/// Trains every config on the train split, selects by dev accuracy (ties:
/// smaller hidden_size, then lower dropout), and reports test accuracy of
/// the selected config only. Configs may train concurrently.
GridSearchResult grid_search(std::span<const ClassifierConfig> configs,
                             const FeatureMatrix& train_x, std::span<const int> train_y,
                             const FeatureMatrix& dev_x, std::span<const int> dev_y,
                             const FeatureMatrix& test_x, std::span<const int> test_y,
                             std::size_t label_count, bool parallel = true);

}  // namespace dctembed
