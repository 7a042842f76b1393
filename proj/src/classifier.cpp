#include "classifier.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "error.hpp"
#include "rng.hpp"

namespace dctembed {

namespace {

void check_features(const FeatureMatrix& x, std::span<const int> y,
                    std::size_t label_count) {
  if (x.values.size() != x.count * x.dim) {
    fail(ErrorCode::invalid_argument, "feature storage does not match count*dim");
  }
  if (x.count != y.size()) {
    fail(ErrorCode::dim_mismatch, "feature row count does not match label count");
  }
  for (int label : y) {
    if (label < 0 || static_cast<std::size_t>(label) >= label_count) {
      fail(ErrorCode::invalid_argument, "label " + std::to_string(label) +
                                            " outside [0, " +
                                            std::to_string(label_count) + ")");
    }
  }
}

void softmax_into(std::span<double> z) {
  double zmax = z[0];
  for (double v : z) zmax = std::max(zmax, v);
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

}  // namespace

double mlp_loss_grad(const MlpShape& shape, std::span<const double> params,
                     const FeatureMatrix& x, std::span<const int> y,
                     std::span<const std::size_t> subset,
                     std::span<const double> hidden_scale,
                     std::span<double> grad_out) {
  const std::size_t in = shape.input_dim;
  const std::size_t h = shape.hidden_size;
  const std::size_t labels = shape.label_count;
  const std::size_t pen = shape.penultimate();

  const double* w1 = params.data();             // in x h (unused when h == 0)
  const double* b1 = w1 + in * h;               // h
  const double* w2 = h ? b1 + h : params.data();  // pen x labels
  const double* b2 = w2 + pen * labels;         // labels

  double* gw1 = grad_out.data();
  double* gb1 = gw1 + in * h;
  double* gw2 = h ? gb1 + h : grad_out.data();
  double* gb2 = gw2 + pen * labels;
  std::fill(grad_out.begin(), grad_out.end(), 0.0);

  std::vector<double> hidden(h), hidden_grad(h), probs(labels);
  const double inv_n = 1.0 / static_cast<double>(subset.size());
  double loss = 0.0;

  for (std::size_t idx : subset) {
    const std::span<const double> row = x.row(idx);
    const double* penult = row.data();

    if (h) {
      for (std::size_t u = 0; u < h; ++u) {
        double z = b1[u];
        for (std::size_t i = 0; i < in; ++i) z += row[i] * w1[i * h + u];
        double a = std::tanh(z);
        if (!hidden_scale.empty()) a *= hidden_scale[u];
        hidden[u] = a;
      }
      penult = hidden.data();
    }

    for (std::size_t c = 0; c < labels; ++c) {
      double z = b2[c];
      for (std::size_t u = 0; u < pen; ++u) z += penult[u] * w2[u * labels + c];
      probs[c] = z;
    }
    softmax_into(probs);
    const int target = y[idx];
    loss -= std::log(std::max(probs[static_cast<std::size_t>(target)], 1e-300));

    // d(loss)/d(logit) averaged over the subset
    probs[static_cast<std::size_t>(target)] -= 1.0;
    for (double& p : probs) p *= inv_n;

    for (std::size_t u = 0; u < pen; ++u) {
      for (std::size_t c = 0; c < labels; ++c) {
        gw2[u * labels + c] += penult[u] * probs[c];
      }
    }
    for (std::size_t c = 0; c < labels; ++c) gb2[c] += probs[c];

    if (h) {
      for (std::size_t u = 0; u < h; ++u) {
        double d = 0.0;
        for (std::size_t c = 0; c < labels; ++c) d += w2[u * labels + c] * probs[c];
        // through the dropout scale and tanh; hidden[u] already carries the
        // scale, so recover tanh' = 1 - tanh^2 from the unscaled activation
        const double scale = hidden_scale.empty() ? 1.0 : hidden_scale[u];
        if (scale == 0.0) {
          hidden_grad[u] = 0.0;
          continue;
        }
        const double a = hidden[u] / scale;
        hidden_grad[u] = d * scale * (1.0 - a * a);
      }
      for (std::size_t i = 0; i < in; ++i) {
        for (std::size_t u = 0; u < h; ++u) {
          gw1[i * h + u] += row[i] * hidden_grad[u];
        }
      }
      for (std::size_t u = 0; u < h; ++u) gb1[u] += hidden_grad[u];
    }
  }
  return loss * inv_n;
}

int ClassifierModel::predict(std::span<const double> x) const {
  const std::vector<double> z = logits(x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < z.size(); ++c) {
    if (z[c] > z[best]) best = c;  // strict: ties keep the lowest label
  }
  return static_cast<int>(best);
}

std::vector<double> ClassifierModel::logits(std::span<const double> x) const {
  if (!trained_) fail(ErrorCode::invalid_argument, "model is not trained");
  if (x.size() != shape_.input_dim) {
    fail(ErrorCode::dim_mismatch, "feature dim " + std::to_string(x.size()) +
                                      " does not match model input dim " +
                                      std::to_string(shape_.input_dim));
  }
  const std::size_t in = shape_.input_dim;
  const std::size_t h = shape_.hidden_size;
  const std::size_t labels = shape_.label_count;
  const std::size_t pen = shape_.penultimate();
  const double* w1 = params_.data();
  const double* b1 = w1 + in * h;
  const double* w2 = h ? b1 + h : params_.data();
  const double* b2 = w2 + pen * labels;

  std::vector<double> hidden(h);
  const double* penult = x.data();
  if (h) {
    for (std::size_t u = 0; u < h; ++u) {
      double z = b1[u];
      for (std::size_t i = 0; i < in; ++i) z += x[i] * w1[i * h + u];
      hidden[u] = std::tanh(z);
    }
    penult = hidden.data();
  }
  std::vector<double> out(labels);
  for (std::size_t c = 0; c < labels; ++c) {
    double z = b2[c];
    for (std::size_t u = 0; u < pen; ++u) z += penult[u] * w2[u * labels + c];
    out[c] = z;
  }
  return out;
}

ClassifierModel train(const ClassifierConfig& config, const FeatureMatrix& x,
                      std::span<const int> y, std::size_t label_count) {
  if (label_count < 1) fail(ErrorCode::invalid_argument, "label_count must be >= 1");
  if (x.count == 0) fail(ErrorCode::empty_input, "training set is empty");
  if (x.dim == 0) fail(ErrorCode::invalid_argument, "feature dim must be >= 1");
  if (config.epochs == 0) fail(ErrorCode::invalid_argument, "epochs must be >= 1");
  if (config.batch_size == 0) fail(ErrorCode::invalid_argument, "batch_size must be >= 1");
  if (config.learning_rate <= 0.0) {
    fail(ErrorCode::invalid_argument, "learning_rate must be positive");
  }
  if (config.dropout < 0.0 || config.dropout >= 1.0) {
    fail(ErrorCode::invalid_argument, "dropout must lie in [0, 1)");
  }
  check_features(x, y, label_count);

  const MlpShape shape{x.dim, config.hidden_size, label_count};
  Rng rng(config.seed);

  std::vector<double> params(shape.param_count(), 0.0);
  {
    // N(0, 1/sqrt(fan_in)) weights, zero biases
    double* p = params.data();
    if (shape.hidden_size) {
      const double scale = 1.0 / std::sqrt(static_cast<double>(shape.input_dim));
      for (std::size_t i = 0; i < shape.input_dim * shape.hidden_size; ++i) {
        *p++ = rng.gaussian() * scale;
      }
      p += shape.hidden_size;  // b1 = 0
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(shape.penultimate()));
    for (std::size_t i = 0; i < shape.penultimate() * label_count; ++i) {
      *p++ = rng.gaussian() * scale;
    }
  }

  std::vector<double> grad(params.size());
  std::vector<std::size_t> order(x.count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> mask;
  const bool use_dropout = shape.hidden_size > 0 && config.dropout > 0.0;
  if (use_dropout) mask.resize(shape.hidden_size);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < x.count; start += config.batch_size) {
      const std::size_t end = std::min(start + config.batch_size, x.count);
      const std::span<const std::size_t> batch(order.data() + start, end - start);
      if (use_dropout) {
        const double keep = 1.0 - config.dropout;
        for (double& m : mask) {
          m = (rng.next_double() < keep) ? 1.0 / keep : 0.0;
        }
      }
      mlp_loss_grad(shape, params, x, y, batch,
                    use_dropout ? std::span<const double>(mask)
                                : std::span<const double>(),
                    grad);
      for (std::size_t i = 0; i < params.size(); ++i) {
        params[i] -= config.learning_rate * grad[i];
      }
    }
  }

  for (double p : params) {
    if (!std::isfinite(p)) {
      fail(ErrorCode::invalid_argument,
           "training diverged to non-finite parameters; lower the learning rate");
    }
  }
  return ClassifierModel(shape, std::move(params));
}

double evaluate(const ClassifierModel& model, const FeatureMatrix& x,
                std::span<const int> y) {
  if (!model.trained()) fail(ErrorCode::invalid_argument, "model is not trained");
  if (x.count == 0) fail(ErrorCode::empty_input, "evaluation set is empty");
  if (x.count != y.size()) {
    fail(ErrorCode::dim_mismatch, "feature row count does not match label count");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < x.count; ++i) {
    if (model.predict(x.row(i)) == y[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(x.count);
}

double mean_cross_entropy(const ClassifierModel& model, const FeatureMatrix& x,
                          std::span<const int> y) {
  if (x.count == 0) fail(ErrorCode::empty_input, "evaluation set is empty");
  std::vector<std::size_t> all(x.count);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<double> scratch(model.shape().param_count());
  return mlp_loss_grad(model.shape(), model.params(), x, y, all, {}, scratch);
}

GridSearchResult grid_search(std::span<const ClassifierConfig> configs,
                             const FeatureMatrix& train_x, std::span<const int> train_y,
                             const FeatureMatrix& dev_x, std::span<const int> dev_y,
                             const FeatureMatrix& test_x, std::span<const int> test_y,
                             std::size_t label_count, bool parallel) {
  if (configs.empty()) fail(ErrorCode::invalid_argument, "config grid is empty");

  struct Candidate {
    ClassifierModel model;
    double dev_accuracy;
  };
  std::vector<Candidate> candidates(configs.size());

  const auto run_one = [&](std::size_t i) {
    ClassifierModel model = train(configs[i], train_x, train_y, label_count);
    const double acc = evaluate(model, dev_x, dev_y);
    candidates[i] = Candidate{std::move(model), acc};
  };

  if (parallel && configs.size() > 1) {
    std::vector<std::future<void>> futures;
    futures.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
      futures.push_back(std::async(std::launch::async, run_one, i));
    }
    for (auto& f : futures) f.get();
  } else {
    for (std::size_t i = 0; i < configs.size(); ++i) run_one(i);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < configs.size(); ++i) {
    const auto better = [&]() {
      if (candidates[i].dev_accuracy != candidates[best].dev_accuracy) {
        return candidates[i].dev_accuracy > candidates[best].dev_accuracy;
      }
      if (configs[i].hidden_size != configs[best].hidden_size) {
        return configs[i].hidden_size < configs[best].hidden_size;
      }
      return configs[i].dropout < configs[best].dropout;
    };
    if (better()) best = i;
  }

  GridSearchResult result;
  result.selected = configs[best];
  result.dev_accuracy = candidates[best].dev_accuracy;
  result.test_accuracy = evaluate(candidates[best].model, test_x, test_y);
  result.model = std::move(candidates[best].model);
  return result;
}

}  // namespace dctembed
